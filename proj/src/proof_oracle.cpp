#include "ksproof/proof_oracle.hpp"

#include "ksproof/errors.hpp"

#include <algorithm>
#include <set>

namespace ksproof {

AssignmentProblem problem_from_proof(const ProofSet & proof, Objective objective)
{
    if (objective == Objective::observable && proof.deduplicated)
        throw UnsupportedAfterDedupError("the G objective is undefined once bases share rays");

    const auto n = proof.vertex_count();
    std::vector<std::size_t> compact(n, SIZE_MAX);
    AssignmentProblem p;
    for (std::size_t v = 0; v < n; ++v) {
        const auto rep = proof.merge_map.empty() ? v : proof.merge_map[v];
        if (rep == v) {
            compact[v] = p.labels.size();
            p.labels.push_back(proof.ray(v).label().empty() ? "v" + std::to_string(v) : proof.ray(v).label());
        }
    }
    auto at = [&](std::size_t v) { return compact[proof.merge_map.empty() ? v : proof.merge_map[v]]; };

    for (std::size_t i = 0; i < proof.fkrs.size(); ++i) {
        p.hyper_vertices.push_back(at(i));
        p.vertex_terms.push_back({at(i), Rational(1)});
    }
    std::set<Edge> seen;
    auto add_edge = [&](std::size_t a, std::size_t b) {
        Edge e{std::min(a, b), std::max(a, b)};
        if (seen.insert(e).second)
            p.edges.push_back(e);
    };
    for (const auto & [a, b] : proof.direct_edges)
        add_edge(at(a), at(b));
    for (const auto & h : proof.hyperedges) {
        HyperEdgeGroup group{at(h.i), at(h.j), h.weight, {}, {}, {}};
        std::set<std::size_t> members;
        for (std::size_t local = 2; local < h.vertices.size(); ++local)
            members.insert(at(h.vertices[local]));
        group.members.assign(members.begin(), members.end());
        for (const auto & [a, b] : h.model.topology.edges) {
            add_edge(at(h.vertices[a]), at(h.vertices[b]));
            if (objective == Objective::observable) {
                group.pair_terms.push_back(p.pair_terms.size());
                p.pair_terms.push_back({at(h.vertices[a]), at(h.vertices[b]), Rational(-1)});
            }
        }
        if (objective == Objective::observable)
            for (std::size_t local = 2; local < h.vertices.size(); ++local) {
                group.vertex_terms.push_back(p.vertex_terms.size());
                p.vertex_terms.push_back({at(h.vertices[local]), Rational(1)});
            }
        p.hyperedges.push_back(std::move(group));
    }
    std::set<std::vector<std::size_t>> basis_seen;
    for (const auto & basis : proof.aux_bases) {
        std::vector<std::size_t> b{at(basis.rays[0]), at(basis.rays[1]), at(basis.rays[2])};
        std::vector<std::size_t> key = b;
        std::sort(key.begin(), key.end());
        if (basis_seen.insert(key).second)
            p.bases.push_back(std::move(b));
    }
    p.validate();
    return p;
}

AssignmentProblem remove_hyperedge(const AssignmentProblem & problem, std::size_t group)
{
    if (group >= problem.hyperedges.size())
        throw InputError("no hyper-edge " + std::to_string(group));
    const auto & victim = problem.hyperedges[group];
    std::vector<std::uint8_t> drop(problem.vertex_count(), 0);
    for (auto v : victim.members)
        drop[v] = 1;
    // Members shared with another hyper-edge (after deduplication) stay.
    for (std::size_t g = 0; g < problem.hyperedges.size(); ++g)
        if (g != group)
            for (auto v : problem.hyperedges[g].members)
                drop[v] = 0;
    std::vector<std::uint8_t> drop_vt(problem.vertex_terms.size(), 0), drop_pt(problem.pair_terms.size(), 0);
    for (auto t : victim.vertex_terms)
        drop_vt[t] = 1;
    for (auto t : victim.pair_terms)
        drop_pt[t] = 1;

    std::vector<std::size_t> remap(problem.vertex_count(), SIZE_MAX);
    AssignmentProblem out;
    for (std::size_t v = 0; v < problem.vertex_count(); ++v)
        if (!drop[v]) {
            remap[v] = out.labels.size();
            out.labels.push_back(problem.labels[v]);
        }
    auto kept = [&](std::size_t v) { return remap[v] != SIZE_MAX; };

    for (const auto & [a, b] : problem.edges)
        if (kept(a) && kept(b))
            out.edges.emplace_back(remap[a], remap[b]);
    // Gadget-internal edges touching the pair itself go with the gadget.
    std::set<Edge> victim_edges;
    for (auto t : victim.pair_terms)
        victim_edges.emplace(std::min(problem.pair_terms[t].u, problem.pair_terms[t].v),
                             std::max(problem.pair_terms[t].u, problem.pair_terms[t].v));
    for (const auto & basis : problem.bases) {
        if (std::all_of(basis.begin(), basis.end(), kept)) {
            std::vector<std::size_t> b;
            for (auto v : basis)
                b.push_back(remap[v]);
            out.bases.push_back(std::move(b));
        }
    }
    std::vector<std::size_t> vt_remap(problem.vertex_terms.size(), SIZE_MAX),
        pt_remap(problem.pair_terms.size(), SIZE_MAX);
    for (std::size_t t = 0; t < problem.vertex_terms.size(); ++t)
        if (!drop_vt[t] && kept(problem.vertex_terms[t].vertex)) {
            vt_remap[t] = out.vertex_terms.size();
            out.vertex_terms.push_back({remap[problem.vertex_terms[t].vertex], problem.vertex_terms[t].weight});
        }
    for (std::size_t t = 0; t < problem.pair_terms.size(); ++t) {
        const auto & term = problem.pair_terms[t];
        if (!drop_pt[t] && kept(term.u) && kept(term.v)) {
            pt_remap[t] = out.pair_terms.size();
            out.pair_terms.push_back({remap[term.u], remap[term.v], term.weight});
        }
    }
    for (auto v : problem.hyper_vertices)
        if (kept(v))
            out.hyper_vertices.push_back(remap[v]);
    for (std::size_t g = 0; g < problem.hyperedges.size(); ++g) {
        if (g == group)
            continue;
        const auto & h = problem.hyperedges[g];
        HyperEdgeGroup copy{remap[h.u], remap[h.v], h.weight, {}, {}, {}};
        for (auto v : h.members)
            copy.members.push_back(remap[v]);
        for (auto t : h.vertex_terms)
            if (vt_remap[t] != SIZE_MAX)
                copy.vertex_terms.push_back(vt_remap[t]);
        for (auto t : h.pair_terms)
            if (pt_remap[t] != SIZE_MAX)
                copy.pair_terms.push_back(pt_remap[t]);
        out.hyperedges.push_back(std::move(copy));
    }
    out.validate();
    return out;
}

SimultaneityResult fkrs_simultaneity_check(const ProofSet & proof, const OracleOptions & options)
{
    SimultaneityResult r;
    r.expected = proof.verdict.clique_number;
    r.oracle = classical_max(problem_from_proof(proof, Objective::fkrs_sum), options);
    r.holds = r.oracle.exhausted && r.oracle.feasible &&
              r.oracle.max_value == Rational(static_cast<std::int64_t>(r.expected));
    return r;
}

std::string to_string(BoundVerdict v)
{
    switch (v) {
    case BoundVerdict::verified: return "verified";
    case BoundVerdict::violated: return "violated";
    case BoundVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

GBoundResult verify_G_bound(const ProofSet & proof, const OracleOptions & options)
{
    GBoundResult r;
    r.expected = bounds(proof).classical;
    r.oracle = classical_max(problem_from_proof(proof, Objective::observable), options);
    if (!r.oracle.exhausted)
        r.verdict = BoundVerdict::inconclusive;
    else if (r.oracle.feasible && r.oracle.max_value == Rational(r.expected))
        r.verdict = BoundVerdict::verified;
    else
        r.verdict = BoundVerdict::violated;
    return r;
}

} // namespace ksproof
