#include "ksproof/proof.hpp"

#include "ksproof/errors.hpp"
#include "ksproof/oracle.hpp"
#include "ksproof/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace ksproof {

const Ray & ProofSet::ray(std::size_t global) const
{
    return global < fkrs.size() ? fkrs.at(global) : aux.at(global - fkrs.size());
}

std::vector<Ray> ProofSet::all_rays() const
{
    std::vector<Ray> out = fkrs;
    out.insert(out.end(), aux.begin(), aux.end());
    return out;
}

std::vector<Ray> ProofSet::distinct_aux_rays() const
{
    std::vector<Ray> out;
    for (std::size_t k = 0; k < aux.size(); ++k) {
        const auto g = fkrs.size() + k;
        if (merge_map.empty() || merge_map[g] == g)
            out.push_back(aux[k]);
    }
    return out;
}

PairPartition partition_pairs(std::span<const Ray> rays, int order)
{
    if (order < 0)
        throw RangeError("partition order must be non-negative");
    auto g = gram(rays);
    PairPartition p;
    p.order = order;
    for (int m = 0; m <= order; ++m)
        p.classes[m];
    for (std::size_t i = 0; i < g.size; ++i)
        for (std::size_t j = i + 1; j < g.size; ++j) {
            if (g(i, j) >= 1.0 - tol::ray)
                throw DuplicateRayError("rays " + std::to_string(i) + " and " + std::to_string(j) +
                                            " are the same ray",
                                        i, j);
            const int m = order_of(g(i, j));
            if (m <= order)
                p.classes[m].emplace_back(i, j);
            else
                p.excluded.emplace_back(i, j);
        }
    return p;
}

namespace {

void deduplicate(ProofSet & proof)
{
    const auto n = proof.vertex_count();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto & [a, b] : proof.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // a merge must leave every edge of the dropped ray orthogonal at the representative
    auto keeps_edges = [&](std::size_t v, std::size_t u) {
        for (auto w : adj[v]) {
            const auto r = proof.merge_map[w];
            if (r == u || std::abs(inner(proof.ray(u), proof.ray(r))) > tol::orth)
                return false;
        }
        return true;
    };
    std::size_t refused = 0;
    for (std::size_t v = proof.fkrs.size(); v < n; ++v) {
        bool blocked = false;
        for (std::size_t u = 0; u < v && proof.merge_map[v] == v; ++u)
            if (proof.merge_map[u] == u && same_ray(proof.ray(u), proof.ray(v))) {
                if (keeps_edges(v, u))
                    proof.merge_map[v] = u;
                else
                    blocked = true;
            }
        refused += blocked && proof.merge_map[v] == v;
    }
    std::set<Edge> edges;
    for (auto [a, b] : proof.edges) {
        a = proof.merge_map[a];
        b = proof.merge_map[b];
        if (a == b)
            throw InvalidModelError("deduplication merged the two ends of an orthogonality edge");
        edges.emplace(std::min(a, b), std::max(a, b));
    }
    proof.edges.assign(edges.begin(), edges.end());
    for (auto & basis : proof.aux_bases)
        for (auto & v : basis.rays)
            v = proof.merge_map[v];
    for (auto & h : proof.hyperedges)
        for (auto & v : h.vertices)
            v = proof.merge_map[v];
    std::size_t merged = 0;
    for (std::size_t v = 0; v < n; ++v)
        merged += proof.merge_map[v] != v ? 1 : 0;
    proof.deduplicated = true;
    if (merged > 0)
        proof.warnings.push_back("dedup merged " + std::to_string(merged) + " auxiliary ray(s)");
    if (refused > 0)
        proof.warnings.push_back("dedup kept " + std::to_string(refused) +
                                 " auxiliary ray(s) apart from an equal ray: merging would break an orthogonality");
}

} // namespace

ProofSet assemble(std::span<const Ray> rays, int order, const AssembleOptions & options)
{
    if (rays.empty())
        throw InputError("cannot assemble a proof from an empty ray set");
    ProofSet proof;
    proof.order = order;
    proof.theta = options.theta;
    proof.fkrs.assign(rays.begin(), rays.end());
    proof.verdict = fkrs_check(rays, order);
    if (!proof.verdict.is_fkrs && !options.force) {
        std::ostringstream os;
        os << "not an FKRS at order " << order << ": M = " << proof.verdict.clique_number
           << ", lambda_min = " << proof.verdict.lambda_min;
        throw HypothesisError(os.str());
    }
    proof.warnings = proof.verdict.warnings;
    proof.partition = partition_pairs(rays, order);

    std::vector<std::pair<Edge, int>> gadget_pairs;
    for (const auto & [m, pairs] : proof.partition.classes)
        for (const auto & e : pairs) {
            if (m == 0)
                proof.direct_edges.push_back(e);
            else
                gadget_pairs.emplace_back(e, m);
        }
    std::sort(gadget_pairs.begin(), gadget_pairs.end());
    std::sort(proof.direct_edges.begin(), proof.direct_edges.end());

    for (const auto & [pair, m] : gadget_pairs) {
        const auto [i, j] = pair;
        HyperEdge h;
        h.i = i;
        h.j = j;
        h.weight = m;
        h.model = build_pair_model(rays[i], rays[j], m, options.theta);
        h.overlap = h.model.overlap;
        const auto index = proof.hyperedges.size();
        const auto prefix = "h" + std::to_string(index) + "(" + std::to_string(i) + "," + std::to_string(j) + "):";

        h.vertices.resize(h.model.rays.size());
        h.vertices[0] = i;
        h.vertices[1] = j;
        for (std::size_t local = 2; local < h.model.rays.size(); ++local) {
            h.vertices[local] = proof.vertex_count();
            proof.aux.push_back(h.model.rays[local].with_label(prefix + h.model.topology.roles[local]));
        }
        for (std::size_t b = 0; b < h.model.topology.bases.size(); ++b) {
            const auto & lb = h.model.topology.bases[b];
            h.bases.push_back(proof.aux_bases.size());
            proof.aux_bases.push_back({{h.vertices[lb[0]], h.vertices[lb[1]], h.vertices[lb[2]]},
                                       index,
                                       h.model.topology.basis_tags[b]});
        }
        for (const auto & [a, b] : h.model.topology.edges)
            proof.edges.emplace_back(h.vertices[a], h.vertices[b]);
        for (const auto & w : h.model.warnings)
            proof.warnings.push_back(prefix + " " + w);
        proof.basis_total += static_cast<std::size_t>(h.basis_count());
        proof.hyperedges.push_back(std::move(h));
    }
    proof.edges.insert(proof.edges.end(), proof.direct_edges.begin(), proof.direct_edges.end());

    proof.merge_map.resize(proof.vertex_count());
    for (std::size_t v = 0; v < proof.merge_map.size(); ++v)
        proof.merge_map[v] = v;
    if (options.dedup)
        deduplicate(proof);
    return proof;
}

HermitianMatrix observable_G(const ProofSet & proof)
{
    if (proof.deduplicated)
        throw UnsupportedAfterDedupError(
            "observable G needs independent bases; the proof was deduplicated");
    HermitianMatrix g = projector_sum(proof.fkrs);
    for (const auto & h : proof.hyperedges)
        g += pair_operator_C(h.model);
    return g;
}

ProofBounds bounds(const ProofSet & proof)
{
    const auto r = static_cast<std::int64_t>(proof.basis_total);
    return {static_cast<std::int64_t>(proof.verdict.clique_number) + r,
            static_cast<double>(r) + proof.verdict.lambda_min};
}

Budget basis_budget(std::span<const Ray> rays)
{
    Budget b;
    b.ray_count = rays.size();
    b.lambda_min = projector_sum_spectrum(rays).lambda_min;
    if (!(b.lambda_min > 1.0 + tol::spec))
        throw HypothesisError("basis budget needs sum_i |psi_i><psi_i| > 1, but lambda_min = " +
                              std::to_string(b.lambda_min));
    b.max_overlap = max_off_diagonal(gram(rays));
    b.N = order_of(b.max_overlap);
    b.max_bases = b.ray_count * (b.ray_count - 1) * static_cast<std::size_t>(b.N);
    return b;
}

std::string to_string(AuxStatus s)
{
    switch (s) {
    case AuxStatus::pass: return "pass";
    case AuxStatus::warning: return "warning";
    case AuxStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// All cliques of exactly `size` vertices in the orthogonality graph, ascending members.
std::vector<std::vector<std::size_t>> complete_bases(const std::vector<std::vector<std::size_t>> & up, std::size_t size)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    std::function<void(const std::vector<std::size_t> &)> grow = [&](const std::vector<std::size_t> & candidates) {
        if (current.size() == size) {
            out.push_back(current);
            return;
        }
        for (auto v : candidates) {
            std::vector<std::size_t> next;
            std::set_intersection(candidates.begin(), candidates.end(), up[v].begin(), up[v].end(),
                                  std::back_inserter(next));
            current.push_back(v);
            grow(next);
            current.pop_back();
        }
    };
    std::vector<std::size_t> all(up.size());
    for (std::size_t v = 0; v < up.size(); ++v)
        all[v] = v;
    grow(all);
    return out;
}

} // namespace

AuxCheck aux_independence_check(std::span<const Ray> rays, std::chrono::milliseconds timeout)
{
    AuxCheck check;
    // repeated rays keep their multiplicity, both in the projector sum and in the objective
    std::vector<Ray> distinct;
    std::vector<std::int64_t> multiplicity;
    std::vector<std::size_t> class_of(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
        const auto at =
            std::find_if(distinct.begin(), distinct.end(), [&](const Ray & d) { return same_ray(d, rays[k]); });
        class_of[k] = static_cast<std::size_t>(at - distinct.begin());
        if (at == distinct.end()) {
            distinct.push_back(rays[k]);
            multiplicity.push_back(1);
        }
        else {
            ++multiplicity[class_of[k]];
        }
    }
    check.ray_count = distinct.size();
    if (distinct.empty()) {
        check.detail = "empty auxiliary set";
        return check;
    }
    const auto dim = common_dimension(distinct);

    // a class inherits every orthogonality of its members
    std::set<Edge> orth;
    for (std::size_t a = 0; a < rays.size(); ++a)
        for (std::size_t b = a + 1; b < rays.size(); ++b)
            if (class_of[a] != class_of[b] && orthogonal(rays[a], rays[b]))
                orth.emplace(std::min(class_of[a], class_of[b]), std::max(class_of[a], class_of[b]));

    AssignmentProblem problem;
    std::vector<std::vector<std::size_t>> up(distinct.size());
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        problem.labels.push_back(distinct[i].label());
        problem.vertex_terms.push_back({i, Rational(multiplicity[i])});
    }
    for (const auto & [i, j] : orth) {
        problem.edges.emplace_back(i, j);
        up[i].push_back(j);
    }
    problem.bases = complete_bases(up, dim);
    check.basis_count = problem.bases.size();
    check.lambda_min = projector_sum_spectrum(rays).lambda_min;

    // pass once some assignment reaches lambda_min
    const auto target = Rational(static_cast<std::int64_t>(std::ceil(check.lambda_min - tol::spec)));
    auto result = classical_max(problem, {timeout, Rules::kochen_specker, target});
    std::ostringstream os;
    os.precision(17);
    os << "lambda_min = " << check.lambda_min << " over " << rays.size() << " rays (" << distinct.size()
       << " distinct); ";
    if (result.reached_target) {
        check.classical_max = result.max_value;
        check.status = AuxStatus::pass;
        os << "an assignment reaches " << result.max_value;
    }
    else if (!result.exhausted) {
        check.status = AuxStatus::inconclusive;
        os << "oracle timed out after " << result.explored << " nodes";
    }
    else if (!result.feasible) {
        check.status = AuxStatus::warning;
        os << "the set admits no KS value assignment";
    }
    else {
        check.status = AuxStatus::warning;
        os << "no assignment reaches " << target;
    }
    check.detail = os.str();
    return check;
}

AuxCheck aux_independence_check(const ProofSet & proof, std::chrono::milliseconds timeout)
{
    return aux_independence_check(proof.aux, timeout);
}

} // namespace ksproof
