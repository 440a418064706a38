#include "ksproof/certificate.hpp"

#include "ksproof/io.hpp"
#include "ksproof/tolerances.hpp"
#include "json_codec.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ksproof {

using detail::json;

OracleSummary run_oracle(const ProofSet & proof, const OracleOptions & options)
{
    OracleSummary s;
    const auto sim = fkrs_simultaneity_check(proof, options);
    s.simultaneity_holds = sim.holds;
    s.simultaneity_max = sim.oracle.max_value;
    s.explored = sim.oracle.explored;
    s.exhausted = sim.oracle.exhausted;
    s.max_value = sim.oracle.max_value;
    if (!proof.deduplicated) {
        const auto g = verify_G_bound(proof, options);
        s.g_checked = true;
        s.verdict = g.verdict;
        s.max_value = g.oracle.max_value;
        s.explored += g.oracle.explored;
        s.exhausted = s.exhausted && g.oracle.exhausted;
    }
    return s;
}

Certificate certify(ProofSet proof, std::optional<OracleSummary> oracle, const AuxCheck & aux)
{
    Certificate c;
    c.input_hash = input_hash(proof.fkrs);
    const auto b = bounds(proof);
    c.classical_bound = b.classical;
    c.quantum_value = b.quantum_min_value;
    c.violation_margin = b.quantum_min_value - static_cast<double>(b.classical);
    c.oracle = std::move(oracle);
    c.aux_status = aux.status;
    c.aux_detail = aux.detail;
    c.proof = std::move(proof);
    return c;
}

namespace {

json encode_edges(const std::vector<Edge> & edges)
{
    json out = json::array();
    for (const auto & [a, b] : edges)
        out.push_back({a, b});
    return out;
}

std::vector<Edge> decode_edges(const json & j)
{
    std::vector<Edge> out;
    for (const auto & e : j) {
        if (!e.is_array() || e.size() != 2)
            throw InputError("edges are index pairs");
        out.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return out;
}

json encode_oracle(const OracleSummary & s)
{
    return {{"verified", s.verified()},
            {"g_checked", s.g_checked},
            {"g_verdict", to_string(s.verdict)},
            {"max_value", detail::encode(s.max_value)},
            {"explored", s.explored},
            {"exhausted", s.exhausted},
            {"simultaneity_holds", s.simultaneity_holds},
            {"simultaneity_max", detail::encode(s.simultaneity_max)}};
}

BoundVerdict parse_verdict(const std::string & s)
{
    if (s == "verified")
        return BoundVerdict::verified;
    if (s == "violated")
        return BoundVerdict::violated;
    if (s == "inconclusive")
        return BoundVerdict::inconclusive;
    throw InputError("unknown oracle verdict '" + s + "'");
}

AuxStatus parse_aux_status(const std::string & s)
{
    if (s == "pass")
        return AuxStatus::pass;
    if (s == "warning")
        return AuxStatus::warning;
    if (s == "inconclusive")
        return AuxStatus::inconclusive;
    throw InputError("unknown aux status '" + s + "'");
}

} // namespace

std::string dump_certificate(const Certificate & cert)
{
    const auto & p = cert.proof;
    json rays = json::array(), aux = json::array();
    for (const auto & r : p.fkrs)
        rays.push_back(detail::encode(r));
    for (const auto & r : p.aux)
        aux.push_back(detail::encode(r));
    json bases = json::array();
    for (const auto & b : p.aux_bases)
        bases.push_back({{"rays", b.rays},
                         {"hyperedge", b.hyperedge},
                         {"level", b.tag.level},
                         {"branch", std::string(1, branch_sign(b.tag.branch))}});
    json hyper = json::array();
    for (const auto & h : p.hyperedges) {
        std::vector<Edge> edges;
        for (const auto & [a, b] : h.model.topology.edges)
            edges.emplace_back(h.vertices[a], h.vertices[b]);
        hyper.push_back({{"i", h.i},
                         {"j", h.j},
                         {"weight", h.weight},
                         {"overlap", h.overlap},
                         {"vertices", h.vertices},
                         {"bases", h.bases},
                         {"edges", encode_edges(edges)}});
    }
    json doc{
        {"format", "ksproof-certificate/1"},
        {"input_hash", cert.input_hash},
        {"order_n", p.order},
        {"M", p.verdict.clique_number},
        {"lambda_min", p.verdict.lambda_min},
        {"lambda_max", p.verdict.lambda_max},
        {"is_fkrs", p.verdict.is_fkrs},
        {"R", p.basis_total},
        {"classical_bound", cert.classical_bound},
        {"quantum_value", cert.quantum_value},
        {"violation_margin", cert.violation_margin},
        {"oracle", cert.oracle ? encode_oracle(*cert.oracle) : json(nullptr)},
        {"conventions",
         {{"theta", p.theta},
          {"tie_epsilon", tol::tie},
          {"orth_epsilon", tol::orth},
          {"norm_epsilon", tol::norm},
          {"pair_orientation", "psi is the lower FKRS index"},
          {"boundary_pairs", "a pair on a threshold goes to the lower order"}}},
        {"dimension", p.fkrs.empty() ? 0 : p.fkrs.front().dimension()},
        {"rays", rays},
        {"aux_rays", aux},
        {"aux_bases", bases},
        {"hyperedges", hyper},
        {"direct_edges", encode_edges(p.direct_edges)},
        {"edges", encode_edges(p.edges)},
        {"dedup", p.deduplicated},
        {"merge_map", p.merge_map},
        {"aux_check", {{"status", to_string(cert.aux_status)}, {"detail", cert.aux_detail}}},
        {"aux_sic_warning", cert.aux_status == AuxStatus::warning},
        {"warnings", p.warnings},
    };
    return doc.dump(2) + "\n";
}

Certificate parse_certificate(const std::string & text)
{
    const auto doc = detail::parse_json(text);
    Certificate c;
    auto & p = c.proof;
    try {
        c.input_hash = detail::field<std::string>(doc, "input_hash");
        p.order = detail::field<int>(doc, "order_n");
        p.verdict.order = p.order;
        p.verdict.clique_number = detail::field<std::size_t>(doc, "M");
        p.verdict.lambda_min = detail::finite_number(doc.at("lambda_min"), "lambda_min");
        p.verdict.lambda_max = detail::finite_number(doc.at("lambda_max"), "lambda_max");
        p.verdict.is_fkrs = detail::field<bool>(doc, "is_fkrs");
        p.basis_total = detail::field<std::size_t>(doc, "R");
        c.classical_bound = detail::field<std::int64_t>(doc, "classical_bound");
        c.quantum_value = detail::finite_number(doc.at("quantum_value"), "quantum_value");
        c.violation_margin = detail::finite_number(doc.at("violation_margin"), "violation_margin");
        p.theta = detail::finite_number(doc.at("conventions").at("theta"), "theta");
        const auto dim = detail::field<std::size_t>(doc, "dimension");
        for (const auto & r : doc.at("rays"))
            p.fkrs.push_back(detail::decode_ray(r, dim));
        for (const auto & r : doc.at("aux_rays"))
            p.aux.push_back(detail::decode_ray(r, dim));
        for (const auto & b : doc.at("aux_bases")) {
            AuxBasis basis;
            const auto rays = b.at("rays").get<std::vector<std::size_t>>();
            if (rays.size() != 3)
                throw InputError("aux bases are index triples");
            std::copy(rays.begin(), rays.end(), basis.rays.begin());
            basis.hyperedge = detail::field<std::size_t>(b, "hyperedge");
            basis.tag.level = detail::field<int>(b, "level");
            basis.tag.branch = detail::field<std::string>(b, "branch") == "-" ? Branch::minus : Branch::plus;
            p.aux_bases.push_back(basis);
        }
        p.merge_map = detail::field<std::vector<std::size_t>>(doc, "merge_map");
        p.deduplicated = detail::field<bool>(doc, "dedup");
        for (const auto & h : doc.at("hyperedges")) {
            HyperEdge e;
            e.i = detail::field<std::size_t>(h, "i");
            e.j = detail::field<std::size_t>(h, "j");
            e.weight = detail::field<int>(h, "weight");
            if (e.weight < 1)
                throw InputError("hyper-edge weight must be positive");
            e.overlap = detail::finite_number(h.at("overlap"), "overlap");
            e.vertices = detail::field<std::vector<std::size_t>>(h, "vertices");
            e.bases = detail::field<std::vector<std::size_t>>(h, "bases");
            e.model.order = e.weight;
            e.model.overlap = e.overlap;
            e.model.theta = p.theta;
            e.model.topology = gadget_topology(e.weight);
            if (e.vertices.size() != e.model.topology.vertex_count())
                throw InputError("hyper-edge vertex list does not match its weight");
            for (auto v : e.vertices) {
                if (v >= p.vertex_count())
                    throw InputError("hyper-edge vertex out of range");
                e.model.rays.push_back(p.ray(v));
            }
            p.hyperedges.push_back(std::move(e));
        }
        p.direct_edges = decode_edges(doc.at("direct_edges"));
        p.edges = decode_edges(doc.at("edges"));
        if (doc.contains("warnings"))
            p.warnings = doc.at("warnings").get<std::vector<std::string>>();
        if (doc.contains("aux_check") && doc.at("aux_check").is_object()) {
            c.aux_status = parse_aux_status(detail::field<std::string>(doc.at("aux_check"), "status"));
            c.aux_detail = detail::field<std::string>(doc.at("aux_check"), "detail");
        }
        if (doc.contains("oracle") && doc.at("oracle").is_object()) {
            const auto & o = doc.at("oracle");
            OracleSummary s;
            s.g_checked = detail::field<bool>(o, "g_checked");
            s.verdict = parse_verdict(detail::field<std::string>(o, "g_verdict"));
            s.max_value = detail::decode_rational(o.at("max_value"));
            s.explored = detail::field<std::uint64_t>(o, "explored");
            s.exhausted = detail::field<bool>(o, "exhausted");
            s.simultaneity_holds = detail::field<bool>(o, "simultaneity_holds");
            s.simultaneity_max = detail::decode_rational(o.at("simultaneity_max"));
            c.oracle = s;
        }
    }
    catch (const json::exception & e) {
        throw InputError(std::string("malformed certificate: ") + e.what());
    }
    return c;
}

namespace {

Edge normalized(Edge e) { return e.first < e.second ? e : Edge{e.second, e.first}; }

template <class... Args>
std::string cat(const Args &... args)
{
    std::ostringstream os;
    os.precision(17);
    (os << ... << args);
    return os.str();
}

void check_structure(const ProofSet & p, VerifyReport & r)
{
    const auto n = p.vertex_count();
    for (const auto & ray : p.all_rays())
        if (ray.dimension() != 3) {
            r.failures.push_back("every ray must live in C^3");
            return;
        }

    if (p.merge_map.size() != n) {
        r.failures.push_back("merge_map has the wrong length");
        return;
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto rep = p.merge_map[v];
        if (!p.deduplicated && rep != v)
            r.failures.push_back(cat("vertex ", v, " is merged but the proof is not deduplicated"));
        else if (rep > v || p.merge_map[rep] != rep)
            r.failures.push_back(cat("merge_map entry ", v, " is not a representative"));
        else if (rep != v && !same_ray(p.ray(v), p.ray(rep)))
            r.failures.push_back(cat("vertex ", v, " is merged into a different ray ", rep));
        if (v < p.fkrs.size() && rep != v)
            r.failures.push_back(cat("FKRS ray ", v, " was merged"));
    }

    const auto partition = partition_pairs(p.fkrs, p.order);
    std::map<Edge, int> expected;
    std::vector<Edge> direct;
    for (const auto & [m, pairs] : partition.classes)
        for (const auto & e : pairs) {
            if (m == 0)
                direct.push_back(e);
            else
                expected[e] = m;
        }
    auto declared_direct = p.direct_edges;
    std::sort(declared_direct.begin(), declared_direct.end());
    std::sort(direct.begin(), direct.end());
    if (declared_direct != direct)
        r.failures.push_back("direct edges differ from the orthogonal FKRS pairs");

    std::set<Edge> implied(direct.begin(), direct.end());
    std::size_t bases = 0;
    for (std::size_t k = 0; k < p.hyperedges.size(); ++k) {
        const auto & h = p.hyperedges[k];
        const auto it = expected.find({h.i, h.j});
        if (it == expected.end() || it->second != h.weight) {
            r.failures.push_back(cat("hyper-edge ", k, " (", h.i, ",", h.j, ") does not match the pair partition"));
            continue;
        }
        expected.erase(it);
        if (h.vertices[0] != h.i || h.vertices[1] != h.j)
            r.failures.push_back(cat("hyper-edge ", k, " does not start at its FKRS pair"));
        const auto & topo = h.model.topology;
        for (const auto & [a, b] : topo.edges)
            implied.insert(normalized({h.vertices[a], h.vertices[b]}));
        if (h.bases.size() != topo.bases.size()) {
            r.failures.push_back(cat("hyper-edge ", k, " has ", h.bases.size(), " bases, expected ", topo.bases.size()));
            continue;
        }
        for (std::size_t b = 0; b < h.bases.size(); ++b) {
            if (h.bases[b] >= p.aux_bases.size()) {
                r.failures.push_back(cat("hyper-edge ", k, " names a missing basis"));
                continue;
            }
            const auto & basis = p.aux_bases[h.bases[b]];
            const Triple want{h.vertices[topo.bases[b][0]], h.vertices[topo.bases[b][1]], h.vertices[topo.bases[b][2]]};
            if (basis.hyperedge != k || basis.rays != want)
                r.failures.push_back(cat("basis ", h.bases[b], " does not match hyper-edge ", k));
        }
        bases += h.bases.size();
    }
    for (const auto & [e, m] : expected)
        r.failures.push_back(cat("pair (", e.first, ",", e.second, ") of order ", m, " has no hyper-edge"));
    if (bases != p.aux_bases.size())
        r.failures.push_back("some aux bases belong to no hyper-edge");

    std::set<Edge> declared;
    for (const auto & e : p.edges)
        declared.insert(normalized(e));
    if (declared != implied)
        r.failures.push_back("declared edges differ from the gadget and direct edges");

    for (const auto & [a, b] : p.edges) {
        if (a >= n || b >= n) {
            r.failures.push_back("edge index out of range");
            continue;
        }
        const auto m = std::abs(inner(p.ray(a), p.ray(b)));
        if (m > tol::orth)
            r.failures.push_back(cat("rays ", a, " and ", b, " are declared orthogonal but |<a|b>| = ", m));
    }
    for (std::size_t k = 0; k < p.aux_bases.size(); ++k) {
        const auto & t = p.aux_bases[k].rays;
        for (std::size_t x = 0; x < 3; ++x)
            for (std::size_t y = x + 1; y < 3; ++y)
                if (t[x] >= n || t[y] >= n || std::abs(inner(p.ray(t[x]), p.ray(t[y]))) > tol::orth)
                    r.failures.push_back(cat("aux basis ", k, " is not orthonormal"));
    }
}

} // namespace

VerifyReport verify_certificate(const Certificate & cert, bool run_oracle_checks, std::chrono::milliseconds timeout)
{
    VerifyReport r;
    const auto & p = cert.proof;
    if (p.fkrs.size() < 2) {
        r.failures.push_back("a certificate needs at least two FKRS rays");
        return r;
    }
    if (input_hash(p.fkrs) != cert.input_hash)
        r.failures.push_back("input_hash does not match the embedded rays");

    try {
        check_structure(p, r);
    }
    catch (const Error & e) {
        r.failures.push_back(std::string("structure: ") + e.what());
    }
    if (!r.failures.empty())
        return r;

    const auto verdict = fkrs_check(p.fkrs, p.order);
    if (verdict.clique_number != p.verdict.clique_number)
        r.failures.push_back(cat("M is ", verdict.clique_number, ", certificate says ", p.verdict.clique_number));
    if (std::abs(verdict.lambda_min - p.verdict.lambda_min) > tol::spec)
        r.failures.push_back(cat("lambda_min is ", verdict.lambda_min, ", certificate says ", p.verdict.lambda_min));
    if (verdict.is_fkrs != p.verdict.is_fkrs)
        r.failures.push_back("is_fkrs flag disagrees with the recomputed verdict");
    if (!verdict.is_fkrs)
        r.failures.push_back("the rays are not an FKRS at the declared order");

    const auto R = static_cast<std::int64_t>(p.aux_bases.size());
    if (p.basis_total != p.aux_bases.size())
        r.failures.push_back(cat("R is ", p.aux_bases.size(), ", certificate says ", p.basis_total));
    if (cert.classical_bound != static_cast<std::int64_t>(verdict.clique_number) + R)
        r.failures.push_back("classical_bound is not M + R");
    const double quantum = static_cast<double>(R) + verdict.lambda_min;
    if (std::abs(cert.quantum_value - quantum) > tol::chain)
        r.failures.push_back(cat("quantum_value is ", quantum, ", certificate says ", cert.quantum_value));
    if (std::abs(cert.violation_margin - (cert.quantum_value - static_cast<double>(cert.classical_bound))) > tol::chain)
        r.failures.push_back("violation_margin is not quantum_value - classical_bound");

    if (!p.deduplicated) {
        auto expected = projector_sum(p.fkrs);
        expected += HermitianMatrix::identity(3, static_cast<double>(R));
        const auto defect = observable_G(p).max_abs_diff(expected);
        if (defect > tol::identity)
            r.failures.push_back(cat("G differs from sum P + R I by ", defect));
        else
            r.notes.push_back(cat("G = sum P + R I within ", defect));
    }
    else {
        r.notes.push_back("deduplicated proof: G identity and G bound not checked");
    }

    if (run_oracle_checks && r.failures.empty()) {
        r.oracle = run_oracle(p, {timeout, Rules::kochen_specker, std::nullopt});
        const auto & o = *r.oracle;
        if (!o.exhausted)
            r.inconclusive = true;
        else {
            if (!o.simultaneity_holds)
                r.failures.push_back(cat("oracle: at most ", o.simultaneity_max, " FKRS rays can be 1, expected M = ",
                                         verdict.clique_number));
            if (o.g_checked && o.verdict != BoundVerdict::verified)
                r.failures.push_back(cat("oracle: classical max of G is ", o.max_value, ", expected ",
                                         cert.classical_bound));
        }
    }
    return r;
}

std::string dump_verify_report(const VerifyReport & report)
{
    json doc{{"ok", report.ok()},
             {"inconclusive", report.inconclusive},
             {"failures", report.failures},
             {"notes", report.notes},
             {"oracle", report.oracle ? encode_oracle(*report.oracle) : json(nullptr)}};
    return doc.dump(2) + "\n";
}

} // namespace ksproof
