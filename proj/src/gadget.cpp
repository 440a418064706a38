#include "ksproof/gadget.hpp"

#include "ksproof/errors.hpp"
#include "ksproof/threshold.hpp"
#include "ksproof/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ksproof {

namespace {

std::size_t level_offset(int n, int level)
{
    return 2 + 6 * static_cast<std::size_t>(n - level);
}

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

std::size_t chain_index(int n, int level, Branch b)
{
    if (level == n + 1)
        return b == Branch::plus ? 0 : 1;
    if (level < 1 || level > n)
        throw RangeError("chain level " + std::to_string(level) + " outside 1.." + std::to_string(n + 1));
    return level_offset(n, level) + (b == Branch::plus ? 0 : 1);
}

std::size_t completion_index(int n, int level, Branch basis, Branch target)
{
    if (level < 1 || level > n)
        throw RangeError("completion level " + std::to_string(level) + " outside 1.." + std::to_string(n));
    return level_offset(n, level) + 2 + (basis == Branch::plus ? 0 : 2) + (target == Branch::plus ? 0 : 1);
}

GadgetTopology gadget_topology(int n)
{
    if (n < 1)
        throw RangeError("gadget order must be positive, got " + std::to_string(n));
    GadgetTopology t;
    t.order = n;
    t.roles.resize(2 + 6 * static_cast<std::size_t>(n));
    t.roles[0] = "psi";
    t.roles[1] = "phi";
    for (int k = n; k >= 1; --k) {
        const auto ks = std::to_string(k);
        for (Branch tau : {Branch::plus, Branch::minus}) {
            t.roles[chain_index(n, k, tau)] = "e" + ks + branch_sign(tau);
            for (Branch sigma : {Branch::plus, Branch::minus})
                t.roles[completion_index(n, k, tau, sigma)] =
                    std::string("x") + ks + branch_sign(tau) + branch_sign(sigma);
        }
        for (Branch tau : {Branch::plus, Branch::minus}) {
            const auto e = chain_index(n, k, tau);
            const auto xp = completion_index(n, k, tau, Branch::plus);
            const auto xm = completion_index(n, k, tau, Branch::minus);
            t.bases.push_back({e, xp, xm});
            t.basis_tags.push_back({k, tau});
            t.edges.emplace_back(e, xp);
            t.edges.emplace_back(e, xm);
            t.edges.emplace_back(xp, xm);
            t.edges.emplace_back(xp, chain_index(n, k + 1, Branch::plus));
            t.edges.emplace_back(xm, chain_index(n, k + 1, Branch::minus));
        }
    }
    t.edges.emplace_back(chain_index(n, 1, Branch::plus), chain_index(n, 1, Branch::minus));
    for (auto & [a, b] : t.edges)
        if (a > b)
            std::swap(a, b);
    return t;
}

std::vector<OrthoBasis> PairModel::bases() const
{
    std::vector<OrthoBasis> out;
    for (std::size_t i = 0; i < topology.bases.size(); ++i) {
        const auto & b = topology.bases[i];
        out.push_back({{rays.at(b[0]), rays.at(b[1]), rays.at(b[2])}, topology.basis_tags[i]});
    }
    return out;
}

namespace {

// One level of the chain: given the outer pair (a, b), returns (e_+, e_-) with
// |<e_+|e_->| = inner_target, provided |<a|b>| <= (1 + inner_target) / (3 - inner_target).
std::pair<CVector, CVector> split_pair(const Ray & a, const Ray & b, double inner_target, double theta)
{
    const Complex w = inner(a, b);
    const double c = std::abs(w);
    const double v = c > 0.0 ? -std::arg(w) : 0.0;
    const double cos2 = std::clamp((1.0 - inner_target) * (1.0 + c) / (2.0 * (1.0 - c)), 0.0, 1.0);
    const double cos_u = std::sqrt(cos2);
    const double sin_u = std::sqrt(1.0 - cos2);

    const Complex rot = std::polar(1.0, v);
    const CVector g = conj_cross(a, b);
    const double k_sym = std::sqrt(4.0 * c + (1.0 - c) * (1.0 - c) * sin_u * sin_u) / (2.0 * (1.0 + c));
    const Complex k_g = std::polar(1.0, theta) * (cos_u / (1.0 + c));

    CVector plus(3), minus(3);
    for (std::size_t i = 0; i < 3; ++i) {
        const Complex bi = b[i] * rot;
        const Complex common = 0.5 * sin_u * (a[i] - bi) + k_sym * (a[i] + bi);
        plus[i] = common + k_g * g[i];
        minus[i] = common - k_g * g[i];
    }
    return {plus, minus};
}

} // namespace

PairModel build_pair_model(const Ray & psi, const Ray & phi, int n, double theta)
{
    if (n < 1)
        throw RangeError("pair model order must be positive, got " + std::to_string(n));
    if (psi.dimension() != 3 || phi.dimension() != 3)
        throw DimensionError("pair models exist only in dimension 3");
    if (!std::isfinite(theta))
        throw RangeError("theta must be finite");

    const Complex w = inner(psi, phi);
    const double c = std::abs(w);
    if (c >= 1.0 - tol::ray)
        throw DegenerateError("pair model needs projectively distinct rays ('" + psi.label() + "', '" +
                              phi.label() + "')");
    if (c > delta_value(n) + tol::tie) {
        const int needed = order_of(c);
        throw OrderTooLowError("overlap " + fmt(c) + " exceeds delta_" + std::to_string(n) + " = " +
                                   delta(n).str() + "; order " + std::to_string(needed) + " is required",
                               needed);
    }

    PairModel m;
    m.order = n;
    m.overlap = c;
    m.theta = theta;
    m.phase_v = c > 0.0 ? -std::arg(w) : 0.0;
    m.topology = gadget_topology(n);
    m.rays.resize(m.topology.vertex_count());
    m.rays[0] = psi;
    m.rays[1] = phi;

    for (int k = n; k >= 1; --k) {
        const Ray & a = m.rays[chain_index(n, k + 1, Branch::plus)];
        const Ray & b = m.rays[chain_index(n, k + 1, Branch::minus)];
        auto [ep, em] = split_pair(a, b, delta_value(k - 1), theta);
        const auto ks = std::to_string(k);
        m.rays[chain_index(n, k, Branch::plus)] = Ray(std::move(ep), "e" + ks + "+");
        m.rays[chain_index(n, k, Branch::minus)] = Ray(std::move(em), "e" + ks + "-");
        for (Branch tau : {Branch::plus, Branch::minus})
            for (Branch sigma : {Branch::plus, Branch::minus}) {
                const auto idx = completion_index(n, k, tau, sigma);
                m.rays[idx] = orthogonal_complement(m.rays[chain_index(n, k, tau)],
                                                    m.rays[chain_index(n, k + 1, sigma)], m.topology.roles[idx]);
            }
    }

    for (std::size_t i = 0; i < m.rays.size(); ++i)
        for (std::size_t j = i + 1; j < m.rays.size(); ++j)
            if (same_ray(m.rays[i], m.rays[j]))
                m.coincidences.emplace_back(i, j);
    if (!m.coincidences.empty())
        m.warnings.push_back(std::to_string(m.coincidences.size()) + " coincident ray pair(s) in the gadget");

    const int needed = order_of(std::min(c, delta_value(n)));
    if (needed < n)
        m.warnings.push_back("economy: overlap " + fmt(c) + " already fits order " + std::to_string(needed) +
                             " (" + std::to_string(2 * needed) + " bases instead of " + std::to_string(2 * n) + ")");

    validate_pair_model(m);
    return m;
}

void validate_pair_model(const PairModel & model)
{
    const int n = model.order;
    if (n < 1)
        throw InvalidModelError("model order must be positive");
    if (model.rays.size() != model.topology.vertex_count() || model.topology.order != n)
        throw InvalidModelError("model rays do not match its topology");
    for (const auto & r : model.rays) {
        if (r.dimension() != 3)
            throw InvalidModelError("model ray '" + r.label() + "' is not 3-dimensional");
        double n2 = 0.0;
        for (const auto & z : r.components())
            n2 += std::norm(z);
        if (std::abs(n2 - 1.0) > tol::norm)
            throw InvalidModelError("model ray '" + r.label() + "' is not unit");
    }
    for (int k = 1; k <= n; ++k) {
        const double got = overlap(model.rays[chain_index(n, k, Branch::plus)],
                                   model.rays[chain_index(n, k, Branch::minus)]);
        if (std::abs(got - delta_value(k - 1)) > tol::chain)
            throw InvalidModelError("chain level " + std::to_string(k) + " overlap " + fmt(got) +
                                    " != delta_" + std::to_string(k - 1));
    }
    for (const auto & [i, j] : model.topology.edges) {
        const double o = overlap(model.rays[i], model.rays[j]);
        if (o >= tol::orth)
            throw InvalidModelError("edge " + model.topology.roles[i] + " -- " + model.topology.roles[j] +
                                    " is not orthogonal (|<.|.>| = " + fmt(o) + ")");
    }
    // Basis triangles are among the edges; this also covers orthonormality.
}

HermitianMatrix pair_operator_C(const PairModel & model)
{
    validate_pair_model(model);
    HermitianMatrix c(3);
    for (std::size_t i = 2; i < model.rays.size(); ++i)
        c.add_projector(model.rays[i]);
    for (const auto & [i, j] : model.topology.edges)
        c.add_projector_product(model.rays[i], model.rays[j], -1.0);
    return c;
}

PairBounds pair_inequality_bounds(const PairModel & model)
{
    HermitianMatrix b = pair_operator_C(model);
    b.add_projector(model.psi());
    b.add_projector(model.phi());
    return {2 * model.order + 1, spectrum_of(b).lambda_max};
}

double max_overlap_bound(double delta)
{
    if (!(delta >= 0.0) || delta >= 1.0)
        throw RangeError("max_overlap_bound: delta must lie in [0, 1)");
    return (1.0 + delta) / (3.0 - delta);
}

} // namespace ksproof
