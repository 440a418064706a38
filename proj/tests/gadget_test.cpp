#include "ksproof/errors.hpp"
#include "ksproof/gadget.hpp"
#include "ksproof/oracle.hpp"
#include "ksproof/threshold.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ksproof;

namespace {

// Ray at exactly modulus c from psi, with an arbitrary relative phase.
Ray at_overlap(const Ray & psi, double c, std::mt19937_64 & rng, double phase = 0.0)
{
    auto w = oracles::random_vector(rng, 3);
    const auto proj = oracles::dot(psi.components(), w);
    for (std::size_t k = 0; k < 3; ++k)
        w[k] -= proj * psi[k];
    w = oracles::scaled(w, 1.0 / oracles::norm(w));
    return Ray(oracles::add(oracles::scaled(psi.components(), std::polar(c, phase)),
                            oracles::scaled(w, std::sqrt(1.0 - c * c))));
}

void expect_valid(const PairModel & m, int n)
{
    const auto & topo = m.topology;
    ASSERT_EQ(m.rays.size(), 2U + 6U * static_cast<std::size_t>(n));
    for (const auto & [i, j] : topo.edges)
        EXPECT_LT(std::abs(inner(m.rays[i], m.rays[j])), 1e-9) << topo.roles[i] << " -- " << topo.roles[j];
    for (const auto & b : topo.bases) {
        const std::vector<Ray> basis{m.rays[b[0]], m.rays[b[1]], m.rays[b[2]]};
        for (double x : oracles::projector_sum_eigenvalues(basis))
            EXPECT_NEAR(x, 1.0, 1e-9);
    }
    for (int k = 1; k <= n; ++k) {
        const auto & plus = m.rays[chain_index(n, k, Branch::plus)];
        const auto & minus = m.rays[chain_index(n, k, Branch::minus)];
        EXPECT_NEAR(overlap(plus, minus), delta_value(k - 1), 1e-8) << "level " << k;
    }
    const auto c = pair_operator_C(m);
    EXPECT_LT(c.max_abs_diff(HermitianMatrix::identity(3, 2.0 * n)), 1e-8);
}

// The model's orthogonality structure with objective P_psi + P_phi + C.
AssignmentProblem problem_of(const GadgetTopology & topo)
{
    AssignmentProblem p;
    p.labels = topo.roles;
    p.edges = topo.edges;
    for (const auto & b : topo.bases)
        p.bases.push_back({b[0], b[1], b[2]});
    for (std::size_t v = 0; v < topo.vertex_count(); ++v)
        p.vertex_terms.push_back({v, Rational(1)});
    for (const auto & [a, b] : topo.edges)
        p.pair_terms.push_back({a, b, Rational(-1)});
    return p;
}

} // namespace

TEST(Topology, Counts)
{
    for (int n = 1; n <= 6; ++n) {
        const auto t = gadget_topology(n);
        EXPECT_EQ(t.vertex_count(), 2U + 6U * static_cast<std::size_t>(n));
        EXPECT_EQ(t.bases.size(), 2U * static_cast<std::size_t>(n));
        EXPECT_EQ(t.edges.size(), 10U * static_cast<std::size_t>(n) + 1U);
        std::set<Edge> unique;
        for (auto [a, b] : t.edges)
            unique.insert({std::min(a, b), std::max(a, b)});
        EXPECT_EQ(unique.size(), t.edges.size());
        // every non-pair vertex sits in exactly one basis
        std::vector<int> seen(t.vertex_count(), 0);
        for (const auto & b : t.bases)
            for (auto v : b)
                ++seen[v];
        EXPECT_EQ(seen[0], 0);
        EXPECT_EQ(seen[1], 0);
        for (std::size_t v = 2; v < t.vertex_count(); ++v)
            EXPECT_EQ(seen[v], 1);
    }
    EXPECT_THROW(gadget_topology(0), RangeError);
}

TEST(Topology, CliftonEdgeList)
{
    const auto t = gadget_topology(1);
    std::set<std::pair<std::string, std::string>> got;
    for (auto [a, b] : t.edges) {
        auto x = t.roles[a], y = t.roles[b];
        if (y < x)
            std::swap(x, y);
        got.insert({x, y});
    }
    const auto e_p = t.roles[chain_index(1, 1, Branch::plus)];
    const auto e_m = t.roles[chain_index(1, 1, Branch::minus)];
    EXPECT_TRUE(got.count({std::min(e_p, e_m), std::max(e_p, e_m)}));
    // psi and phi touch exactly two rays each, never each other
    int psi_deg = 0, phi_deg = 0;
    for (auto [a, b] : t.edges) {
        psi_deg += (a == 0 || b == 0);
        phi_deg += (a == 1 || b == 1);
        EXPECT_FALSE((a == 0 && b == 1) || (a == 1 && b == 0));
    }
    EXPECT_EQ(psi_deg, 2);
    EXPECT_EQ(phi_deg, 2);
}

TEST(PairModel, CliftonCase)
{
    const Ray psi({1.0, 1.0, 1.0}), phi({1.0, -1.0, -1.0});
    const auto m = build_pair_model(psi, phi, 1);
    expect_valid(m, 1);
    EXPECT_NEAR(m.overlap, 1.0 / 3.0, 1e-15);
    EXPECT_LT(std::abs(inner(m.rays[chain_index(1, 1, Branch::plus)], m.rays[chain_index(1, 1, Branch::minus)])),
              1e-9);
    EXPECT_TRUE(m.coincidences.empty());
}

TEST(PairModel, SecondOrderInnerChain)
{
    std::mt19937_64 rng(53);
    const auto psi = oracles::random_ray(rng);
    const auto m = build_pair_model(psi, at_overlap(psi, 0.45, rng), 2);
    expect_valid(m, 2);
    EXPECT_NEAR(overlap(m.rays[chain_index(2, 2, Branch::plus)], m.rays[chain_index(2, 2, Branch::minus)]), 1.0 / 3.0,
                1e-8);
}

TEST(PairModel, OrthogonalInputs)
{
    const auto m = build_pair_model(Ray({1.0, 0.0, 0.0}), Ray({0.0, 1.0, 0.0}), 1);
    expect_valid(m, 1);
}

TEST(PairModel, RandomConfigurations)
{
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + trial % 3;
        const auto psi = oracles::random_ray(rng);
        // every eighth trial sits exactly on the threshold
        const double c = trial % 8 == 0 ? delta_value(n) : u(rng) * delta_value(n);
        const auto phi = at_overlap(psi, c, rng, phase(rng));
        const double theta = trial % 5 == 0 ? phase(rng) : 0.0;
        PairModel m;
        ASSERT_NO_THROW(m = build_pair_model(psi, phi, n, theta)) << "trial " << trial << " c " << c;
        expect_valid(m, n);
    }
}

TEST(PairModel, EquivariantUnderSpecialUnitaries)
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        Eigen::Matrix3cd a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const auto v = oracles::random_vector(rng, 1);
                a(i, j) = v[0];
            }
        Eigen::Matrix3cd q = Eigen::HouseholderQR<Eigen::Matrix3cd>(a).householderQ();
        q /= std::pow(q.determinant(), 1.0 / 3.0);
        auto apply = [&](const Ray & r) {
            Eigen::Vector3cd v(r[0], r[1], r[2]);
            Eigen::Vector3cd w = q * v;
            return Ray({w(0), w(1), w(2)});
        };
        const int n = 1 + trial % 2;
        const auto psi = oracles::random_ray(rng);
        const auto phi = at_overlap(psi, 0.8 * delta_value(n), rng, 0.7);
        const auto m1 = build_pair_model(psi, phi, n);
        const auto m2 = build_pair_model(apply(psi), apply(phi), n);
        const auto g1 = gram(m1.rays), g2 = gram(m2.rays);
        for (std::size_t k = 0; k < g1.data.size(); ++k)
            ASSERT_NEAR(g1.data[k], g2.data[k], 1e-7);
    }
}

TEST(PairModel, LowerOrderPairsStillBuildButWarn)
{
    std::mt19937_64 rng(67);
    const auto psi = oracles::random_ray(rng);
    const auto m = build_pair_model(psi, at_overlap(psi, 0.2, rng), 3);
    expect_valid(m, 3);
    EXPECT_FALSE(m.warnings.empty());
}

TEST(PairModel, Errors)
{
    std::mt19937_64 rng(71);
    const auto psi = oracles::random_ray(rng);
    try {
        build_pair_model(psi, at_overlap(psi, 0.5, rng), 1);
        FAIL() << "expected OrderTooLowError";
    }
    catch (const OrderTooLowError & e) {
        EXPECT_EQ(e.suggested_order(), 2);
    }
    EXPECT_THROW(build_pair_model(psi, psi, 2), DegenerateError);
    EXPECT_THROW(build_pair_model(Ray({1.0, 0.0, 0.0, 0.0}), Ray({0.0, 1.0, 0.0, 0.0}), 1), DimensionError);
    EXPECT_THROW(build_pair_model(psi, at_overlap(psi, 0.1, rng), 0), RangeError);
}

TEST(PairModel, PerturbedModelFailsValidation)
{
    const auto m = build_pair_model(Ray({1.0, 1.0, 1.0}), Ray({1.0, -1.0, -1.0}), 1);
    auto bad = m;
    auto v = bad.rays[4].components();
    v[0] += 1e-3;
    bad.rays[4] = Ray(v);
    EXPECT_THROW(validate_pair_model(bad), InvalidModelError);
    EXPECT_NO_THROW(validate_pair_model(m));
}

TEST(PairBounds, Examples)
{
    std::mt19937_64 rng(73);
    const auto clifton = pair_inequality_bounds(build_pair_model(Ray({1.0, 1.0, 1.0}), Ray({1.0, -1.0, -1.0}), 1));
    EXPECT_EQ(clifton.classical, 3);
    EXPECT_NEAR(clifton.quantum_max, 3.0 + 1.0 / 3.0, 1e-8);

    const auto psi = oracles::random_ray(rng);
    const auto second = pair_inequality_bounds(build_pair_model(psi, at_overlap(psi, 0.5, rng), 2));
    EXPECT_EQ(second.classical, 5);
    EXPECT_NEAR(second.quantum_max, 5.5, 1e-8);

    const auto flat = pair_inequality_bounds(build_pair_model(Ray({1.0, 0.0, 0.0}), Ray({0.0, 0.0, 1.0}), 1));
    EXPECT_EQ(flat.classical, 3);
    EXPECT_NEAR(flat.quantum_max, 3.0, 1e-8);
}

TEST(PairBounds, QuantumMaximumIsTwoNPlusOnePlusOverlap)
{
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 3;
        const auto psi = oracles::random_ray(rng);
        const double c = u(rng) * delta_value(n);
        const auto b = pair_inequality_bounds(build_pair_model(psi, at_overlap(psi, c, rng), n));
        EXPECT_EQ(b.classical, 2 * n + 1);
        EXPECT_NEAR(b.quantum_max, 2.0 * n + 1.0 + c, 1e-8);
    }
}

TEST(PairBounds, ClassicalMaximumOverTheModelStructure)
{
    for (int n = 1; n <= 2; ++n) {
        const auto p = problem_of(gadget_topology(n));
        const auto ref = oracles::brute_max(p);
        const auto got = classical_max(p);
        ASSERT_TRUE(got.exhausted);
        EXPECT_EQ(ref.value, Rational(2 * n + 1));
        EXPECT_EQ(got.max_value, ref.value);
    }
}

TEST(OverlapBound, Examples)
{
    EXPECT_NEAR(max_overlap_bound(0.0), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(max_overlap_bound(1.0 / 3.0), 0.5, 1e-15);
    for (int n = 0; n < 30; ++n)
        EXPECT_NEAR(max_overlap_bound(delta_value(n)), delta_value(n + 1), 1e-14);
    EXPECT_THROW(max_overlap_bound(1.0), RangeError);
    EXPECT_THROW(max_overlap_bound(-0.1), RangeError);
}

TEST(OverlapBound, RandomSearchNeverExceedsIt)
{
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (double d : {0.0, 1.0 / 3.0, 0.5, 0.6}) {
        const double bound = max_overlap_bound(d);
        double best = 0.0;
        for (int trial = 0; trial < 20000; ++trial) {
            const auto pair = oracles::inner_pair(d, phase(rng));
            const auto psi = oracles::random_vector(rng, 3);
            best = std::max(best, oracles::gadget_overlap(pair.e, pair.f, psi));
        }
        EXPECT_LE(best, bound + 1e-6) << "delta " << d;
        EXPECT_GT(best, bound - 0.05) << "delta " << d;
    }
}

TEST(OverlapBound, WitnessAttainsIt)
{
    for (double d : {0.0, 1.0 / 3.0, 0.5}) {
        const auto pair = oracles::inner_pair(d);
        const auto psi = oracles::tightness_witness(pair, d);
        EXPECT_NEAR(oracles::norm(psi), 1.0, 1e-14);
        EXPECT_NEAR(oracles::gadget_overlap(pair.e, pair.f, psi), max_overlap_bound(d), 1e-9);
    }
}
