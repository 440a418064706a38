#include "ksproof/errors.hpp"
#include "ksproof/threshold.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ksproof;

TEST(Delta, ExactValues)
{
    EXPECT_EQ(delta(0), Rational(0));
    EXPECT_EQ(delta(1), Rational(1, 3));
    EXPECT_EQ(delta(2), Rational(1, 2));
    EXPECT_EQ(delta(3), Rational(3, 5));
    EXPECT_THROW(delta(-1), RangeError);
}

TEST(Delta, RecursionHoldsExactly)
{
    for (int n = 0; n <= 100; ++n) {
        const auto d = delta(n);
        EXPECT_EQ(delta(n + 1), (Rational(1) + d) / (Rational(3) - d)) << n;
    }
}

TEST(Delta, StrictlyIncreasingBelowOne)
{
    for (int n = 0; n < 2000; ++n) {
        ASSERT_LT(delta(n), delta(n + 1));
        ASSERT_LT(delta(n + 1), Rational(1));
    }
    EXPECT_LT(delta(1'000'000), Rational(1));
    EXPECT_LT(delta(999'999), delta(1'000'000));
}

TEST(OrderOf, Examples)
{
    EXPECT_EQ(order_of(0.0), 0);
    EXPECT_EQ(order_of(1.0 / 3.0), 1);
    EXPECT_EQ(order_of(0.6), 3);
    EXPECT_EQ(order_of(0.5), 2);
    EXPECT_EQ(order_of(0.34), 2);
    EXPECT_THROW(order_of(1.0), RangeError);
    EXPECT_THROW(order_of(-0.1), RangeError);
}

TEST(OrderOf, InvertsDelta)
{
    for (int m = 0; m <= 50; ++m)
        EXPECT_EQ(order_of(delta_value(m)), m) << m;
}

TEST(OrderOf, BracketsTheOverlap)
{
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(1e-6, 0.98);
    for (int trial = 0; trial < 2000; ++trial) {
        const double c = u(rng);
        const int m = order_of(c);
        ASSERT_GE(m, 1);
        EXPECT_LE(c, delta_value(m) + 1e-9);
        EXPECT_GT(c, delta_value(m - 1) + 1e-9);
    }
}

TEST(OrderOf, TiesGoToTheLowerOrder)
{
    EXPECT_EQ(order_of(1.0 / 3.0 + 5e-10), 1);
    EXPECT_EQ(order_of(1.0 / 3.0 + 5e-9), 2);
    EXPECT_EQ(order_of(0.5 - 1e-12), 2);
}

TEST(ThresholdGraph, ExampleSets)
{
    const auto tetra = fixtures::tetrahedron();
    EXPECT_EQ(build_threshold_graph(tetra, 1).adjacency.edge_count(), 0U);
    EXPECT_EQ(build_threshold_graph(tetra, 0).adjacency.edge_count(), 6U);

    const auto nine = fixtures::nine_omega();
    EXPECT_EQ(build_threshold_graph(nine, 1).adjacency.edge_count(), 36U);
    EXPECT_EQ(build_threshold_graph(nine, 2).adjacency.edge_count(), 0U);

    const std::vector<Ray> orth{Ray({1.0, 0.0, 0.0}), Ray({0.0, 1.0, 0.0})};
    EXPECT_EQ(build_threshold_graph(orth, 0).adjacency.edge_count(), 0U);
}

TEST(ThresholdGraph, RejectsDuplicatesAndTinySets)
{
    const std::vector<Ray> dup{Ray({1.0, 2.0, 0.0}), Ray({Complex(0, 2), Complex(0, 4), 0.0})};
    try {
        build_threshold_graph(dup, 1);
        FAIL() << "expected DuplicateRayError";
    }
    catch (const DuplicateRayError & e) {
        EXPECT_EQ(e.first(), 0U);
        EXPECT_EQ(e.second(), 1U);
    }
    const std::vector<Ray> one{Ray({1.0, 0.0, 0.0})};
    EXPECT_THROW(build_threshold_graph(one, 1), InputError);
}

TEST(ThresholdGraph, RaisingTheOrderNeverAddsEdges)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Ray> rays;
        for (int k = 0; k < 8; ++k)
            rays.push_back(oracles::random_ray(rng));
        for (int n = 0; n < 8; ++n) {
            const auto lo = build_threshold_graph(rays, n).adjacency;
            const auto hi = build_threshold_graph(rays, n + 1).adjacency;
            for (const auto & [i, j] : hi.edges())
                EXPECT_TRUE(lo.adjacent(i, j));
        }
    }
}

TEST(FkrsCheck, BundledExamples)
{
    const auto tetra = fixtures::tetrahedron();
    const auto v1 = fkrs_check(tetra, 1);
    EXPECT_EQ(v1.clique_number, 1U);
    EXPECT_NEAR(v1.lambda_min, 4.0 / 3.0, 1e-9);
    EXPECT_TRUE(v1.is_fkrs);
    EXPECT_EQ(v1.witness_clique.size(), 1U);

    const auto nine = fixtures::nine_omega();
    const auto n1 = fkrs_check(nine, 1);
    EXPECT_EQ(n1.clique_number, 9U);
    EXPECT_FALSE(n1.is_fkrs);
    const auto n2 = fkrs_check(nine, 2);
    EXPECT_EQ(n2.clique_number, 1U);
    EXPECT_NEAR(n2.lambda_min, 3.0, 1e-9);
    EXPECT_TRUE(n2.is_fkrs);
}

TEST(FkrsCheck, NoThreeTetrahedronRaysFormAnFkrs)
{
    const auto tetra = fixtures::tetrahedron();
    for (std::size_t drop = 0; drop < 4; ++drop) {
        std::vector<Ray> rays;
        for (std::size_t k = 0; k < 4; ++k)
            if (k != drop)
                rays.push_back(tetra[k]);
        const auto v = fkrs_check(rays, 1);
        EXPECT_FALSE(v.is_fkrs);
        EXPECT_NEAR(v.lambda_min, 1.0 / 3.0, 1e-9);
    }
}

TEST(FkrsCheck, AutoOrderUsesTheLargestOverlap)
{
    EXPECT_EQ(auto_order(fixtures::tetrahedron()), 1);
    EXPECT_EQ(auto_order(fixtures::nine_omega()), 2);
    EXPECT_EQ(fkrs_check(fixtures::nine_omega()).order, 2);
}

TEST(FkrsCheck, WitnessIsAClique)
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Ray> rays;
        for (int k = 0; k < 10; ++k)
            rays.push_back(oracles::random_ray(rng));
        const auto v = fkrs_check(rays, 1 + trial % 3);
        const auto g = build_threshold_graph(rays, v.order);
        EXPECT_EQ(v.witness_clique.size(), v.clique_number);
        EXPECT_TRUE(g.adjacency.is_clique(v.witness_clique));
    }
}

TEST(FkrsCheck, InvariantUnderPermutationAndPhases)
{
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (auto rays : {fixtures::tetrahedron(), fixtures::nine_omega()}) {
        const auto base = fkrs_check(rays);
        for (int trial = 0; trial < 20; ++trial) {
            std::shuffle(rays.begin(), rays.end(), rng);
            std::vector<Ray> phased;
            for (const auto & r : rays)
                phased.emplace_back(oracles::scaled(r.components(), std::polar(1.0, phase(rng))));
            const auto v = fkrs_check(phased);
            EXPECT_EQ(v.order, base.order);
            EXPECT_EQ(v.clique_number, base.clique_number);
            EXPECT_NEAR(v.lambda_min, base.lambda_min, 1e-12);
            EXPECT_EQ(v.is_fkrs, base.is_fkrs);
        }
    }
}
