#include "ksproof/errors.hpp"
#include "ksproof/lift.hpp"
#include "ksproof/proof.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ksproof;

namespace {

std::size_t count_of(const LiftedSet & s, Copy copy, bool from_basis)
{
    std::size_t n = 0;
    for (const auto & p : s.provenance)
        n += p.copy == copy && p.from_basis == from_basis;
    return n;
}

} // namespace

TEST(Lift, TetrahedronByOne)
{
    const auto tetra = fixtures::tetrahedron();
    const auto lifted = lift(tetra, 1);
    EXPECT_EQ(lifted.dimension, 4U);
    ASSERT_EQ(lifted.rays.size(), 10U);
    EXPECT_TRUE(lifted.merges.empty());
    EXPECT_EQ(count_of(lifted, Copy::plus, false), 4U);
    EXPECT_EQ(count_of(lifted, Copy::minus, false), 4U);
    EXPECT_EQ(count_of(lifted, Copy::plus, true), 1U);
    EXPECT_EQ(count_of(lifted, Copy::minus, true), 1U);

    for (std::size_t k = 0; k < lifted.rays.size(); ++k) {
        const auto & p = lifted.provenance[k];
        if (p.from_basis)
            continue;
        const auto & src = tetra[p.index].components();
        const auto & dst = lifted.rays[k].components();
        const std::size_t shift = p.copy == Copy::plus ? 0 : 1;
        for (std::size_t c = 0; c < 3; ++c)
            EXPECT_EQ(dst[c + shift], src[c]);
    }
}

TEST(Lift, SourceGramModuliArePreservedExactly)
{
    const auto tetra = fixtures::tetrahedron();
    const auto lifted = lift(tetra, 1);
    for (std::size_t a = 0; a < lifted.rays.size(); ++a)
        for (std::size_t b = 0; b < lifted.rays.size(); ++b) {
            const auto & pa = lifted.provenance[a];
            const auto & pb = lifted.provenance[b];
            if (pa.from_basis || pb.from_basis || pa.copy != pb.copy)
                continue;
            EXPECT_EQ(overlap(lifted.rays[a], lifted.rays[b]), overlap(tetra[pa.index], tetra[pb.index]));
        }
}

TEST(Lift, PaddingBasisIsOrthogonalToItsCopy)
{
    std::mt19937_64 rng(127);
    std::vector<Ray> rays;
    for (int k = 0; k < 6; ++k)
        rays.push_back(oracles::random_ray(rng, 4));
    const auto lifted = lift(rays, 2);
    EXPECT_EQ(lifted.dimension, 6U);
    for (std::size_t a = 0; a < lifted.rays.size(); ++a)
        for (std::size_t b = 0; b < lifted.rays.size(); ++b) {
            const auto & pa = lifted.provenance[a];
            const auto & pb = lifted.provenance[b];
            if (pa.copy == pb.copy && pa.from_basis && !pb.from_basis) {
                EXPECT_EQ(std::abs(inner(lifted.rays[a], lifted.rays[b])), 0.0);
            }
        }
}

TEST(Lift, StandardBasisSourceMerges)
{
    // e1 e2 e3 lifted by one: the plus copy fills e1..e4, the minus copy only repeats it
    const std::vector<Ray> basis{Ray({1.0, 0.0, 0.0}), Ray({0.0, 1.0, 0.0}), Ray({0.0, 0.0, 1.0})};
    const auto lifted = lift(basis, 1);
    EXPECT_EQ(lifted.rays.size(), 4U);
    EXPECT_EQ(lifted.merges.size(), 4U);
    for (const auto & m : lifted.merges) {
        EXPECT_EQ(m.dropped.copy, Copy::minus);
        EXPECT_LT(m.kept, 4U);
    }
}

TEST(Lift, LiftingTwiceReachesTheTargetDimension)
{
    const auto once = lift(fixtures::tetrahedron(), 1);
    const auto twice = lift(once.rays, 2);
    EXPECT_EQ(twice.dimension, 6U);
    for (const auto & r : twice.rays)
        EXPECT_EQ(r.dimension(), 6U);
    EXPECT_EQ(twice.rays.size() + twice.merges.size(), 2 * (once.rays.size() + 2));
}

TEST(Lift, RangeAndBasisValidation)
{
    const auto tetra = fixtures::tetrahedron();
    EXPECT_THROW(lift(tetra, 0), RangeError);
    EXPECT_THROW(lift(tetra, 4), RangeError);
    EXPECT_THROW(lift(std::vector<Ray>{}, 1), InputError);

    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NO_THROW(lift(tetra, 2, std::vector<CVector>{{s, s}, {s, -s}}));
    EXPECT_THROW(lift(tetra, 2, std::vector<CVector>{{s, s}, {s, s}}), InputError);
    EXPECT_THROW(lift(tetra, 2, std::vector<CVector>{{1.0, 0.0}}), InputError);
    EXPECT_THROW(lift(tetra, 2, std::vector<CVector>{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}), DimensionError);
}

TEST(Lift, CompletedTetrahedronProofGives82Rays)
{
    const auto proof = assemble(fixtures::tetrahedron(), 1);
    const auto all = proof.all_rays();
    ASSERT_EQ(all.size(), 40U);
    const auto lifted = lift(all, 1);
    // 2 (40 + 1) slots; plus-copy rays like (0, y, z, 0) reappear in the minus copy
    EXPECT_EQ(lifted.rays.size() + lifted.merges.size(), 82U);
    EXPECT_EQ(lifted.merges.size(), 21U);
    for (const auto & m : lifted.merges) {
        EXPECT_EQ(m.dropped.copy, Copy::minus);
        EXPECT_EQ(lifted.provenance[m.kept].copy, Copy::plus);
    }
    std::size_t plus = 0;
    for (const auto & p : lifted.provenance)
        plus += p.copy == Copy::plus;
    EXPECT_EQ(plus, 41U);
    for (std::size_t a = 0; a < lifted.rays.size(); ++a)
        for (std::size_t b = 0; b < lifted.rays.size(); ++b)
            if (lifted.provenance[a].copy == Copy::plus && lifted.provenance[b].copy == Copy::minus) {
                EXPECT_FALSE(same_ray(lifted.rays[a], lifted.rays[b]));
            }
}

TEST(Lift, SpectrumSummary)
{
    const auto lifted = lift(fixtures::tetrahedron(), 1);
    const auto s = lifted_spectrum_check(lifted);
    ASSERT_EQ(s.eigenvalues.size(), 4U);
    double trace = 0.0;
    for (double e : s.eigenvalues)
        trace += e;
    EXPECT_NEAR(trace, 10.0, 1e-9);
    const auto ref = oracles::projector_sum_eigenvalues(lifted.rays);
    EXPECT_NEAR(s.lambda_min, ref.front(), 1e-9);
    EXPECT_NEAR(s.lambda_max, ref.back(), 1e-9);
    EXPECT_EQ(s.exceeds_clique, s.lambda_min > static_cast<double>(s.clique_number) + 1e-9);
}
