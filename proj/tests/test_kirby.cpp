#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace lefcalc;

namespace {

KirbyData unknot(long long framing) { return {0, Matrix(1, 0), Matrix{{framing}}}; }
KirbyData annulus_cancellation() { return {1, Matrix{{1}}, Matrix{{-1}}}; }

KirbyData random_kirby(std::mt19937& rng) {
    const std::size_t n1 = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    const Matrix A = oracle::random_matrix(rng, k, n1, 2);
    Matrix Q = oracle::random_matrix(rng, k, k, 3);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) Q(i, j) = Q(j, i);
    return {n1, A, Q};
}

}  // namespace

TEST(KirbyData, ValidatesShapes) {
    EXPECT_THROW(KirbyData(0, Matrix(1, 0), Matrix{{0, 1}, {2, 0}}), InputError);
    EXPECT_THROW(KirbyData(1, Matrix(1, 0), Matrix{{0}}), InputError);
    EXPECT_THROW(KirbyData(0, Matrix(2, 0), Matrix{{0}}), InputError);
}

TEST(EulerCharacteristic, Examples) {
    EXPECT_EQ(euler_characteristic(KirbyData::ball()), 1);
    EXPECT_EQ(euler_characteristic(annulus_cancellation()), 1);
    EXPECT_EQ(euler_characteristic(KirbyData(0, Matrix(0, 0), Matrix(0, 0), 0, 1)), 2);
}

TEST(Signature, Examples) {
    EXPECT_EQ(signature(KirbyData::ball()), 0);
    EXPECT_EQ(signature(unknot(-1)), -1);
    EXPECT_EQ(signature(annulus_cancellation()), 0);
    EXPECT_EQ(signature(KirbyData(0, Matrix(2, 0), Matrix{{0, 1}, {1, 0}})), 0);
    EXPECT_EQ(signature(KirbyData(0, Matrix(2, 0), Matrix{{1, 0}, {0, 1}})), 2);
}

TEST(Signature, MatchesEigenvalueOracle) {
    std::mt19937 rng(12);
    for (int i = 0; i < 200; ++i) {
        const KirbyData k = random_kirby(rng);
        EXPECT_EQ(signature(k), oracle::signature(k));
    }
}

TEST(SignatureOf, DegenerateAndIndefinite) {
    EXPECT_EQ(signature_of(Matrix{{0, 0}, {0, 0}}), 0);
    EXPECT_EQ(signature_of(Matrix{{0, 2}, {2, 0}}), 0);
    EXPECT_EQ(signature_of(Matrix{{-2, 1}, {1, -2}}), -2);
}

TEST(H1Total, MatchesOracle) {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        const KirbyData k = random_kirby(rng);
        const auto [free_rank, torsion] = oracle::h1_total(k);
        EXPECT_EQ(h1_total(k).group().free_rank, free_rank);
        EXPECT_EQ(h1_total(k).group().torsion, torsion);
    }
}

TEST(H1Boundary, SphereHasNoCocores) {
    const BoundaryHomology h = h1_boundary(KirbyData::ball());
    EXPECT_TRUE(h.group().trivial());
    EXPECT_TRUE(h.cocores.empty());
}

TEST(H1Boundary, ZeroFramedUnknotMeridianGenerates) {
    const BoundaryHomology h = h1_boundary(unknot(0));
    EXPECT_EQ(h.group(), (AbelianGroup{1, {}}));
    ASSERT_EQ(h.cocores.size(), 1u);
    ASSERT_EQ(h.cocores[0].vector.size(), 1u);
    EXPECT_TRUE(h.cocores[0].vector[0] == 1 || h.cocores[0].vector[0] == -1);
}

TEST(H1Boundary, AnnulusCancellationIsSphere) {
    EXPECT_TRUE(h1_boundary(annulus_cancellation()).group().trivial());
}

TEST(H1Boundary, LensSpace) {
    const BoundaryHomology h = h1_boundary(unknot(5));
    EXPECT_EQ(h.group(), (AbelianGroup{0, {Int(5)}}));
    EXPECT_EQ(h.combine(make_vector({5})), IntVector{0});
}

TEST(H1Boundary, OrderMatchesDeterminant) {
    std::mt19937 rng(14);
    for (int i = 0; i < 200; ++i) {
        const KirbyData k = random_kirby(rng);
        const Matrix P = boundary_presentation_matrix(k);
        const AbelianGroup g = h1_boundary(k).group();
        const auto [free_rank, torsion] = oracle::cokernel(oracle::grid(P), P.rows());
        EXPECT_EQ(g.free_rank, free_rank);
        EXPECT_EQ(g.torsion, torsion);
        const Int d = oracle::det(oracle::grid(P));
        if (d != 0) {
            Int order = 1;
            for (const auto& t : g.torsion) order *= t;
            EXPECT_EQ(order, d < 0 ? Int(-d) : d);
        }
    }
}

TEST(CSquared, Examples) {
    EXPECT_EQ(c_squared(KirbyData::ball(), {}), 0);
    EXPECT_EQ(c_squared(unknot(-1), make_vector({0})), 0);
    EXPECT_EQ(c_squared(unknot(-1), make_vector({2})), -4);
    EXPECT_THROW(c_squared(unknot(0), make_vector({1})), NotSolvable);
    EXPECT_EQ(c_squared(unknot(0), make_vector({0})), 0);
}

TEST(CSquared, MatchesRationalOracle) {
    std::mt19937 rng(15);
    int compared = 0;
    for (int i = 0; i < 400; ++i) {
        const KirbyData k = random_kirby(rng);
        IntVector r(k.two_handles());
        for (auto& x : r) x = std::uniform_int_distribution<int>(-3, 3)(rng);
        const BoundaryHomology h = h1_boundary(k);
        if (!is_zero(h.combine(r))) {
            EXPECT_THROW(c_squared(k, r), NotSolvable);
            continue;
        }
        const auto expected = oracle::c_squared(k, r);
        if (!expected) continue;
        EXPECT_EQ(c_squared(k, r), *expected);
        ++compared;
    }
    EXPECT_GT(compared, 50);
}
