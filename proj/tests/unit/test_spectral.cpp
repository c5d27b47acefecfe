#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ldabcd/spectral.hpp"
#include "oracles.hpp"
#include "test_graphs.hpp"

using namespace ldabcd;
using testing_support::graph_from;
using testing_support::to_dense;

TEST(Oracle, JacobiMatchesConstructedSpectrum) {
    std::mt19937_64 rng(1);
    const std::vector<double> eigs{0.1, 0.7, 1.3, 1.9, 2.0};
    const auto ev = oracle::jacobi_eigenvalues(oracle::with_spectrum(eigs, rng));
    for (std::size_t i = 0; i < eigs.size(); ++i) EXPECT_NEAR(ev[i], eigs[i], 1e-10);
}

TEST(Oracle, BruteForceTwoComponentsIsZero) {
    EXPECT_EQ(oracle::brute_force_graph_conductance(testing_support::two_cliques(3, 4, 0.0)), 0.0);
}

TEST(Oracle, BruteForceTriangle) {
    // every cut of a uniform triangle isolates one vertex: A(S) = 0 on the
    // singleton side, so no cut has a nonzero denominator
    EXPECT_TRUE(std::isinf(oracle::brute_force_graph_conductance(testing_support::uniform_weights(3))));
    // with four vertices the balanced cut is the only finite one: 4 / 2
    EXPECT_DOUBLE_EQ(oracle::brute_force_graph_conductance(testing_support::uniform_weights(4)), 2.0);
}

TEST(SubsetConductance, ZeroCrossWeights) {
    const auto g = graph_from(testing_support::two_cliques(3, 3, 0.0));
    EXPECT_EQ(subset_conductance(g, std::vector<std::size_t>{0, 1, 2}), 0.0);
}

TEST(SubsetConductance, OrderedPairConvention) {
    const auto g = graph_from(testing_support::uniform_weights(4));
    EXPECT_DOUBLE_EQ(subset_conductance(g, std::vector<std::size_t>{0, 1}), 2.0);
}

TEST(SubsetConductance, SingletonIsDegenerate) {
    const auto g = graph_from(testing_support::uniform_weights(4));
    EXPECT_THROW(subset_conductance(g, std::vector<std::size_t>{0}), DegenerateCut);
}

TEST(SubsetConductance, BadSubsetsThrow) {
    const auto g = graph_from(testing_support::uniform_weights(4));
    EXPECT_THROW(subset_conductance(g, std::vector<std::size_t>{}), ContractViolation);
    EXPECT_THROW(subset_conductance(g, std::vector<std::size_t>{0, 1, 2, 3}), ContractViolation);
    EXPECT_THROW(subset_conductance(g, std::vector<std::size_t>{0, 0}), ContractViolation);
    EXPECT_THROW(subset_conductance(g, std::vector<std::size_t>{9}), ContractViolation);
}

TEST(SubsetConductance, ComplementSymmetricAndMatchesOracle) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        const auto w = testing_support::random_weights(9, rng);
        const auto g = graph_from(w);
        std::vector<std::size_t> s, c;
        std::vector<char> in(9);
        for (std::size_t i = 0; i < 9; ++i) {
            in[i] = (rng() & 1u) != 0;
            (in[i] ? s : c).push_back(i);
        }
        if (s.size() < 2 || c.size() < 2) continue;
        EXPECT_EQ(subset_conductance(g, s), subset_conductance(g, c));
        EXPECT_NEAR(subset_conductance(g, s), oracle::conductance(w, in), 1e-12);
    }
}

TEST(PowerMethod, IterationCount) {
    EXPECT_EQ(power_iterations(10, 0.5), static_cast<std::size_t>(std::ceil(std::log(20.0) / 0.5)));
    EXPECT_THROW(power_iterations(10, 0.0), ContractViolation);
}

TEST(PowerMethod, IdentityTopIsOne) {
    std::mt19937_64 rng(3);
    EXPECT_NEAR(power_method_top(DenseMatrix::identity(5), 1e-3, rng).value, 1.0, 1e-12);
}

TEST(PowerMethod, TwoByTwo) {
    std::mt19937_64 rng(4);
    DenseMatrix m(2, 2);
    m(0, 0) = m(1, 1) = 2.0;
    m(0, 1) = m(1, 0) = 1.0;
    EXPECT_NEAR(power_method_top(m, 1e-3, rng).value, 3.0, 1e-2);
}

TEST(PowerMethod, DiagonalTopVector) {
    std::mt19937_64 rng(5);
    DenseMatrix m(3, 3);
    m(0, 0) = 5.0;
    m(1, 1) = m(2, 2) = 1.0;
    const auto top = power_method_top(m, 1e-3, rng);
    EXPECT_NEAR(top.value, 5.0, 1e-2);
    EXPECT_NEAR(std::abs(top.vector[0]), 1.0, 1e-6);
}

TEST(PowerMethod, SecondOfTwiceIdentity) {
    std::mt19937_64 rng(6);
    DenseMatrix m(2, 2);
    m(0, 0) = m(1, 1) = 2.0;
    const auto top = power_method_top(m, 1e-3, rng);
    EXPECT_NEAR(power_method_second(m, top.vector, 1e-3, rng), 1.0, 1e-12);
}

TEST(PowerMethod, SecondOfRotatedSpectrum) {
    std::mt19937_64 rng(7);
    const auto m = to_dense(oracle::with_spectrum({2.0, 1.5, 0.2}, rng));
    const double eps = 1e-3;
    const auto top = power_method_top(m, eps, rng);
    EXPECT_NEAR(power_method_second(m, top.vector, eps, rng), 0.5, 4 * eps + 1e-3);
}

TEST(PowerMethod, AgreesWithJacobiOnRandomPsd) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 10);
        std::vector<double> eigs(n);
        for (auto& e : eigs) e = u(rng);
        std::sort(eigs.begin(), eigs.end());
        eigs[n - 2] = std::min(eigs[n - 2], 1.6);
        eigs[n - 1] = 2.0;
        for (std::size_t i = 0; i + 2 < n; ++i) eigs[i] = std::min(eigs[i], eigs[n - 2] - 0.1);
        const auto a = oracle::with_spectrum(eigs, rng);
        const auto exact = oracle::jacobi_eigenvalues(a);
        const auto m = to_dense(a);
        const auto top = power_method_top(m, 1e-3, rng);
        EXPECT_NEAR(top.value, exact[n - 1], 1e-2);
        EXPECT_NEAR(power_method_second(m, top.vector, 1e-3, rng) + 1.0, exact[n - 2], 1e-2);
    }
}

TEST(ConductanceBounds, UniformCompleteGraph) {
    std::mt19937_64 rng(9);
    const auto g = graph_from(testing_support::uniform_weights(4));
    for (auto solver : {EigenSolver::Power, EigenSolver::Dense}) {
        const auto b = conductance_bounds(g, SpectralOptions{1e-3, 3, solver}, rng);
        EXPECT_NEAR(b.lambda2, -1.0 / 3.0, 1e-2);
        EXPECT_NEAR(b.lower, 4.0 / 3.0, 1e-2);
        EXPECT_NEAR(b.upper, std::sqrt(32.0 / 3.0), 2e-2);
    }
}

TEST(ConductanceBounds, NearlyDisconnectedHasTinyLowerBound) {
    std::mt19937_64 rng(10);
    const auto g = graph_from(testing_support::two_cliques(5, 5, 1e-6));
    EXPECT_LT(conductance_bounds(g, SpectralOptions{1e-3, 3, EigenSolver::Dense}, rng).lower, 1e-4);
    EXPECT_LT(conductance_bounds(g, SpectralOptions{1e-3, 3, EigenSolver::Power}, rng).lower, 1e-2);
}

TEST(ConductanceBounds, ConnectedGraphHasLambda2BelowOne) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        const auto w = testing_support::random_weights(8, rng, 0.05, 1.0);
        EXPECT_LT(oracle::second_eigenvalue(w), 1.0);
        const auto b = conductance_bounds(graph_from(w), 1e-3, rng);
        EXPECT_LT(b.lambda2, 1.0);
        EXPECT_LE(b.lower, b.upper);
    }
}

TEST(Oracle, HalfGapLowerBoundHolds) {
    // internal mass <= volume, so the volume-normalized bound carries over
    std::mt19937_64 rng(16);
    for (int t = 0; t < 200; ++t) {
        const auto w = testing_support::random_weights(4 + static_cast<std::size_t>(t % 9), rng);
        const double l2 = oracle::second_eigenvalue(w);
        EXPECT_GE(oracle::brute_force_graph_conductance(w), 0.5 * (1.0 - l2) - 1e-12);
    }
}

TEST(ConductanceBounds, DenseSolverMatchesJacobi) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        const auto w = testing_support::random_weights(10, rng);
        const auto b = conductance_bounds(graph_from(w), SpectralOptions{1e-3, 1, EigenSolver::Dense}, rng);
        EXPECT_NEAR(b.lambda2, oracle::second_eigenvalue(w), 1e-10);
    }
}

TEST(ConductanceBounds, DeterministicGivenSeed) {
    std::mt19937_64 seed_rng(13);
    const auto g = graph_from(testing_support::random_weights(12, seed_rng));
    std::mt19937_64 a(99), b(99);
    const auto x = conductance_bounds(g, 1e-2, a);
    const auto y = conductance_bounds(g, 1e-2, b);
    EXPECT_EQ(x.lambda2, y.lambda2);
}

TEST(ConductanceBounds, RestrictedToActiveVertices) {
    std::mt19937_64 rng(14);
    const auto w = testing_support::random_weights(6, rng, 0.1, 1.0);
    auto g = mask_visited(graph_from(w), std::vector<std::size_t>{0});
    oracle::Matrix sub(5, std::vector<double>(5));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) sub[i][j] = w[i + 1][j + 1];
    const auto b = conductance_bounds(g, SpectralOptions{1e-3, 1, EigenSolver::Dense}, rng);
    EXPECT_NEAR(b.lambda2, oracle::second_eigenvalue(sub), 1e-10);
}

TEST(ConductanceBounds, ExhaustedGraphThrows) {
    std::mt19937_64 rng(15);
    auto g = graph_from(testing_support::uniform_weights(3));
    g.active = {1, 0, 0};
    EXPECT_THROW(conductance_bounds(g, 1e-3, rng), GraphExhausted);
}

TEST(EigenSolverName, RoundTrip) {
    EXPECT_EQ(eigen_solver_from_string(to_string(EigenSolver::Dense)), EigenSolver::Dense);
    EXPECT_EQ(eigen_solver_from_string(to_string(EigenSolver::Power)), EigenSolver::Power);
    EXPECT_THROW(eigen_solver_from_string("qr"), ConfigError);
}
