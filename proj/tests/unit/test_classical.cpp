#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dgsor/classical.hpp"
#include "dgsor/error.hpp"
#include "dgsor/problems.hpp"
#include "oracles.hpp"

using namespace dgsor;
namespace t = dgsor::testing;

namespace {

SpdSystem small_system() { return SpdSystem(DenseMatrix{{2.0, 1.0}, {1.0, 2.0}}, Vector{3.0, 3.0}); }

// Textbook SOR matrix built independently with Eigen.
Eigen::MatrixXd eigen_sor_matrix(const DenseMatrix& a, double omega) {
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n), l = d, u = d;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = a(i, j);
            (i == j ? d : i > j ? l : u)(i, j) = v;
        }
    const Eigen::MatrixXd m = d + omega * l;
    return m.partialPivLu().solve((1.0 - omega) * d - omega * u);
}

} // namespace

TEST(Sweep, GaussSeidelTwoByTwo) {
    const Vector x = classical_sweep(ClassicalSpec::gauss_seidel(), small_system(), Vector{0.0, 0.0}.span());
    EXPECT_DOUBLE_EQ(x[0], 1.5);
    EXPECT_DOUBLE_EQ(x[1], 0.75);
}

TEST(Sweep, SsorTwoByTwo) {
    // Forward sweep gives (1.5, 0.75); backward: x_2 = (3 - 1.5)/2, x_1 = (3 - 0.75)/2.
    const Vector x = classical_sweep(ClassicalSpec::ssor(1.0), small_system(), Vector{0.0, 0.0}.span());
    EXPECT_DOUBLE_EQ(x[0], 1.125);
    EXPECT_DOUBLE_EQ(x[1], 0.75);
    const AffineMap map = classical_iteration_matrix(ClassicalSpec::ssor(1.0), small_system());
    EXPECT_NEAR(map.c[0], 1.125, 1e-15);
    EXPECT_NEAR(map.c[1], 0.75, 1e-15);
}

TEST(IterationMatrix, ScalarCase) {
    const SpdSystem s(DenseMatrix{{4.0}}, Vector{1.0});
    for (double omega : {0.3, 1.0, 1.7}) {
        const AffineMap map = classical_iteration_matrix(ClassicalSpec::sor(omega), s);
        EXPECT_NEAR(map.g(0, 0), 1.0 - omega, 1e-15);
        EXPECT_NEAR(map.c[0], omega / 4.0, 1e-15);
    }
}

TEST(IterationMatrix, GaussSeidelTwoByTwo) {
    const AffineMap map = classical_iteration_matrix(ClassicalSpec::gauss_seidel(), small_system());
    EXPECT_NEAR(map.g(0, 1), -0.5, 1e-15);
    EXPECT_NEAR(map.g(1, 1), 0.25, 1e-15);
    EXPECT_NEAR(map.g(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(map.g(1, 0), 0.0, 1e-15);
}

TEST(IterationMatrix, MatchesIndependentConstruction) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SpdSystem s = t::random_system(1 + seed, 300 + seed);
        for (double omega : {0.5, 1.0, 1.5, 1.9}) {
            const DenseMatrix g = classical_iteration_matrix(ClassicalSpec::sor(omega), s).g;
            const Eigen::MatrixXd ref = eigen_sor_matrix(s.a(), omega);
            double gap = 0.0;
            for (std::size_t i = 0; i < s.n(); ++i)
                for (std::size_t j = 0; j < s.n(); ++j)
                    gap = std::max(gap, std::abs(g(i, j) - ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
            EXPECT_LE(gap, 1e-12);
        }
    }
}

TEST(IterationMatrix, AgreesWithSweep) {
    problems::Rng rng(5);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const std::size_t n = 1 + seed;
        const SpdSystem s = t::random_system(n, 400 + seed);
        const auto bounds = problems::random_boundaries(n, rng.index(1, n), rng);
        for (double omega : {0.4, 1.0, 1.8}) {
            for (const ClassicalSpec& spec : {ClassicalSpec::sor(omega), ClassicalSpec::ssor(omega),
                                              ClassicalSpec::block_sor(block_split(s, bounds), omega)}) {
                const Vector x = problems::random_vector(n, rng);
                const Vector swept = classical_sweep(spec, s, x.span());
                const Vector mapped = classical_iteration_matrix(spec, s).apply(x.span());
                EXPECT_LE(max_abs_diff(swept.span(), mapped.span()), 1e-11 * (1.0 + norm_inf(mapped.span())));
            }
        }
    }
}

TEST(BlockSor, SingletonsReduceToPointSor) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 2 + seed;
        const SpdSystem s = t::random_system(n, 500 + seed);
        const auto bounds = problems::singleton_boundaries(n);
        const AffineMap block = classical_iteration_matrix(ClassicalSpec::block_sor(block_split(s, bounds), 1.3), s);
        const AffineMap point = classical_iteration_matrix(ClassicalSpec::sor(1.3), s);
        EXPECT_LE(max_abs_diff(block.g, point.g), 1e-13);
        EXPECT_LE(max_abs_diff(block.c.span(), point.c.span()), 1e-13);
    }
}

TEST(ConvergenceWindow, InsideAndOutside) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SpdSystem s = t::random_system(2 + seed, 600 + seed);
        for (double omega : {0.5, 1.0, 1.5, 1.9}) {
            const ClassicalSpec spec = ClassicalSpec::sor(omega);
            EXPECT_TRUE(spec.in_convergence_window());
            EXPECT_LT(t::eigen_spectral_radius(classical_iteration_matrix(spec, s).g), 1.0);
        }
        for (double omega : {2.0, 2.5}) {
            const ClassicalSpec spec = ClassicalSpec::sor(omega);
            EXPECT_FALSE(spec.in_convergence_window());
            EXPECT_GE(spectral_radius(classical_iteration_matrix(spec, s).g), 1.0 - 1e-9);
        }
    }
}

TEST(Run, GaussSeidelConverges) {
    const DenseMatrix a = problems::laplacian_2d(4);
    const SpdSystem s(a, problems::ones_solution_rhs(a));
    const IterationTrace trace = classical_run(ClassicalSpec::gauss_seidel(), s, Vector(16, 0.0).span());
    EXPECT_TRUE(trace.converged);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(trace.final_iterate()[i], 1.0, 1e-8);
}

TEST(Spec, BlockSorNeedsPartition) {
    ClassicalSpec spec = ClassicalSpec::sor(1.0);
    spec.method = ClassicalMethod::BlockSor;
    try {
        classical_sweep(spec, small_system(), Vector{0.0, 0.0}.span());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidSpec);
    }
}
