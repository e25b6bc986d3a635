#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dgsor/error.hpp"
#include "dgsor/linalg.hpp"
#include "dgsor/problems.hpp"
#include "oracles.hpp"

using namespace dgsor;
using dgsor::testing::eigen_solve;
using dgsor::testing::eigen_spectral_radius;
using dgsor::testing::random_system;

namespace {

const DenseMatrix kA2{{2.0, 1.0}, {1.0, 2.0}};

SpdSystem small_system() { return SpdSystem(kA2, Vector{3.0, 3.0}); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no dgsor::Error thrown";
    return ErrorCode::Io;
}

} // namespace

TEST(Split, TwoByTwo) {
    const Splitting s = split(small_system());
    EXPECT_EQ(s.d[0], 2.0);
    EXPECT_EQ(s.d[1], 2.0);
    EXPECT_EQ(s.l(1, 0), 1.0);
    EXPECT_EQ(s.l(0, 1), 0.0);
    EXPECT_EQ(s.u(0, 1), 1.0);
    EXPECT_EQ(s.u(1, 0), 0.0);
}

TEST(Split, ReconstructsExactly) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SpdSystem s = random_system(2 + seed % 15, seed);
        EXPECT_EQ(max_abs_diff(split(s).reconstruct(), s.a()), 0.0);
    }
}

TEST(BlockSplit, LaplacianOffDiagonalBlock) {
    const DenseMatrix a = problems::laplacian_1d(4);
    const SpdSystem s(a, Vector(4, 1.0));
    const std::vector<std::size_t> bounds{2};
    const BlockSplitting bs = block_split(s, bounds);
    ASSERT_EQ(bs.num_blocks(), 2u);
    EXPECT_EQ(bs.diagonal_block(0)(0, 0), 2.0);
    EXPECT_EQ(bs.diagonal_block(0)(0, 1), -1.0);
    // A_12 sits in the upper block part, rows 0-1, columns 2-3.
    EXPECT_EQ(bs.upper()(0, 2), 0.0);
    EXPECT_EQ(bs.upper()(0, 3), 0.0);
    EXPECT_EQ(bs.upper()(1, 2), -1.0);
    EXPECT_EQ(bs.upper()(1, 3), 0.0);
    EXPECT_EQ(bs.lower()(2, 1), -1.0);
    EXPECT_EQ(max_abs_diff(bs.reconstruct(), a), 0.0);
}

TEST(BlockSplit, ReconstructsForRandomPartitions) {
    problems::Rng rng(3);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = rng.index(1, 20);
        const SpdSystem s = random_system(n, seed);
        const auto bounds = problems::random_boundaries(n, rng.index(1, n), rng);
        const BlockSplitting bs = block_split(s, bounds);
        EXPECT_EQ(max_abs_diff(bs.reconstruct(), s.a()), 0.0);
        EXPECT_EQ(bs.offsets().back(), n);
        EXPECT_TRUE(bs.matches(s.a()));
    }
}

TEST(BlockSplit, RejectsBadBoundaries) {
    const SpdSystem s(problems::laplacian_1d(4), Vector(4, 1.0));
    for (const std::vector<std::size_t>& bad :
         {std::vector<std::size_t>{0}, {4}, {2, 2}, {3, 1}, {5}}) {
        EXPECT_EQ(code_of([&] { block_split(s, bad); }), ErrorCode::InvalidPartition);
    }
}

TEST(LuSolve, TwoByTwo) {
    const Vector x = lu_solve(kA2, Vector{3.0, 3.0}.span());
    EXPECT_NEAR(x[0], 1.0, 1e-15);
    EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(LuSolve, SingularMatrix) {
    const DenseMatrix m{{1.0, 1.0}, {1.0, 1.0}};
    EXPECT_EQ(code_of([&] { lu_solve(m, Vector{1.0, 2.0}.span()); }), ErrorCode::Singular);
}

TEST(LuSolve, NeedsPivoting) {
    const DenseMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    const Vector x = lu_solve(m, Vector{2.0, 5.0}.span());
    EXPECT_EQ(x[0], 5.0);
    EXPECT_EQ(x[1], 2.0);
}

TEST(LuSolve, ResidualIsSmallAgainstOracle) {
    problems::Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = rng.index(1, 25);
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0) + (i == j ? 3.0 : 0.0);
        const Vector b = problems::random_vector(n, rng);
        const Vector x = lu_solve(m, b.span());
        const Vector r = m * x - b;
        EXPECT_LE(norm_inf(r.span()), 1e-12 * (1.0 + norm_max(m) * norm_inf(x.span())));
        EXPECT_LE(max_abs_diff(x.span(), eigen_solve(m, b.span()).span()), 1e-12);
    }
}

TEST(SpdSystem, RejectsNonSymmetricAndIndefinite) {
    EXPECT_EQ(code_of([] { SpdSystem(DenseMatrix{{2.0, 1.0}, {0.0, 2.0}}, Vector{1.0, 1.0}); }),
              ErrorCode::NotSpd);
    EXPECT_EQ(code_of([] { SpdSystem(DenseMatrix{{1.0, 2.0}, {2.0, 1.0}}, Vector{1.0, 1.0}); }),
              ErrorCode::NotSpd);
    EXPECT_EQ(code_of([] { SpdSystem(kA2, Vector{1.0}); }), ErrorCode::DimensionMismatch);
}

TEST(SpdSystem, CachedSolutionSolvesSystem) {
    const SpdSystem s = small_system();
    EXPECT_NEAR(s.solution()[0], 1.0, 1e-15);
    EXPECT_NEAR(s.solution()[1], 1.0, 1e-15);
}

TEST(SpectralRadius, Examples) {
    EXPECT_NEAR(spectral_radius(DenseMatrix{{0.5, 0.0}, {0.0, -0.25}}), 0.5, 1e-6);
    EXPECT_NEAR(spectral_radius(DenseMatrix{{0.0, -0.5}, {0.0, 0.25}}), 0.25, 1e-6);
    EXPECT_EQ(spectral_radius(DenseMatrix(3, 3)), 0.0);
}

TEST(SpectralRadius, NonNormalAndRotation) {
    // Jordan-like block: norms are large but rho = 0.9.
    EXPECT_NEAR(spectral_radius(DenseMatrix{{0.9, 100.0}, {0.0, 0.9}}), 0.9, 1e-6);
    // Rotation by 90 degrees scaled by 0.7: complex pair of modulus 0.7.
    EXPECT_NEAR(spectral_radius(DenseMatrix{{0.0, -0.7}, {0.7, 0.0}}), 0.7, 1e-6);
}

TEST(SpectralRadius, LargeEntriesDoNotOverflow) {
    const double rho = spectral_radius(DenseMatrix{{1e200, 0.0}, {0.0, 3e200}});
    EXPECT_NEAR(rho / 3e200, 1.0, 1e-6);
}

TEST(SpectralRadius, AgreesWithEigensolver) {
    problems::Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = rng.index(1, 20);
        DenseMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
        const double expected = eigen_spectral_radius(g);
        EXPECT_NEAR(spectral_radius(g), expected, 1e-6 * (1.0 + expected)) << "trial " << trial;
    }
}

TEST(MatrixExponential, DiagonalAndNilpotent) {
    const DenseMatrix e = matrix_exponential(DenseMatrix{{1.0, 0.0}, {0.0, -2.0}});
    EXPECT_NEAR(e(0, 0), std::exp(1.0), 1e-14);
    EXPECT_NEAR(e(1, 1), std::exp(-2.0), 1e-15);
    const DenseMatrix n = matrix_exponential(DenseMatrix{{0.0, 3.0}, {0.0, 0.0}});
    EXPECT_NEAR(n(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(n(0, 1), 3.0, 1e-14);
}

TEST(ExactFlow, Examples) {
    const SpdSystem s = small_system();
    const Vector x0{0.0, 0.0};
    const Vector at0 = exact_flow(s, Preconditioner::identity(), x0.span(), 0.0);
    EXPECT_EQ(at0[0], 0.0);
    EXPECT_EQ(at0[1], 0.0);
    const Vector at50 = exact_flow(s, Preconditioner::identity(), x0.span(), 50.0);
    EXPECT_NEAR(at50[0], 1.0, 1e-10);
    EXPECT_NEAR(at50[1], 1.0, 1e-10);

    const SpdSystem scalar(DenseMatrix{{1.0}}, Vector{0.0});
    const Vector x1 = exact_flow(scalar, Preconditioner::identity(), Vector{1.0}.span(), 2.0);
    EXPECT_NEAR(x1[0], std::exp(-2.0), 1e-14);
}

TEST(ExactFlow, NegativeTimeRejected) {
    const SpdSystem s = small_system();
    EXPECT_EQ(code_of([&] { exact_flow(s, Preconditioner::identity(), Vector{0.0, 0.0}.span(), -1.0); }),
              ErrorCode::OutOfRange);
}

TEST(ExactFlow, SemigroupProperty) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SpdSystem s = random_system(2 + seed, seed);
        const Vector x0 = problems::random_vector(s.n(), seed + 100);
        for (const Preconditioner& p : {Preconditioner::identity(), Preconditioner::jacobi_inverse()}) {
            const Vector direct = exact_flow(s, p, x0.span(), 0.7);
            const Vector mid = exact_flow(s, p, x0.span(), 0.3);
            const Vector composed = exact_flow(s, p, mid.span(), 0.4);
            EXPECT_LE(max_abs_diff(direct.span(), composed.span()), 1e-9);
        }
    }
}

TEST(ExactFlow, EnergyDecreasesAlongFlow) {
    const SpdSystem s = random_system(6, 4);
    const Vector x0 = problems::random_vector(6, 44);
    double previous = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const Vector x = exact_flow(s, Preconditioner::jacobi_inverse(), x0.span(), 0.25 * k);
        const double f = dgsor::testing::eigen_energy(s, x.span());
        if (k > 0) {
            EXPECT_LE(f, previous + 1e-13);
        }
        previous = f;
    }
}

TEST(Preconditioner, BlockJacobiDenseIsBlockInverse) {
    const SpdSystem s = random_system(6, 9);
    const std::vector<std::size_t> bounds{2, 5};
    const Preconditioner p = Preconditioner::block_jacobi_inverse(block_split(s, bounds));
    const DenseMatrix pd = p.dense(s);
    const DenseMatrix prod = pd * block_split(s, bounds).block_diagonal();
    EXPECT_LE(max_abs_diff(prod, DenseMatrix::identity(6)), 1e-13);
}

TEST(Preconditioner, ExplicitMustBeSpd) {
    EXPECT_EQ(code_of([] { Preconditioner::explicit_matrix(DenseMatrix{{1.0, 0.0}, {0.0, -1.0}}); }),
              ErrorCode::NotSpd);
    const Preconditioner p = Preconditioner::explicit_matrix(DenseMatrix{{2.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    EXPECT_EQ(code_of([&] { p.check_compatible(small_system()); }), ErrorCode::DimensionMismatch);
}
