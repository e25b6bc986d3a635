#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "dgsor/dense.hpp"
#include "dgsor/linalg.hpp"

namespace dgsor::problems {

/// Portable uniform draws on top of mt19937_64 so generated problems are
/// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::size_t index(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// tridiag(-1, 2, -1), n x n.
DenseMatrix laplacian_1d(std::size_t n);
/// 5-point Laplacian on an m x m grid, m^2 unknowns.
DenseMatrix laplacian_2d(std::size_t m);
/// B^T B / n + I with B uniform on [-1, 1]^(n x n); eigenvalues lie in
/// [1, 1 + n] and typically well inside [1, 5].
DenseMatrix random_spd(std::size_t n, std::uint64_t seed);

Vector random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0);
Vector random_vector(std::size_t n, Rng& rng, double lo = -1.0, double hi = 1.0);

/// b = A * 1 so that the exact solution is the all-ones vector.
Vector ones_solution_rhs(const DenseMatrix& a);

/// Random strictly increasing block boundaries in (0, n) producing
/// `blocks` contiguous blocks (clamped to [1, n]).
std::vector<std::size_t> random_boundaries(std::size_t n, std::size_t blocks, Rng& rng);
/// Every index: singleton blocks.
std::vector<std::size_t> singleton_boundaries(std::size_t n);

} // namespace dgsor::problems
