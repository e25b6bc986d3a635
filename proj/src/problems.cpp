#include "dgsor/problems.hpp"

#include <algorithm>

#include "dgsor/error.hpp"

namespace dgsor::problems {

DenseMatrix laplacian_1d(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::OutOfRange, "laplacian_1d needs n >= 1");
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = 2.0;
        if (i > 0) a(i, i - 1) = -1.0;
        if (i + 1 < n) a(i, i + 1) = -1.0;
    }
    return a;
}

DenseMatrix laplacian_2d(std::size_t m) {
    if (m == 0) throw Error(ErrorCode::OutOfRange, "laplacian_2d needs m >= 1");
    const std::size_t n = m * m;
    DenseMatrix a(n, n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t i = r * m + c;
            a(i, i) = 4.0;
            if (c > 0) a(i, i - 1) = -1.0;
            if (c + 1 < m) a(i, i + 1) = -1.0;
            if (r > 0) a(i, i - m) = -1.0;
            if (r + 1 < m) a(i, i + m) = -1.0;
        }
    }
    return a;
}

DenseMatrix random_spd(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorCode::OutOfRange, "random_spd needs n >= 1");
    Rng rng(seed);
    DenseMatrix b(n, n);
    for (std::size_t k = 0; k < n * n; ++k) b.data()[k] = rng.uniform(-1.0, 1.0);
    DenseMatrix a(n, n);
    const double scale = 1.0 / static_cast<double>(n);
    // Fill the lower triangle and mirror it so symmetry is exact.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += b(k, i) * b(k, j);
            a(i, j) = s * scale + (i == j ? 1.0 : 0.0);
            a(j, i) = a(i, j);
        }
    }
    return a;
}

Vector random_vector(std::size_t n, Rng& rng, double lo, double hi) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
    return v;
}

Vector random_vector(std::size_t n, std::uint64_t seed, double lo, double hi) {
    Rng rng(seed);
    return random_vector(n, rng, lo, hi);
}

Vector ones_solution_rhs(const DenseMatrix& a) { return a * Vector(a.cols(), 1.0); }

std::vector<std::size_t> random_boundaries(std::size_t n, std::size_t blocks, Rng& rng) {
    blocks = std::clamp<std::size_t>(blocks, 1, n);
    // Choose blocks-1 distinct cut points from {1, ..., n-1}.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i < n; ++i) candidates.push_back(i);
    for (std::size_t k = 0; k + 1 < blocks; ++k) {
        const std::size_t pick = rng.index(k, candidates.size() - 1);
        std::swap(candidates[k], candidates[pick]);
    }
    std::vector<std::size_t> cuts(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(blocks - 1));
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

std::vector<std::size_t> singleton_boundaries(std::size_t n) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 1; i < n; ++i) cuts.push_back(i);
    return cuts;
}

} // namespace dgsor::problems
