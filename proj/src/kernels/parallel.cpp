#include <cmath>
#include <cstdint>
#include <vector>

#include <omp.h>

#include "dgsor/kernels.hpp"

namespace dgsor::kernels::parallel {

namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::int64_t kMinWork = 1 << 14;

} // namespace

void matvec(const DenseMatrix& m, std::span<const double> x, std::span<double> y) {
    const auto rows = static_cast<std::int64_t>(m.rows());
    const auto cols = static_cast<std::int64_t>(m.cols());
    const double* a = m.data();
    const double* xv = x.data();
    double* yv = y.data();
#pragma omp parallel for schedule(static) if (rows * cols >= kMinWork)
    for (std::int64_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::int64_t j = 0; j < cols; ++j) s += a[i * cols + j] * xv[j];
        yv[i] = s;
    }
}

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    const auto n = static_cast<std::int64_t>(a.rows());
    const auto inner = static_cast<std::int64_t>(a.cols());
    const auto m = static_cast<std::int64_t>(b.cols());
    const double* av = a.data();
    const double* bv = b.data();
    double* cv = c.data();
#pragma omp parallel for schedule(static) if (n * inner * m >= kMinWork)
    for (std::int64_t i = 0; i < n; ++i) {
        double* ci = cv + i * m;
        for (std::int64_t j = 0; j < m; ++j) ci[j] = 0.0;
        for (std::int64_t k = 0; k < inner; ++k) {
            const double aik = av[i * inner + k];
            const double* bk = bv + k * m;
            for (std::int64_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
        }
    }
}

double frobenius_norm(const DenseMatrix& m) {
    const auto rows = static_cast<std::int64_t>(m.rows());
    const auto cols = static_cast<std::int64_t>(m.cols());
    std::vector<double> partial(static_cast<std::size_t>(rows));
    const double* a = m.data();
#pragma omp parallel for schedule(static) if (rows * cols >= kMinWork)
    for (std::int64_t i = 0; i < rows; ++i) {
        double row = 0.0;
        for (std::int64_t j = 0; j < cols; ++j) row += a[i * cols + j] * a[i * cols + j];
        partial[static_cast<std::size_t>(i)] = row;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return std::sqrt(total);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const auto n = static_cast<std::int64_t>(x.size());
    const double* xv = x.data();
    double* yv = y.data();
#pragma omp parallel for schedule(static) if (n >= kMinWork)
    for (std::int64_t i = 0; i < n; ++i) yv[i] += alpha * xv[i];
}

int max_threads() noexcept { return omp_get_max_threads(); }

} // namespace dgsor::kernels::parallel
