#include <cmath>

#include "dgsor/kernels.hpp"

namespace dgsor::kernels::serial {

void matvec(const DenseMatrix& m, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const double* a = m.data();
    for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += a[i * cols + j] * x[j];
        y[i] = s;
    }
}

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c) {
    const std::size_t n = a.rows();
    const std::size_t inner = a.cols();
    const std::size_t m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        double* ci = c.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) ci[j] = 0.0;
        for (std::size_t k = 0; k < inner; ++k) {
            const double aik = a(i, k);
            const double* bk = b.data() + k * m;
            for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
        }
    }
}

double frobenius_norm(const DenseMatrix& m) {
    double total = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (double v : m.row(i)) row += v * v;
        total += row;
    }
    return std::sqrt(total);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

} // namespace dgsor::kernels::serial
