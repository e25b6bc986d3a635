#include "dgsor/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgsor/error.hpp"
#include "dgsor/kernels.hpp"

namespace dgsor {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require_same_size(data_.size(), rows * cols, "DenseMatrix entries");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require_same_size(r.size(), cols_, "DenseMatrix row length");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector DenseMatrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> values) {
    require_same_size(values.size(), rows_, "set_column");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Vector operator+(const Vector& a, const Vector& b) {
    require_same_size(a.size(), b.size(), "vector +");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    require_same_size(a.size(), b.size(), "vector -");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator*(double s, const Vector& v) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "matrix +");
    DenseMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.entries().size(); ++k) r.data()[k] = a.data()[k] + b.data()[k];
    return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "matrix -");
    DenseMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.entries().size(); ++k) r.data()[k] = a.data()[k] - b.data()[k];
    return r;
}

DenseMatrix operator*(double s, const DenseMatrix& m) {
    DenseMatrix r(m.rows(), m.cols());
    for (std::size_t k = 0; k < m.entries().size(); ++k) r.data()[k] = s * m.data()[k];
    return r;
}

Vector operator*(const DenseMatrix& m, const Vector& v) {
    require_same_size(m.cols(), v.size(), "matvec");
    Vector y(m.rows());
    kernels::parallel::matvec(m, v.span(), y.span());
    return y;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_size(a.cols(), b.rows(), "matmul");
    DenseMatrix c(a.rows(), b.cols());
    kernels::parallel::matmul(a, b, c);
    return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double norm_max(const DenseMatrix& m) { return norm_inf(std::span<const double>(m.entries())); }

double norm_frobenius(const DenseMatrix& m) { return kernels::parallel::frobenius_norm(m); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    return max_abs_diff(std::span<const double>(a.entries()), std::span<const double>(b.entries()));
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace dgsor
