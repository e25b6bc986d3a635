#pragma once

// Data-parallel dense kernels.
//
// Every kernel exists twice: a plain serial loop kept as the reference, and
// an OpenMP version used by the library. Both visit each output entry with
// the same summation order, so matvec and matmul agree bit for bit; the
// Frobenius norm reduces per-row partial sums in index order, which makes
// it independent of the thread count.

#include <span>

#include "dgsor/dense.hpp"

namespace dgsor::kernels {

namespace serial {

void matvec(const DenseMatrix& m, std::span<const double> x, std::span<double> y);
void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
double frobenius_norm(const DenseMatrix& m);
/// y <- y + alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

} // namespace serial

namespace parallel {

void matvec(const DenseMatrix& m, std::span<const double> x, std::span<double> y);
void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c);
double frobenius_norm(const DenseMatrix& m);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// Number of OpenMP threads a parallel region would use.
int max_threads() noexcept;

} // namespace parallel

} // namespace dgsor::kernels
