#pragma once

#include <cstddef>
#include <span>

#include "dgsor/dense.hpp"
#include "dgsor/linalg.hpp"

namespace dgsor {

/// f(x) = 1/2 x^T A x - x^T b. Throws DimensionMismatch.
double energy(const SpdSystem& system, std::span<const double> x);

/// grad f(x) = A x - b. Throws DimensionMismatch.
Vector gradient(const SpdSystem& system, std::span<const double> x);

/// Energy change caused by updating component i (0-based) in one sweep of
/// the Jacobi-preconditioned Itoh-Abe scheme with stepsize h:
///
///   -(1/a_ii) * h / (1 + h/2)^2 * r_i^2,
///   r_i = sum_{j<i} a_ij x_new_j + a_ii x_old_i + sum_{j>i} a_ij x_old_j - b_i.
///
/// Only entries j < i of `x_new_prefix` are read. Throws InvalidStepsize for
/// h <= 0, DimensionMismatch or OutOfRange for bad shapes or index.
double component_decrement(const SpdSystem& system, std::span<const double> x_new_prefix,
                           std::span<const double> x_old, std::size_t i, double h);

} // namespace dgsor
