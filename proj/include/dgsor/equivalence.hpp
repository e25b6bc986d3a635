#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "dgsor/classical.hpp"
#include "dgsor/dense.hpp"
#include "dgsor/linalg.hpp"
#include "dgsor/schemes.hpp"

namespace dgsor {

/// h = 2w / (2 - w). Throws OutOfRange unless 0 < omega < 2.
double omega_to_h(double omega);
/// w = 2h / (2 + h). Throws OutOfRange unless h > 0 (and finite).
double h_to_omega(double h);

enum class EquivalencePair {
    ItohAbeSor,        // DgItohAbe (P = D^-1) vs SOR
    SymmetricSsor,     // DgSymmetric (P = D^-1) vs SSOR
    BlockItohAbeBlockSor, // DgBlock (P = D_b^-1) vs block SOR
};

std::string_view to_string(EquivalencePair pair) noexcept;

struct EquivalenceTolerances {
    double matrix = 1e-11;
    double vector = 1e-11;
    double sequence = 1e-9;
};

struct EquivalenceReport {
    double omega = 0.0;
    double h = 0.0;
    /// ||G_dg - G_classical||_max
    double matrix_gap = 0.0;
    /// ||c_dg - c_classical||_inf
    double vector_gap = 0.0;
    /// max_{k <= K} ||x_dg^(k) - x_classical^(k)||_inf
    double sequence_gap = 0.0;
    double matrix_scale = 1.0;   // 1 + ||G_classical||_max
    double vector_scale = 1.0;   // 1 + ||c_classical||_inf
    double sequence_scale = 1.0; // 1 + max_k ||x_classical^(k)||_inf
    std::size_t iterations = 0;
    bool passed = false;
};

/// Builds both sides with h = omega_to_h(omega), compares the affine maps
/// and K iterates from x0. `blocks` is required for the block pair.
EquivalenceReport check_equivalence(EquivalencePair pair, const SpdSystem& system, double omega,
                                    std::span<const double> x0, std::size_t iterations = 200,
                                    const BlockSplitting* blocks = nullptr,
                                    const EquivalenceTolerances& tol = {});

/// I - P A, the iteration matrix of explicit Euler with unit step.
DenseMatrix euler_connection_matrix(const SpdSystem& system, const Preconditioner& p);

} // namespace dgsor
