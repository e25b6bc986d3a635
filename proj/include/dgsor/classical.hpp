#pragma once

#include <optional>
#include <string_view>

#include "dgsor/dense.hpp"
#include "dgsor/linalg.hpp"
#include "dgsor/schemes.hpp"

namespace dgsor {

enum class ClassicalMethod { Sor, GaussSeidel, Ssor, BlockSor };

std::string_view to_string(ClassicalMethod method) noexcept;

/// Relaxation methods written in terms of omega. Values outside (0, 2) are
/// accepted for experiments and reported by in_convergence_window().
struct ClassicalSpec {
    ClassicalMethod method = ClassicalMethod::Sor;
    double omega = 1.0;
    std::optional<BlockSplitting> blocks;

    static ClassicalSpec sor(double omega) { return {ClassicalMethod::Sor, omega, std::nullopt}; }
    static ClassicalSpec gauss_seidel() { return {ClassicalMethod::GaussSeidel, 1.0, std::nullopt}; }
    static ClassicalSpec ssor(double omega) { return {ClassicalMethod::Ssor, omega, std::nullopt}; }
    static ClassicalSpec block_sor(BlockSplitting blocks, double omega) {
        return {ClassicalMethod::BlockSor, omega, std::move(blocks)};
    }

    /// Gauss-Seidel always relaxes with omega = 1.
    double effective_omega() const noexcept {
        return method == ClassicalMethod::GaussSeidel ? 1.0 : omega;
    }
    bool in_convergence_window() const noexcept {
        return effective_omega() > 0.0 && effective_omega() < 2.0;
    }

    /// Throws InvalidSpec (BlockSor without blocks, non-finite omega) or
    /// DimensionMismatch.
    void validate(const SpdSystem& system) const;
};

/// G_SOR = (D + wL)^-1 [(1-w)D - wU], c_SOR = w (D + wL)^-1 b, and the
/// backward/forward composition for SSOR, via triangular solves.
AffineMap classical_iteration_matrix(const ClassicalSpec& spec, const SpdSystem& system);

/// One in-place sweep (forward, then backward for SSOR).
Vector classical_sweep(const ClassicalSpec& spec, const SpdSystem& system, std::span<const double> x);

/// Same stopping rule and trace layout as run().
IterationTrace classical_run(const ClassicalSpec& spec, const SpdSystem& system,
                             std::span<const double> x0, const RunOptions& options = {});

} // namespace dgsor
