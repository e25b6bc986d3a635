#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "dgsor/dense.hpp"
#include "dgsor/linalg.hpp"

namespace dgsor {

/// x^(k+1) = G x^(k) + c
struct AffineMap {
    DenseMatrix g;
    Vector c;

    Vector apply(std::span<const double> x) const;
};

enum class SchemeMethod {
    DgItohAbe,
    DgItohAbeReverse,
    DgSymmetric,
    DgBlock,
    DgMidpoint,
    ExplicitEuler,
};

std::string_view to_string(SchemeMethod method) noexcept;
bool is_discrete_gradient(SchemeMethod method) noexcept;

/// A time-stepping iteration for dx/dt = -P (A x - b).
///
/// The sweep methods (DgItohAbe, DgItohAbeReverse, DgSymmetric) accept the
/// Identity or JacobiInverse preconditioner. DgBlock uses the block Jacobi
/// preconditioner of its partition. DgMidpoint and ExplicitEuler take any P.
struct SchemeSpec {
    SchemeMethod method = SchemeMethod::DgItohAbe;
    Preconditioner preconditioner = Preconditioner::jacobi_inverse();
    double h = 1.0;

    static SchemeSpec dg_block(BlockSplitting splitting, double h) {
        return {SchemeMethod::DgBlock, Preconditioner::block_jacobi_inverse(std::move(splitting)), h};
    }

    /// Throws InvalidStepsize, InvalidSpec or DimensionMismatch.
    void validate(const SpdSystem& system) const;
};

/// One iteration. DgSymmetric performs a forward and then a backward sweep.
/// Throws InvalidStepsize for h <= 0; DgMidpoint propagates Singular.
Vector step(const SchemeSpec& spec, const SpdSystem& system, std::span<const double> x);

/// The iteration as an explicit affine map, built from the splitting
/// formulas rather than from `step`.
AffineMap iteration_matrix(const SchemeSpec& spec, const SpdSystem& system);

struct IterationTrace {
    /// Entry 0 is the initial state; its decrement is 0.
    std::vector<Vector> iterates;
    std::vector<double> energies;
    /// ||A x - b||_2
    std::vector<double> residual_norms;
    /// f(x^(k)) - f(x^(k-1))
    std::vector<double> decrements;
    bool converged = false;

    std::size_t iterations() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
    const Vector& final_iterate() const { return iterates.back(); }
    double final_residual() const { return residual_norms.back(); }
};

struct RunOptions {
    /// Stop once ||A x - b||_2 <= tol * ||b||_2 (absolute when b = 0).
    double tol = 1e-10;
    std::size_t max_iters = 10000;
};

/// Iterates until converged or max_iters. Non-finite states stop the run
/// early with converged = false. Throws OutOfRange for tol <= 0 or
/// max_iters == 0.
IterationTrace run(const SchemeSpec& spec, const SpdSystem& system, std::span<const double> x0,
                   const RunOptions& options = {});

/// Relative (or absolute, when b = 0) residual test shared by all runners.
bool residual_converged(const SpdSystem& system, double residual_norm, double tol);

} // namespace dgsor
