#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dgsor/dense.hpp"

namespace dgsor {

/// LU factorization with partial pivoting, PA = LU stored in place.
class LuFactorization {
public:
    /// Throws Singular when a pivot magnitude falls below 1e-14 * ||m||_max,
    /// DimensionMismatch when m is not square.
    explicit LuFactorization(DenseMatrix m);

    std::size_t size() const noexcept { return lu_.rows(); }
    Vector solve(std::span<const double> rhs) const;
    DenseMatrix solve(const DenseMatrix& rhs) const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

Vector lu_solve(const DenseMatrix& m, std::span<const double> rhs);

/// Lower Cholesky factor of a symmetric matrix, or nullopt if a pivot is
/// not strictly positive.
std::optional<DenseMatrix> cholesky(const DenseMatrix& m);
Vector cholesky_solve(const DenseMatrix& lower, std::span<const double> rhs);

/// Exact symmetry (as stored), finite entries, and a successful Cholesky.
bool is_spd(const DenseMatrix& m);

Vector solve_lower_triangular(const DenseMatrix& m, std::span<const double> rhs);
Vector solve_upper_triangular(const DenseMatrix& m, std::span<const double> rhs);
/// Column-by-column triangular solve, m X = rhs.
DenseMatrix solve_lower_triangular(const DenseMatrix& m, const DenseMatrix& rhs);
DenseMatrix solve_upper_triangular(const DenseMatrix& m, const DenseMatrix& rhs);

/// A symmetric positive definite system A x = b with its exact solution
/// cached as an oracle.
class SpdSystem {
public:
    /// Throws DimensionMismatch for shape problems, NotSpd when A is not
    /// exactly symmetric, has non-finite entries, or fails Cholesky.
    SpdSystem(DenseMatrix a, Vector b);

    std::size_t n() const noexcept { return b_.size(); }
    const DenseMatrix& a() const noexcept { return a_; }
    const Vector& b() const noexcept { return b_; }
    const Vector& solution() const noexcept { return solution_; }
    const DenseMatrix& cholesky_factor() const noexcept { return chol_; }

    /// Same matrix, different right-hand side.
    SpdSystem with_rhs(Vector b) const;

private:
    SpdSystem(DenseMatrix a, Vector b, DenseMatrix chol);

    DenseMatrix a_;
    Vector b_;
    DenseMatrix chol_;
    Vector solution_;
};

/// A = D + L + U with D diagonal, L strictly lower, U strictly upper.
struct Splitting {
    Vector d;
    DenseMatrix l;
    DenseMatrix u;

    DenseMatrix reconstruct() const;
};

Splitting split(const SpdSystem& system);

/// Contiguous block partition of A into p x p blocks.
///
/// `boundaries` lists the 0-based start index of every block except the
/// first, so {2} on n = 4 gives blocks [0, 2) and [2, 4), the full list
/// {1, ..., n-1} gives singleton blocks and {} a single block.
class BlockSplitting {
public:
    std::size_t size() const noexcept { return n_; }
    std::size_t num_blocks() const noexcept { return offsets_.size() - 1; }
    const std::vector<std::size_t>& boundaries() const noexcept { return boundaries_; }
    /// offsets()[k] is the first index of block k; offsets().back() == n.
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
    std::size_t block_begin(std::size_t k) const { return offsets_[k]; }
    std::size_t block_size(std::size_t k) const { return offsets_[k + 1] - offsets_[k]; }

    const DenseMatrix& diagonal_block(std::size_t k) const { return blocks_[k]; }
    /// Solves A_kk y = rhs with the cached factorization.
    Vector solve_block(std::size_t k, std::span<const double> rhs) const;

    /// D_b as a full n x n matrix.
    DenseMatrix block_diagonal() const;
    /// Strictly lower block part L_b.
    const DenseMatrix& lower() const noexcept { return lower_; }
    /// Strictly upper block part U_b.
    const DenseMatrix& upper() const noexcept { return upper_; }
    DenseMatrix reconstruct() const;

    /// True when the stored blocks equal the entries of `a`.
    bool matches(const DenseMatrix& a) const;

private:
    friend BlockSplitting block_split(const SpdSystem&, std::span<const std::size_t>);

    std::size_t n_ = 0;
    std::vector<std::size_t> boundaries_;
    std::vector<std::size_t> offsets_;
    std::vector<DenseMatrix> blocks_;
    std::vector<LuFactorization> factors_;
    DenseMatrix lower_;
    DenseMatrix upper_;
};

/// Throws InvalidPartition for non-increasing or out-of-range boundaries,
/// SingularBlock when a diagonal block cannot be factorized.
BlockSplitting block_split(const SpdSystem& system, std::span<const std::size_t> boundaries);

/// The SPD matrix P of the gradient system dx/dt = -P (A x - b).
class Preconditioner {
public:
    enum class Kind { Identity, JacobiInverse, BlockJacobiInverse, Explicit };

    static Preconditioner identity();
    static Preconditioner jacobi_inverse();
    static Preconditioner block_jacobi_inverse(BlockSplitting splitting);
    /// Throws NotSpd unless `p` passes the same certification as SpdSystem.
    static Preconditioner explicit_matrix(DenseMatrix p);

    Kind kind() const noexcept { return kind_; }
    /// Non-null only for BlockJacobiInverse.
    const BlockSplitting* block_splitting() const noexcept {
        return splitting_ ? &*splitting_ : nullptr;
    }
    /// Non-null only for Explicit.
    const DenseMatrix* matrix() const noexcept { return matrix_ ? &*matrix_ : nullptr; }

    /// Throws DimensionMismatch if P cannot act on vectors of this system.
    void check_compatible(const SpdSystem& system) const;
    Vector apply(const SpdSystem& system, std::span<const double> v) const;
    /// P applied to every column of m.
    DenseMatrix apply(const SpdSystem& system, const DenseMatrix& m) const;
    DenseMatrix dense(const SpdSystem& system) const;

private:
    Preconditioner() = default;

    Kind kind_ = Kind::Identity;
    std::optional<BlockSplitting> splitting_;
    std::optional<DenseMatrix> matrix_;
};

std::string_view to_string(Preconditioner::Kind kind) noexcept;

/// Spectral radius by Gelfand's formula with repeated squaring,
/// rho ~ ||G^(2^m)||_F^(1/2^m). The powers are renormalized after every
/// squaring so the estimate never overflows; non-finite input yields +inf.
double spectral_radius(const DenseMatrix& g);

/// e^m by scaling and squaring with a truncated Taylor series.
DenseMatrix matrix_exponential(const DenseMatrix& m);

/// x(t) = e^(-PAt) (x0 - A^-1 b) + A^-1 b. Throws OutOfRange for t < 0.
Vector exact_flow(const SpdSystem& system, const Preconditioner& p, std::span<const double> x0,
                  double t);

} // namespace dgsor
