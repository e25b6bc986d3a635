#include "dgsor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dgsor/error.hpp"
#include "dgsor/kernels.hpp"

namespace dgsor {

namespace {

constexpr double kPivotTolerance = 1e-14;

void require_square(const DenseMatrix& m, const char* what) {
    if (!m.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " requires a square matrix, got " +
                                                      std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()));
    }
}

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": expected " + std::to_string(want) + ", got " +
                        std::to_string(got));
    }
}

bool exactly_symmetric(const DenseMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// LU

LuFactorization::LuFactorization(DenseMatrix m) : lu_(std::move(m)) {
    require_square(lu_, "LU factorization");
    const std::size_t n = lu_.rows();
    const double threshold = kPivotTolerance * norm_max(lu_);
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                p = i;
            }
        }
        if (best == 0.0 || best < threshold || !std::isfinite(best)) {
            throw Error(ErrorCode::Singular, "pivot " + std::to_string(best) + " at column " +
                                                 std::to_string(k) + " below threshold " +
                                                 std::to_string(threshold));
        }
        if (p != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
            std::swap(perm_[k], perm_[p]);
        }
        const double pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = lu_(i, k) / pivot;
            lu_(i, k) = factor;
            if (factor == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
        }
    }
}

Vector LuFactorization::solve(std::span<const double> rhs) const {
    const std::size_t n = size();
    require_size(rhs.size(), n, "LU solve rhs");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
        y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
        y[i] = s / lu_(i, i);
    }
    return y;
}

DenseMatrix LuFactorization::solve(const DenseMatrix& rhs) const {
    require_size(rhs.rows(), size(), "LU solve rhs rows");
    DenseMatrix out(rhs.rows(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j) out.set_column(j, solve(rhs.column(j)).span());
    return out;
}

Vector lu_solve(const DenseMatrix& m, std::span<const double> rhs) {
    require_square(m, "lu_solve");
    require_size(rhs.size(), m.rows(), "lu_solve rhs");
    return LuFactorization(m).solve(rhs);
}

// ---------------------------------------------------------------------------
// Cholesky and triangular solves

std::optional<DenseMatrix> cholesky(const DenseMatrix& m) {
    require_square(m, "cholesky");
    const std::size_t n = m.rows();
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

Vector cholesky_solve(const DenseMatrix& lower, std::span<const double> rhs) {
    const Vector y = solve_lower_triangular(lower, rhs);
    return solve_upper_triangular(lower.transposed(), y.span());
}

bool is_spd(const DenseMatrix& m) {
    return m.is_square() && m.rows() > 0 && all_finite(m) && exactly_symmetric(m) &&
           cholesky(m).has_value();
}

Vector solve_lower_triangular(const DenseMatrix& m, std::span<const double> rhs) {
    require_square(m, "lower triangular solve");
    require_size(rhs.size(), m.rows(), "lower triangular solve rhs");
    const std::size_t n = m.rows();
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (std::size_t j = 0; j < i; ++j) s -= m(i, j) * y[j];
        y[i] = s / m(i, i);
    }
    return y;
}

Vector solve_upper_triangular(const DenseMatrix& m, std::span<const double> rhs) {
    require_square(m, "upper triangular solve");
    require_size(rhs.size(), m.rows(), "upper triangular solve rhs");
    const std::size_t n = m.rows();
    Vector y(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * y[j];
        y[i] = s / m(i, i);
    }
    return y;
}

DenseMatrix solve_lower_triangular(const DenseMatrix& m, const DenseMatrix& rhs) {
    DenseMatrix out(rhs.rows(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j)
        out.set_column(j, solve_lower_triangular(m, rhs.column(j).span()).span());
    return out;
}

DenseMatrix solve_upper_triangular(const DenseMatrix& m, const DenseMatrix& rhs) {
    DenseMatrix out(rhs.rows(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j)
        out.set_column(j, solve_upper_triangular(m, rhs.column(j).span()).span());
    return out;
}

// ---------------------------------------------------------------------------
// SpdSystem

namespace {

DenseMatrix certify_spd(const DenseMatrix& a) {
    if (!a.is_square() || a.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "system matrix must be square and non-empty");
    }
    if (!all_finite(a)) throw Error(ErrorCode::NotSpd, "matrix has non-finite entries");
    if (!exactly_symmetric(a)) throw Error(ErrorCode::NotSpd, "matrix is not exactly symmetric");
    auto l = cholesky(a);
    if (!l) throw Error(ErrorCode::NotSpd, "Cholesky factorization failed");
    return std::move(*l);
}

} // namespace

SpdSystem::SpdSystem(DenseMatrix a, Vector b) : SpdSystem(a, std::move(b), certify_spd(a)) {}

SpdSystem::SpdSystem(DenseMatrix a, Vector b, DenseMatrix chol)
    : a_(std::move(a)), b_(std::move(b)), chol_(std::move(chol)) {
    require_size(b_.size(), a_.rows(), "right-hand side");
    if (!all_finite(b_.span())) throw Error(ErrorCode::OutOfRange, "right-hand side has non-finite entries");
    solution_ = cholesky_solve(chol_, b_.span());
}

SpdSystem SpdSystem::with_rhs(Vector b) const { return SpdSystem(a_, std::move(b), chol_); }

// ---------------------------------------------------------------------------
// Splittings

DenseMatrix Splitting::reconstruct() const {
    DenseMatrix a = l + u;
    for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
    return a;
}

Splitting split(const SpdSystem& system) {
    const std::size_t n = system.n();
    const DenseMatrix& a = system.a();
    Splitting s{Vector(n), DenseMatrix(n, n), DenseMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        s.d[i] = a(i, i);
        for (std::size_t j = 0; j < i; ++j) s.l(i, j) = a(i, j);
        for (std::size_t j = i + 1; j < n; ++j) s.u(i, j) = a(i, j);
    }
    return s;
}

BlockSplitting block_split(const SpdSystem& system, std::span<const std::size_t> boundaries) {
    const std::size_t n = system.n();
    const DenseMatrix& a = system.a();

    std::size_t prev = 0;
    for (std::size_t b : boundaries) {
        if (b <= prev || b >= n) {
            throw Error(ErrorCode::InvalidPartition,
                        "block boundary " + std::to_string(b) +
                            " must be strictly increasing and inside (0, " + std::to_string(n) + ")");
        }
        prev = b;
    }

    BlockSplitting s;
    s.n_ = n;
    s.boundaries_.assign(boundaries.begin(), boundaries.end());
    s.offsets_.push_back(0);
    s.offsets_.insert(s.offsets_.end(), boundaries.begin(), boundaries.end());
    s.offsets_.push_back(n);

    const std::size_t p = s.num_blocks();
    std::vector<std::size_t> owner(n);
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t i = s.offsets_[k]; i < s.offsets_[k + 1]; ++i) owner[i] = k;

    s.blocks_.reserve(p);
    s.factors_.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t begin = s.offsets_[k];
        const std::size_t size = s.block_size(k);
        DenseMatrix block(size, size);
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j) block(i, j) = a(begin + i, begin + j);
        try {
            s.factors_.emplace_back(block);
        } catch (const Error& e) {
            throw Error(ErrorCode::SingularBlock, "diagonal block " + std::to_string(k) + ": " + e.what());
        }
        s.blocks_.push_back(std::move(block));
    }

    s.lower_ = DenseMatrix(n, n);
    s.upper_ = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (owner[i] > owner[j]) s.lower_(i, j) = a(i, j);
            else if (owner[i] < owner[j]) s.upper_(i, j) = a(i, j);
        }
    }
    return s;
}

Vector BlockSplitting::solve_block(std::size_t k, std::span<const double> rhs) const {
    return factors_[k].solve(rhs);
}

DenseMatrix BlockSplitting::block_diagonal() const {
    DenseMatrix d(n_, n_);
    for (std::size_t k = 0; k < num_blocks(); ++k) {
        const std::size_t begin = offsets_[k];
        for (std::size_t i = 0; i < block_size(k); ++i)
            for (std::size_t j = 0; j < block_size(k); ++j) d(begin + i, begin + j) = blocks_[k](i, j);
    }
    return d;
}

DenseMatrix BlockSplitting::reconstruct() const { return block_diagonal() + lower_ + upper_; }

bool BlockSplitting::matches(const DenseMatrix& a) const {
    return a.rows() == n_ && a.cols() == n_ && reconstruct() == a;
}

// ---------------------------------------------------------------------------
// Preconditioner

Preconditioner Preconditioner::identity() { return Preconditioner(); }

Preconditioner Preconditioner::jacobi_inverse() {
    Preconditioner p;
    p.kind_ = Kind::JacobiInverse;
    return p;
}

Preconditioner Preconditioner::block_jacobi_inverse(BlockSplitting splitting) {
    Preconditioner p;
    p.kind_ = Kind::BlockJacobiInverse;
    p.splitting_ = std::move(splitting);
    return p;
}

Preconditioner Preconditioner::explicit_matrix(DenseMatrix m) {
    if (!is_spd(m)) throw Error(ErrorCode::NotSpd, "explicit preconditioner must be symmetric positive definite");
    Preconditioner p;
    p.kind_ = Kind::Explicit;
    p.matrix_ = std::move(m);
    return p;
}

void Preconditioner::check_compatible(const SpdSystem& system) const {
    switch (kind_) {
    case Kind::Identity:
    case Kind::JacobiInverse: return;
    case Kind::BlockJacobiInverse: require_size(splitting_->size(), system.n(), "block preconditioner"); return;
    case Kind::Explicit: require_size(matrix_->rows(), system.n(), "explicit preconditioner"); return;
    }
}

Vector Preconditioner::apply(const SpdSystem& system, std::span<const double> v) const {
    check_compatible(system);
    require_size(v.size(), system.n(), "preconditioner argument");
    const std::size_t n = v.size();
    switch (kind_) {
    case Kind::Identity: return Vector(std::vector<double>(v.begin(), v.end()));
    case Kind::JacobiInverse: {
        Vector out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = v[i] / system.a()(i, i);
        return out;
    }
    case Kind::BlockJacobiInverse: {
        Vector out(n);
        const BlockSplitting& s = *splitting_;
        for (std::size_t k = 0; k < s.num_blocks(); ++k) {
            const Vector y = s.solve_block(k, v.subspan(s.block_begin(k), s.block_size(k)));
            std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(s.block_begin(k)));
        }
        return out;
    }
    case Kind::Explicit: return *matrix_ * Vector(std::vector<double>(v.begin(), v.end()));
    }
    return {};
}

DenseMatrix Preconditioner::apply(const SpdSystem& system, const DenseMatrix& m) const {
    if (kind_ == Kind::Explicit) {
        check_compatible(system);
        require_size(m.rows(), system.n(), "preconditioner argument rows");
        return *matrix_ * m;
    }
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) out.set_column(j, apply(system, m.column(j).span()).span());
    return out;
}

DenseMatrix Preconditioner::dense(const SpdSystem& system) const {
    return apply(system, DenseMatrix::identity(system.n()));
}

std::string_view to_string(Preconditioner::Kind kind) noexcept {
    switch (kind) {
    case Preconditioner::Kind::Identity: return "identity";
    case Preconditioner::Kind::JacobiInverse: return "jacobi";
    case Preconditioner::Kind::BlockJacobiInverse: return "block-jacobi";
    case Preconditioner::Kind::Explicit: return "explicit";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Spectral radius

double spectral_radius(const DenseMatrix& g) {
    require_square(g, "spectral_radius");
    if (g.rows() == 0) return 0.0;
    if (!all_finite(g)) return std::numeric_limits<double>::infinity();

    // Defective blocks converge like log(k)/k in k = 2^m, which needs
    // about 32 squarings to settle at 1e-8.
    constexpr int kMaxSquarings = 40;
    constexpr double kAgreement = 1e-8;

    const double scale = norm_max(g);
    if (scale == 0.0) return 0.0;
    const DenseMatrix unit = (1.0 / scale) * g;
    const double unit_norm = norm_frobenius(unit);

    // G^(2^m) = exp(log_norm) * power with ||power||_F = 1.
    DenseMatrix power = (1.0 / unit_norm) * unit;
    double log_norm = std::log(scale) + std::log(unit_norm);
    double exponent = 1.0;
    double previous = std::exp(log_norm);
    int agreed = 0;
    DenseMatrix squared(g.rows(), g.cols());
    for (int m = 1; m <= kMaxSquarings; ++m) {
        kernels::parallel::matmul(power, power, squared);
        const double c = norm_frobenius(squared);
        if (c == 0.0) return 0.0;
        if (!std::isfinite(c)) return std::numeric_limits<double>::infinity();
        log_norm = 2.0 * log_norm + std::log(c);
        exponent *= 2.0;
        power = (1.0 / c) * squared;
        const double estimate = std::exp(log_norm / exponent);
        // The error roughly halves per squaring; demand two quiet steps in a row.
        agreed = std::abs(estimate - previous) <= kAgreement * estimate ? agreed + 1 : 0;
        previous = estimate;
        if (agreed >= 2) break;
    }
    return previous;
}

// ---------------------------------------------------------------------------
// Matrix exponential and flow

DenseMatrix matrix_exponential(const DenseMatrix& m) {
    require_square(m, "matrix_exponential");
    const std::size_t n = m.rows();
    if (!all_finite(m)) throw Error(ErrorCode::OutOfRange, "matrix_exponential of non-finite matrix");

    double row_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double v : m.row(i)) s += std::abs(v);
        row_norm = std::max(row_norm, s);
    }
    int squarings = 0;
    if (row_norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(row_norm / 0.5)));
    const DenseMatrix x = std::ldexp(1.0, -squarings) * m;

    // ||x|| <= 1/2, so the tail after term k is bounded by 2 * ||term_k||.
    DenseMatrix result = DenseMatrix::identity(n);
    DenseMatrix term = DenseMatrix::identity(n);
    DenseMatrix next(n, n);
    for (int k = 1; k < 64; ++k) {
        kernels::parallel::matmul(term, x, next);
        term = (1.0 / k) * next;
        result = result + term;
        if (norm_max(term) <= 1e-18 * norm_max(result)) break;
    }
    for (int s = 0; s < squarings; ++s) {
        kernels::parallel::matmul(result, result, next);
        std::swap(result, next);
    }
    return result;
}

Vector exact_flow(const SpdSystem& system, const Preconditioner& p, std::span<const double> x0, double t) {
    require_size(x0.size(), system.n(), "exact_flow initial state");
    if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::OutOfRange, "exact_flow requires finite t >= 0");
    p.check_compatible(system);
    Vector x(std::vector<double>(x0.begin(), x0.end()));
    if (t == 0.0) return x;

    const DenseMatrix pa = p.apply(system, system.a());
    const DenseMatrix e = matrix_exponential(-t * pa);
    const Vector& star = system.solution();
    return e * (x - star) + star;
}

} // namespace dgsor
