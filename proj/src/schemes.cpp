#include "dgsor/schemes.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "dgsor/error.hpp"
#include "iteration_runner.hpp"

namespace dgsor {

namespace {

using Kind = Preconditioner::Kind;

bool is_sweep(SchemeMethod m) {
    return m == SchemeMethod::DgItohAbe || m == SchemeMethod::DgItohAbeReverse || m == SchemeMethod::DgSymmetric;
}

// Per-component coefficients of the pointwise Itoh-Abe update
//   x_i <- ((1 - alpha_i) x_i - beta_i (sigma_i - b_i)) / (1 + alpha_i),
// where sigma_i is the off-diagonal row sum. P = I gives alpha_i = h a_ii / 2,
// beta_i = h; P = D^-1 gives alpha_i = h / 2, beta_i = h / a_ii.
struct PointCoefficients {
    Vector alpha;
    Vector beta;
};

PointCoefficients point_coefficients(const SchemeSpec& spec, const SpdSystem& system) {
    const std::size_t n = system.n();
    PointCoefficients c{Vector(n), Vector(n)};
    const bool jacobi = spec.preconditioner.kind() == Kind::JacobiInverse;
    for (std::size_t i = 0; i < n; ++i) {
        const double aii = system.a()(i, i);
        c.alpha[i] = jacobi ? 0.5 * spec.h : 0.5 * spec.h * aii;
        c.beta[i] = jacobi ? spec.h / aii : spec.h;
    }
    return c;
}

void point_update(const SpdSystem& system, const PointCoefficients& c, Vector& x, std::size_t i) {
    const DenseMatrix& a = system.a();
    const std::size_t n = system.n();
    double sigma = 0.0;
    for (std::size_t j = 0; j < i; ++j) sigma += a(i, j) * x[j];
    for (std::size_t j = i + 1; j < n; ++j) sigma += a(i, j) * x[j];
    x[i] = ((1.0 - c.alpha[i]) * x[i] - c.beta[i] * (sigma - system.b()[i])) / (1.0 + c.alpha[i]);
}

void forward_sweep(const SpdSystem& system, const PointCoefficients& c, Vector& x) {
    for (std::size_t i = 0; i < system.n(); ++i) point_update(system, c, x, i);
}

void backward_sweep(const SpdSystem& system, const PointCoefficients& c, Vector& x) {
    for (std::size_t i = system.n(); i-- > 0;) point_update(system, c, x, i);
}

void block_sweep(const SpdSystem& system, const BlockSplitting& blocks, double h, Vector& x) {
    const DenseMatrix& a = system.a();
    const std::size_t n = system.n();
    const double keep = 1.0 - 0.5 * h;
    const double scale = 1.0 + 0.5 * h;
    for (std::size_t k = 0; k < blocks.num_blocks(); ++k) {
        const std::size_t begin = blocks.block_begin(k);
        const std::size_t size = blocks.block_size(k);
        const std::size_t end = begin + size;
        Vector coupling(size);
        for (std::size_t i = begin; i < end; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < begin; ++j) s += a(i, j) * x[j];
            for (std::size_t j = end; j < n; ++j) s += a(i, j) * x[j];
            coupling[i - begin] = s - system.b()[i];
        }
        const Vector correction = blocks.solve_block(k, coupling.span());
        for (std::size_t i = 0; i < size; ++i) {
            x[begin + i] = (keep * x[begin + i] - h * correction[i]) / scale;
        }
    }
}

// Caches everything a repeated step needs, so run() does not refactor the
// midpoint matrix every iteration.
class Stepper {
public:
    Stepper(const SchemeSpec& spec, const SpdSystem& system) : spec_(spec), system_(system) {
        spec.validate(system);
        switch (spec.method) {
        case SchemeMethod::DgItohAbe:
        case SchemeMethod::DgItohAbeReverse:
        case SchemeMethod::DgSymmetric: coefficients_ = point_coefficients(spec, system); break;
        case SchemeMethod::DgMidpoint: {
            pa_ = spec.preconditioner.apply(system, system.a());
            DenseMatrix m = DenseMatrix::identity(system.n()) + (0.5 * spec.h) * *pa_;
            midpoint_lu_.emplace(std::move(m));
            pb_ = spec.preconditioner.apply(system, system.b().span());
            break;
        }
        case SchemeMethod::DgBlock: break;
        case SchemeMethod::ExplicitEuler: break;
        }
    }

    Vector operator()(const Vector& x) const {
        Vector next = x;
        switch (spec_.method) {
        case SchemeMethod::DgItohAbe: forward_sweep(system_, *coefficients_, next); break;
        case SchemeMethod::DgItohAbeReverse: backward_sweep(system_, *coefficients_, next); break;
        case SchemeMethod::DgSymmetric:
            forward_sweep(system_, *coefficients_, next);
            backward_sweep(system_, *coefficients_, next);
            break;
        case SchemeMethod::DgBlock:
            block_sweep(system_, *spec_.preconditioner.block_splitting(), spec_.h, next);
            break;
        case SchemeMethod::DgMidpoint: {
            const Vector pax = *pa_ * x;
            Vector rhs(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) rhs[i] = x[i] - 0.5 * spec_.h * pax[i] + spec_.h * (*pb_)[i];
            next = midpoint_lu_->solve(rhs.span());
            break;
        }
        case SchemeMethod::ExplicitEuler: {
            const Vector p_grad = spec_.preconditioner.apply(system_, (system_.a() * x - system_.b()).span());
            for (std::size_t i = 0; i < x.size(); ++i) next[i] = x[i] - spec_.h * p_grad[i];
            break;
        }
        }
        return next;
    }

private:
    const SchemeSpec& spec_;
    const SpdSystem& system_;
    std::optional<PointCoefficients> coefficients_;
    std::optional<DenseMatrix> pa_;
    std::optional<Vector> pb_;
    std::optional<LuFactorization> midpoint_lu_;
};

// Pointwise Itoh-Abe sweep as x' = M^-1 (N x + h b). The reverse sweep
// swaps the roles of L and U.
AffineMap itoh_abe_map(const SchemeSpec& spec, const SpdSystem& system, bool reverse) {
    const std::size_t n = system.n();
    const Splitting s = split(system);
    const bool jacobi = spec.preconditioner.kind() == Kind::JacobiInverse;
    const double h = spec.h;
    const DenseMatrix& solve_part = reverse ? s.u : s.l;
    const DenseMatrix& explicit_part = reverse ? s.l : s.u;

    // P = D^-1:  M = (1 + h/2) D + h L,        N = (1 - h/2) D - h U
    // P = I:     M = I + (h/2) D + h L,        N = I - (h/2) D - h U
    DenseMatrix m = h * solve_part;
    DenseMatrix nmat = (-h) * explicit_part;
    for (std::size_t i = 0; i < n; ++i) {
        if (jacobi) {
            m(i, i) = (1.0 + 0.5 * h) * s.d[i];
            nmat(i, i) = (1.0 - 0.5 * h) * s.d[i];
        } else {
            m(i, i) = 1.0 + 0.5 * h * s.d[i];
            nmat(i, i) = 1.0 - 0.5 * h * s.d[i];
        }
    }
    // With P = I the right-hand side is h b; with P = D^-1 the rows were
    // multiplied through by a_ii, which leaves h b as well.
    const Vector hb = h * system.b();
    if (reverse) return {solve_upper_triangular(m, nmat), solve_upper_triangular(m, hb.span())};
    return {solve_lower_triangular(m, nmat), solve_lower_triangular(m, hb.span())};
}

AffineMap compose(const AffineMap& first, const AffineMap& second) {
    return {second.g * first.g, second.g * first.c + second.c};
}

} // namespace

Vector AffineMap::apply(std::span<const double> x) const {
    return g * Vector(std::vector<double>(x.begin(), x.end())) + c;
}

std::string_view to_string(SchemeMethod method) noexcept {
    switch (method) {
    case SchemeMethod::DgItohAbe: return "dg-ia";
    case SchemeMethod::DgItohAbeReverse: return "dg-ia-rev";
    case SchemeMethod::DgSymmetric: return "dg-sym";
    case SchemeMethod::DgBlock: return "dg-block";
    case SchemeMethod::DgMidpoint: return "dg-midpoint";
    case SchemeMethod::ExplicitEuler: return "euler";
    }
    return "unknown";
}

bool is_discrete_gradient(SchemeMethod method) noexcept { return method != SchemeMethod::ExplicitEuler; }

void SchemeSpec::validate(const SpdSystem& system) const {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorCode::InvalidStepsize, "stepsize must be positive and finite, got " + std::to_string(h));
    }
    preconditioner.check_compatible(system);
    const Kind kind = preconditioner.kind();
    if (is_sweep(method) && kind != Kind::Identity && kind != Kind::JacobiInverse) {
        throw Error(ErrorCode::InvalidSpec, std::string(to_string(method)) +
                                                " needs the identity or jacobi preconditioner, got " +
                                                std::string(to_string(kind)));
    }
    if (method == SchemeMethod::DgBlock) {
        if (kind != Kind::BlockJacobiInverse) {
            throw Error(ErrorCode::InvalidSpec, "dg-block needs the block-jacobi preconditioner of its partition");
        }
        if (!preconditioner.block_splitting()->matches(system.a())) {
            throw Error(ErrorCode::InvalidSpec, "block partition was built from a different matrix");
        }
    }
}

Vector step(const SchemeSpec& spec, const SpdSystem& system, std::span<const double> x) {
    if (x.size() != system.n()) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(x.size()) + " entries, system has " +
                                                      std::to_string(system.n()));
    }
    return Stepper(spec, system)(Vector(std::vector<double>(x.begin(), x.end())));
}

AffineMap iteration_matrix(const SchemeSpec& spec, const SpdSystem& system) {
    spec.validate(system);
    const std::size_t n = system.n();
    const double h = spec.h;
    switch (spec.method) {
    case SchemeMethod::DgItohAbe: return itoh_abe_map(spec, system, false);
    case SchemeMethod::DgItohAbeReverse: return itoh_abe_map(spec, system, true);
    case SchemeMethod::DgSymmetric:
        return compose(itoh_abe_map(spec, system, false), itoh_abe_map(spec, system, true));
    case SchemeMethod::DgBlock: {
        // M = (1 + h/2) D_b + h L_b,  N = (1 - h/2) D_b - h U_b
        const BlockSplitting& blocks = *spec.preconditioner.block_splitting();
        const DenseMatrix db = blocks.block_diagonal();
        const DenseMatrix m = (1.0 + 0.5 * h) * db + h * blocks.lower();
        const DenseMatrix nmat = (1.0 - 0.5 * h) * db - h * blocks.upper();
        const LuFactorization lu(m);
        return {lu.solve(nmat), lu.solve((h * system.b()).span())};
    }
    case SchemeMethod::DgMidpoint: {
        const DenseMatrix pa = spec.preconditioner.apply(system, system.a());
        const DenseMatrix id = DenseMatrix::identity(n);
        std::optional<LuFactorization> lu;
        try {
            lu.emplace(id + (0.5 * h) * pa);
        } catch (const Error& e) {
            throw Error(ErrorCode::Unsupported, std::string("midpoint matrix I + (h/2) P A is singular: ") + e.what());
        }
        const Vector pb = spec.preconditioner.apply(system, system.b().span());
        return {lu->solve(id - (0.5 * h) * pa), lu->solve((h * pb).span())};
    }
    case SchemeMethod::ExplicitEuler: {
        const DenseMatrix pa = spec.preconditioner.apply(system, system.a());
        const Vector pb = spec.preconditioner.apply(system, system.b().span());
        return {DenseMatrix::identity(n) - h * pa, h * pb};
    }
    }
    throw Error(ErrorCode::InvalidSpec, "unknown scheme");
}

bool residual_converged(const SpdSystem& system, double residual_norm, double tol) {
    const double bnorm = norm2(system.b().span());
    return bnorm == 0.0 ? residual_norm <= tol : residual_norm <= tol * bnorm;
}

IterationTrace run(const SchemeSpec& spec, const SpdSystem& system, std::span<const double> x0,
                   const RunOptions& options) {
    const Stepper stepper(spec, system);
    return detail::drive(system, x0, options, [&](const Vector& x) { return stepper(x); });
}

} // namespace dgsor
