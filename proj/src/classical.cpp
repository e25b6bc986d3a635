#include "dgsor/classical.hpp"

#include <cmath>
#include <string>

#include "dgsor/error.hpp"
#include "iteration_runner.hpp"

namespace dgsor {

namespace {

// Solves (D_b + w L_b) y = rhs block by block, top to bottom.
Vector block_lower_solve(const SpdSystem& system, const BlockSplitting& blocks, double omega,
                         std::span<const double> rhs) {
    const DenseMatrix& a = system.a();
    Vector y(system.n());
    for (std::size_t k = 0; k < blocks.num_blocks(); ++k) {
        const std::size_t begin = blocks.block_begin(k);
        const std::size_t size = blocks.block_size(k);
        Vector r(size);
        for (std::size_t i = 0; i < size; ++i) {
            double s = rhs[begin + i];
            for (std::size_t j = 0; j < begin; ++j) s -= omega * a(begin + i, j) * y[j];
            r[i] = s;
        }
        const Vector yk = blocks.solve_block(k, r.span());
        for (std::size_t i = 0; i < size; ++i) y[begin + i] = yk[i];
    }
    return y;
}

AffineMap sor_map(const SpdSystem& system, double omega, bool backward) {
    const Splitting s = split(system);
    const DenseMatrix d = DenseMatrix::diagonal(s.d.span());
    const DenseMatrix& solve_part = backward ? s.u : s.l;
    const DenseMatrix& explicit_part = backward ? s.l : s.u;
    const DenseMatrix m = d + omega * solve_part;
    const DenseMatrix nmat = (1.0 - omega) * d - omega * explicit_part;
    const Vector wb = omega * system.b();
    if (backward) return {solve_upper_triangular(m, nmat), solve_upper_triangular(m, wb.span())};
    return {solve_lower_triangular(m, nmat), solve_lower_triangular(m, wb.span())};
}

void sor_update(const SpdSystem& system, double omega, Vector& x, std::size_t i) {
    const DenseMatrix& a = system.a();
    double s = system.b()[i];
    for (std::size_t j = 0; j < system.n(); ++j)
        if (j != i) s -= a(i, j) * x[j];
    x[i] = (1.0 - omega) * x[i] + omega * s / a(i, i);
}

void block_sor_sweep(const SpdSystem& system, const BlockSplitting& blocks, double omega, Vector& x) {
    const DenseMatrix& a = system.a();
    const std::size_t n = system.n();
    for (std::size_t k = 0; k < blocks.num_blocks(); ++k) {
        const std::size_t begin = blocks.block_begin(k);
        const std::size_t size = blocks.block_size(k);
        const std::size_t end = begin + size;
        Vector r(size);
        for (std::size_t i = begin; i < end; ++i) {
            double s = system.b()[i];
            for (std::size_t j = 0; j < begin; ++j) s -= a(i, j) * x[j];
            for (std::size_t j = end; j < n; ++j) s -= a(i, j) * x[j];
            r[i - begin] = s;
        }
        const Vector target = blocks.solve_block(k, r.span());
        for (std::size_t i = 0; i < size; ++i) x[begin + i] = (1.0 - omega) * x[begin + i] + omega * target[i];
    }
}

} // namespace

std::string_view to_string(ClassicalMethod method) noexcept {
    switch (method) {
    case ClassicalMethod::Sor: return "sor";
    case ClassicalMethod::GaussSeidel: return "gs";
    case ClassicalMethod::Ssor: return "ssor";
    case ClassicalMethod::BlockSor: return "bsor";
    }
    return "unknown";
}

void ClassicalSpec::validate(const SpdSystem& system) const {
    if (!std::isfinite(omega)) throw Error(ErrorCode::InvalidSpec, "omega must be finite");
    if (method == ClassicalMethod::BlockSor) {
        if (!blocks) throw Error(ErrorCode::InvalidSpec, "block SOR needs a block partition");
        if (blocks->size() != system.n()) {
            throw Error(ErrorCode::DimensionMismatch, "block partition covers " + std::to_string(blocks->size()) +
                                                          " unknowns, system has " + std::to_string(system.n()));
        }
        if (!blocks->matches(system.a())) {
            throw Error(ErrorCode::InvalidSpec, "block partition was built from a different matrix");
        }
    }
}

AffineMap classical_iteration_matrix(const ClassicalSpec& spec, const SpdSystem& system) {
    spec.validate(system);
    const double omega = spec.effective_omega();
    switch (spec.method) {
    case ClassicalMethod::Sor:
    case ClassicalMethod::GaussSeidel: return sor_map(system, omega, false);
    case ClassicalMethod::Ssor: {
        const AffineMap forward = sor_map(system, omega, false);
        const AffineMap backward = sor_map(system, omega, true);
        return {backward.g * forward.g, backward.g * forward.c + backward.c};
    }
    case ClassicalMethod::BlockSor: {
        // G = (D_b + wL_b)^-1 [(1-w) D_b - w U_b],  c = w (D_b + wL_b)^-1 b
        const BlockSplitting& blocks = *spec.blocks;
        const std::size_t n = system.n();
        const DenseMatrix nmat = (1.0 - omega) * blocks.block_diagonal() - omega * blocks.upper();
        DenseMatrix g(n, n);
        for (std::size_t j = 0; j < n; ++j)
            g.set_column(j, block_lower_solve(system, blocks, omega, nmat.column(j).span()).span());
        return {std::move(g), block_lower_solve(system, blocks, omega, (omega * system.b()).span())};
    }
    }
    throw Error(ErrorCode::InvalidSpec, "unknown classical method");
}

Vector classical_sweep(const ClassicalSpec& spec, const SpdSystem& system, std::span<const double> x) {
    spec.validate(system);
    if (x.size() != system.n()) {
        throw Error(ErrorCode::DimensionMismatch, "state has " + std::to_string(x.size()) + " entries, system has " +
                                                      std::to_string(system.n()));
    }
    const double omega = spec.effective_omega();
    Vector next(std::vector<double>(x.begin(), x.end()));
    switch (spec.method) {
    case ClassicalMethod::Sor:
    case ClassicalMethod::GaussSeidel:
        for (std::size_t i = 0; i < system.n(); ++i) sor_update(system, omega, next, i);
        break;
    case ClassicalMethod::Ssor:
        for (std::size_t i = 0; i < system.n(); ++i) sor_update(system, omega, next, i);
        for (std::size_t i = system.n(); i-- > 0;) sor_update(system, omega, next, i);
        break;
    case ClassicalMethod::BlockSor: block_sor_sweep(system, *spec.blocks, omega, next); break;
    }
    return next;
}

IterationTrace classical_run(const ClassicalSpec& spec, const SpdSystem& system, std::span<const double> x0,
                             const RunOptions& options) {
    spec.validate(system);
    return detail::drive(system, x0, options,
                         [&](const Vector& x) { return classical_sweep(spec, system, x.span()); });
}

} // namespace dgsor
