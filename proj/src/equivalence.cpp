#include "dgsor/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgsor/error.hpp"

namespace dgsor {

double omega_to_h(double omega) {
    if (!(omega > 0.0 && omega < 2.0)) {
        throw Error(ErrorCode::OutOfRange, "omega must lie in (0, 2), got " + std::to_string(omega));
    }
    return 2.0 * omega / (2.0 - omega);
}

double h_to_omega(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorCode::OutOfRange, "h must be positive and finite, got " + std::to_string(h));
    }
    return 2.0 * h / (2.0 + h);
}

std::string_view to_string(EquivalencePair pair) noexcept {
    switch (pair) {
    case EquivalencePair::ItohAbeSor: return "sor";
    case EquivalencePair::SymmetricSsor: return "ssor";
    case EquivalencePair::BlockItohAbeBlockSor: return "bsor";
    }
    return "unknown";
}

EquivalenceReport check_equivalence(EquivalencePair pair, const SpdSystem& system, double omega,
                                    std::span<const double> x0, std::size_t iterations,
                                    const BlockSplitting* blocks, const EquivalenceTolerances& tol) {
    EquivalenceReport report;
    report.omega = omega;
    report.h = omega_to_h(omega);
    report.iterations = iterations;

    SchemeSpec dg;
    ClassicalSpec classical;
    switch (pair) {
    case EquivalencePair::ItohAbeSor:
        dg = {SchemeMethod::DgItohAbe, Preconditioner::jacobi_inverse(), report.h};
        classical = ClassicalSpec::sor(omega);
        break;
    case EquivalencePair::SymmetricSsor:
        dg = {SchemeMethod::DgSymmetric, Preconditioner::jacobi_inverse(), report.h};
        classical = ClassicalSpec::ssor(omega);
        break;
    case EquivalencePair::BlockItohAbeBlockSor:
        if (blocks == nullptr) throw Error(ErrorCode::InvalidSpec, "block equivalence needs a block partition");
        dg = SchemeSpec::dg_block(*blocks, report.h);
        classical = ClassicalSpec::block_sor(*blocks, omega);
        break;
    }

    const AffineMap dg_map = iteration_matrix(dg, system);
    const AffineMap classical_map = classical_iteration_matrix(classical, system);
    report.matrix_gap = max_abs_diff(dg_map.g, classical_map.g);
    report.vector_gap = max_abs_diff(dg_map.c.span(), classical_map.c.span());
    report.matrix_scale = 1.0 + norm_max(classical_map.g);
    report.vector_scale = 1.0 + norm_inf(classical_map.c.span());

    Vector x_dg(std::vector<double>(x0.begin(), x0.end()));
    Vector x_classical = x_dg;
    double x_max = norm_inf(x_classical.span());
    for (std::size_t k = 0; k < iterations; ++k) {
        x_dg = step(dg, system, x_dg.span());
        x_classical = classical_sweep(classical, system, x_classical.span());
        report.sequence_gap = std::max(report.sequence_gap, max_abs_diff(x_dg.span(), x_classical.span()));
        x_max = std::max(x_max, norm_inf(x_classical.span()));
    }
    report.sequence_scale = 1.0 + x_max;

    report.passed = report.matrix_gap <= tol.matrix * report.matrix_scale &&
                    report.vector_gap <= tol.vector * report.vector_scale &&
                    report.sequence_gap <= tol.sequence * report.sequence_scale;
    return report;
}

DenseMatrix euler_connection_matrix(const SpdSystem& system, const Preconditioner& p) {
    return DenseMatrix::identity(system.n()) - p.apply(system, system.a());
}

} // namespace dgsor
