#pragma once

// Shared driver for run() and classical_run().

#include <cmath>
#include <string>

#include "dgsor/energy.hpp"
#include "dgsor/error.hpp"
#include "dgsor/schemes.hpp"

namespace dgsor::detail {

inline double residual_norm(const SpdSystem& system, std::span<const double> x) {
    return norm2(gradient(system, x).span());
}

template <class StepFn>
IterationTrace drive(const SpdSystem& system, std::span<const double> x0, const RunOptions& options,
                     StepFn&& next) {
    if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
        throw Error(ErrorCode::OutOfRange, "tol must be positive, got " + std::to_string(options.tol));
    }
    if (options.max_iters == 0) throw Error(ErrorCode::OutOfRange, "max_iters must be at least 1");
    if (x0.size() != system.n()) {
        throw Error(ErrorCode::DimensionMismatch, "initial state has " + std::to_string(x0.size()) +
                                                      " entries, system has " + std::to_string(system.n()));
    }

    IterationTrace trace;
    Vector x(std::vector<double>(x0.begin(), x0.end()));
    double f = energy(system, x.span());
    double r = residual_norm(system, x.span());
    trace.iterates.push_back(x);
    trace.energies.push_back(f);
    trace.residual_norms.push_back(r);
    trace.decrements.push_back(0.0);
    trace.converged = residual_converged(system, r, options.tol);

    for (std::size_t k = 0; k < options.max_iters && !trace.converged; ++k) {
        x = next(x);
        const double f_next = energy(system, x.span());
        r = residual_norm(system, x.span());
        trace.iterates.push_back(x);
        trace.energies.push_back(f_next);
        trace.residual_norms.push_back(r);
        trace.decrements.push_back(f_next - f);
        f = f_next;
        if (!std::isfinite(r) || !std::isfinite(f)) break;
        trace.converged = residual_converged(system, r, options.tol);
    }
    return trace;
}

} // namespace dgsor::detail
