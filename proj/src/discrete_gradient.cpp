#include "dgsor/discrete_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgsor/energy.hpp"
#include "dgsor/error.hpp"

namespace dgsor {

namespace {

void require_dimension(const SpdSystem& system, std::span<const double> v, const char* what) {
    if (v.size() != system.n()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected " +
                                                      std::to_string(system.n()) + ", got " +
                                                      std::to_string(v.size()));
    }
}

// Row i reads `before` for columns j < i and `after` for j > i.
Vector coordinate_sweep(const SpdSystem& system, std::span<const double> before,
                        std::span<const double> after, std::span<const double> x,
                        std::span<const double> y) {
    const DenseMatrix& a = system.a();
    const std::size_t n = system.n();
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < i; ++j) s += a(i, j) * before[j];
        s += a(i, i) * (0.5 * (x[i] + y[i]));
        for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * after[j];
        g[i] = s - system.b()[i];
    }
    return g;
}

Vector block_sweep(const SpdSystem& system, const BlockSplitting& blocks, std::span<const double> x,
                   std::span<const double> y) {
    const DenseMatrix& a = system.a();
    const std::size_t n = system.n();
    Vector g(n);
    for (std::size_t k = 0; k < blocks.num_blocks(); ++k) {
        const std::size_t begin = blocks.block_begin(k);
        const std::size_t end = begin + blocks.block_size(k);
        for (std::size_t i = begin; i < end; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < begin; ++j) s += a(i, j) * x[j];
            for (std::size_t j = begin; j < end; ++j) s += a(i, j) * (0.5 * (x[j] + y[j]));
            for (std::size_t j = end; j < n; ++j) s += a(i, j) * y[j];
            g[i] = s - system.b()[i];
        }
    }
    return g;
}

Vector midpoint_gradient(const SpdSystem& system, std::span<const double> x, std::span<const double> y) {
    Vector mid(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + y[i]);
    return gradient(system, mid.span());
}

} // namespace

std::string_view to_string(DiscreteGradientKind::Tag tag) noexcept {
    switch (tag) {
    case DiscreteGradientKind::Tag::ItohAbe: return "itoh-abe";
    case DiscreteGradientKind::Tag::ItohAbeReverse: return "itoh-abe-reverse";
    case DiscreteGradientKind::Tag::Gonzalez: return "gonzalez";
    case DiscreteGradientKind::Tag::AverageVectorField: return "avf";
    case DiscreteGradientKind::Tag::BlockItohAbe: return "block-itoh-abe";
    }
    return "unknown";
}

Vector discrete_gradient(const DiscreteGradientKind& kind, const SpdSystem& system,
                         std::span<const double> x, std::span<const double> y) {
    require_dimension(system, x, "discrete_gradient x");
    require_dimension(system, y, "discrete_gradient y");

    switch (kind.tag()) {
    case DiscreteGradientKind::Tag::ItohAbe: return coordinate_sweep(system, x, y, x, y);
    case DiscreteGradientKind::Tag::ItohAbeReverse: return coordinate_sweep(system, y, x, x, y);
    case DiscreteGradientKind::Tag::AverageVectorField: return midpoint_gradient(system, x, y);
    case DiscreteGradientKind::Tag::Gonzalez: {
        if (std::equal(x.begin(), x.end(), y.begin())) return gradient(system, x);
        Vector g = midpoint_gradient(system, x, y);
        Vector d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
        const double correction =
            (energy(system, x) - energy(system, y) - dot(g.span(), d.span())) / dot(d.span(), d.span());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] += correction * d[i];
        return g;
    }
    case DiscreteGradientKind::Tag::BlockItohAbe: {
        const BlockSplitting* blocks = kind.block_splitting();
        if (blocks->size() != system.n()) {
            throw Error(ErrorCode::DimensionMismatch, "block partition covers " + std::to_string(blocks->size()) +
                                                          " unknowns, system has " + std::to_string(system.n()));
        }
        return block_sweep(system, *blocks, x, y);
    }
    }
    return {};
}

AxiomReport check_axioms(const DiscreteGradientKind& kind, const SpdSystem& system, std::span<const double> x,
                         std::span<const double> y) {
    require_dimension(system, x, "check_axioms x");
    require_dimension(system, y, "check_axioms y");

    AxiomReport report;
    const double fx = energy(system, x);
    const double fy = energy(system, y);
    report.tolerance = 1e-10 * (1.0 + std::abs(fx) + std::abs(fy));

    if (!std::equal(x.begin(), x.end(), y.begin())) {
        const Vector dg = discrete_gradient(kind, system, x, y);
        double projected = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) projected += dg[i] * (x[i] - y[i]);
        report.chain_rule_residual = std::abs(fx - fy - projected);
    }

    const Vector at_x = discrete_gradient(kind, system, x, x);
    report.consistency_residual = max_abs_diff(at_x.span(), gradient(system, x).span());

    report.passed = report.consistency_residual <= report.tolerance &&
                    (!report.chain_rule_residual || *report.chain_rule_residual <= report.tolerance);
    return report;
}

} // namespace dgsor
