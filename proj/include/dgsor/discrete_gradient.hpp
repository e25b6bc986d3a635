#pragma once

#include <optional>
#include <string_view>

#include "dgsor/dense.hpp"
#include "dgsor/linalg.hpp"

namespace dgsor {

/// Which discrete gradient of the quadratic energy to evaluate.
class DiscreteGradientKind {
public:
    enum class Tag { ItohAbe, ItohAbeReverse, Gonzalez, AverageVectorField, BlockItohAbe };

    static DiscreteGradientKind itoh_abe() { return DiscreteGradientKind(Tag::ItohAbe); }
    static DiscreteGradientKind itoh_abe_reverse() { return DiscreteGradientKind(Tag::ItohAbeReverse); }
    static DiscreteGradientKind gonzalez() { return DiscreteGradientKind(Tag::Gonzalez); }
    static DiscreteGradientKind average_vector_field() {
        return DiscreteGradientKind(Tag::AverageVectorField);
    }
    static DiscreteGradientKind block_itoh_abe(BlockSplitting splitting) {
        DiscreteGradientKind k(Tag::BlockItohAbe);
        k.splitting_ = std::move(splitting);
        return k;
    }

    Tag tag() const noexcept { return tag_; }
    const BlockSplitting* block_splitting() const noexcept {
        return splitting_ ? &*splitting_ : nullptr;
    }

private:
    explicit DiscreteGradientKind(Tag tag) : tag_(tag) {}

    Tag tag_;
    std::optional<BlockSplitting> splitting_;
};

std::string_view to_string(DiscreteGradientKind::Tag tag) noexcept;

/// Evaluates grad_d f(x, y) in closed form:
///   ItohAbe         sum_{j<i} a_ij x_j + a_ii (x_i+y_i)/2 + sum_{j>i} a_ij y_j - b_i
///   ItohAbeReverse  sum_{j<i} a_ij y_j + a_ii (x_i+y_i)/2 + sum_{j>i} a_ij x_j - b_i
///   Gonzalez        midpoint gradient plus the rank-one chain-rule correction,
///                   grad f(x) when x == y
///   AVF             A (x+y)/2 - b
///   BlockItohAbe    blockwise analogue of ItohAbe
/// Throws DimensionMismatch.
Vector discrete_gradient(const DiscreteGradientKind& kind, const SpdSystem& system,
                         std::span<const double> x, std::span<const double> y);

struct AxiomReport {
    /// |f(x) - f(y) - grad_d f(x,y)^T (x-y)|; empty when x == y.
    std::optional<double> chain_rule_residual;
    /// ||grad_d f(x,x) - grad f(x)||_inf
    double consistency_residual = 0.0;
    /// 1e-10 * (1 + |f(x)| + |f(y)|)
    double tolerance = 0.0;
    bool passed = false;
};

AxiomReport check_axioms(const DiscreteGradientKind& kind, const SpdSystem& system,
                         std::span<const double> x, std::span<const double> y);

} // namespace dgsor
