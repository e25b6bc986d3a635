#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dgsor/discrete_gradient.hpp"
#include "dgsor/energy.hpp"
#include "dgsor/error.hpp"
#include "dgsor/problems.hpp"
#include "oracles.hpp"

using namespace dgsor;
namespace t = dgsor::testing;

namespace {

SpdSystem small_system() { return SpdSystem(DenseMatrix{{2.0, 1.0}, {1.0, 2.0}}, Vector{3.0, 3.0}); }

// Random point pair with every coordinate distinct, so each difference
// quotient is well defined.
std::pair<Vector, Vector> random_pair(std::size_t n, problems::Rng& rng) {
    Vector x = problems::random_vector(n, rng);
    Vector y = problems::random_vector(n, rng);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(x[i] - y[i]) < 0.05) y[i] = x[i] + 0.5;
    return {x, y};
}

} // namespace

TEST(ItohAbe, HandExample) {
    const Vector g = discrete_gradient(DiscreteGradientKind::itoh_abe(), small_system(), Vector{1.0, 1.0}.span(),
                                       Vector{0.0, 0.0}.span());
    EXPECT_DOUBLE_EQ(g[0], -2.0);
    EXPECT_DOUBLE_EQ(g[1], -1.0);
}

TEST(ItohAbe, MatchesDifferenceQuotients) {
    problems::Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(1, 15);
        const SpdSystem s = t::random_system(n, trial);
        const auto [x, y] = random_pair(n, rng);
        const Vector forward = discrete_gradient(DiscreteGradientKind::itoh_abe(), s, x.span(), y.span());
        const Vector reverse = discrete_gradient(DiscreteGradientKind::itoh_abe_reverse(), s, x.span(), y.span());
        EXPECT_LE(max_abs_diff(forward.span(), t::itoh_abe_quotient(s, x.span(), y.span()).span()), 1e-8);
        EXPECT_LE(max_abs_diff(reverse.span(), t::itoh_abe_quotient(s, x.span(), y.span(), true).span()), 1e-8);
    }
}

TEST(Gonzalez, EqualsAvfOnQuadratic) {
    problems::Rng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(1, 20);
        const SpdSystem s = t::random_system(n, trial);
        const auto [x, y] = random_pair(n, rng);
        const Vector gz = discrete_gradient(DiscreteGradientKind::gonzalez(), s, x.span(), y.span());
        const Vector avf = discrete_gradient(DiscreteGradientKind::average_vector_field(), s, x.span(), y.span());
        EXPECT_LE(max_abs_diff(gz.span(), avf.span()), 1e-12);
    }
}

TEST(Avf, IsMidpointGradient) {
    const SpdSystem s = small_system();
    const Vector g = discrete_gradient(DiscreteGradientKind::average_vector_field(), s, Vector{1.0, 1.0}.span(),
                                       Vector{0.0, 0.0}.span());
    // A (0.5, 0.5) - b = (1.5 - 3, 1.5 - 3)
    EXPECT_DOUBLE_EQ(g[0], -1.5);
    EXPECT_DOUBLE_EQ(g[1], -1.5);
}

TEST(BlockItohAbe, SingletonsReduceToItohAbe) {
    problems::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = rng.index(1, 15);
        const SpdSystem s = t::random_system(n, trial);
        const auto bounds = problems::singleton_boundaries(n);
        const auto kind = DiscreteGradientKind::block_itoh_abe(block_split(s, bounds));
        const auto [x, y] = random_pair(n, rng);
        const Vector block = discrete_gradient(kind, s, x.span(), y.span());
        const Vector point = discrete_gradient(DiscreteGradientKind::itoh_abe(), s, x.span(), y.span());
        EXPECT_LE(max_abs_diff(block.span(), point.span()), 1e-14);
    }
}

TEST(BlockItohAbe, SingleBlockIsAvf) {
    const SpdSystem s = t::random_system(6, 5);
    const std::vector<std::size_t> none;
    const auto kind = DiscreteGradientKind::block_itoh_abe(block_split(s, none));
    problems::Rng rng(4);
    const auto [x, y] = random_pair(6, rng);
    const Vector block = discrete_gradient(kind, s, x.span(), y.span());
    const Vector avf = discrete_gradient(DiscreteGradientKind::average_vector_field(), s, x.span(), y.span());
    EXPECT_LE(max_abs_diff(block.span(), avf.span()), 1e-14);
}

TEST(Axioms, ConsistencyAtCoincidentPoints) {
    problems::Rng rng(5);
    const SpdSystem s = t::random_system(8, 6);
    const std::vector<std::size_t> bounds{3, 5};
    for (const DiscreteGradientKind& kind :
         {DiscreteGradientKind::itoh_abe(), DiscreteGradientKind::itoh_abe_reverse(),
          DiscreteGradientKind::gonzalez(), DiscreteGradientKind::average_vector_field(),
          DiscreteGradientKind::block_itoh_abe(block_split(s, bounds))}) {
        const Vector x = problems::random_vector(8, rng);
        const Vector g = discrete_gradient(kind, s, x.span(), x.span());
        EXPECT_LE(max_abs_diff(g.span(), gradient(s, x.span()).span()), 1e-14);
        const AxiomReport r = check_axioms(kind, s, x.span(), x.span());
        EXPECT_FALSE(r.chain_rule_residual.has_value());
        EXPECT_TRUE(r.passed);
    }
}

TEST(Axioms, ChainRuleAgainstOracleEnergy) {
    problems::Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(1, 20);
        const SpdSystem s = t::random_system(n, 500 + trial);
        const auto bounds = problems::random_boundaries(n, rng.index(1, n), rng);
        const auto [x, y] = random_pair(n, rng);
        const double fx = t::eigen_energy(s, x.span());
        const double fy = t::eigen_energy(s, y.span());
        for (const DiscreteGradientKind& kind :
             {DiscreteGradientKind::itoh_abe(), DiscreteGradientKind::itoh_abe_reverse(),
              DiscreteGradientKind::gonzalez(), DiscreteGradientKind::average_vector_field(),
              DiscreteGradientKind::block_itoh_abe(block_split(s, bounds))}) {
            const Vector g = discrete_gradient(kind, s, x.span(), y.span());
            double inner = 0.0;
            for (std::size_t i = 0; i < n; ++i) inner += g[i] * (x[i] - y[i]);
            EXPECT_LE(std::abs(fx - fy - inner), 1e-10 * (1.0 + std::abs(fx) + std::abs(fy)));
            EXPECT_TRUE(check_axioms(kind, s, x.span(), y.span()).passed);
        }
    }
}

TEST(DiscreteGradient, DimensionMismatch) {
    const SpdSystem s = small_system();
    EXPECT_THROW(discrete_gradient(DiscreteGradientKind::itoh_abe(), s, Vector{1.0}.span(), Vector{1.0, 2.0}.span()),
                 Error);
}
