#include "dgsor/energy.hpp"

#include <cmath>
#include <string>

#include "dgsor/error.hpp"

namespace dgsor {

namespace {

void require_dimension(const SpdSystem& system, std::span<const double> x, const char* what) {
    if (x.size() != system.n()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected " +
                                                      std::to_string(system.n()) + ", got " +
                                                      std::to_string(x.size()));
    }
}

} // namespace

double energy(const SpdSystem& system, std::span<const double> x) {
    require_dimension(system, x, "energy");
    const DenseMatrix& a = system.a();
    const Vector& b = system.b();
    double quadratic = 0.0;
    double linear = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) ax += a(i, j) * x[j];
        quadratic += x[i] * ax;
        linear += x[i] * b[i];
    }
    return 0.5 * quadratic - linear;
}

Vector gradient(const SpdSystem& system, std::span<const double> x) {
    require_dimension(system, x, "gradient");
    const DenseMatrix& a = system.a();
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += a(i, j) * x[j];
        g[i] = s - system.b()[i];
    }
    return g;
}

double component_decrement(const SpdSystem& system, std::span<const double> x_new_prefix,
                           std::span<const double> x_old, std::size_t i, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorCode::InvalidStepsize, "stepsize must be positive and finite, got " + std::to_string(h));
    }
    require_dimension(system, x_new_prefix, "component_decrement new state");
    require_dimension(system, x_old, "component_decrement old state");
    const std::size_t n = system.n();
    if (i >= n) throw Error(ErrorCode::OutOfRange, "component index " + std::to_string(i) + " >= " + std::to_string(n));

    const DenseMatrix& a = system.a();
    double r = 0.0;
    for (std::size_t j = 0; j < i; ++j) r += a(i, j) * x_new_prefix[j];
    for (std::size_t j = i; j < n; ++j) r += a(i, j) * x_old[j];
    r -= system.b()[i];

    const double scale = 1.0 + 0.5 * h;
    return -(h / (scale * scale)) * r * r / a(i, i);
}

} // namespace dgsor
