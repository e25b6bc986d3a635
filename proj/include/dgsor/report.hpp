#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dgsor/equivalence.hpp"
#include "dgsor/schemes.hpp"

namespace dgsor::report {

/// Columns k,energy,residual,decrement with 17 significant digits.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);
/// Array of {"k","energy","residual","decrement"} records.
nlohmann::ordered_json trace_json(const IterationTrace& trace);

struct RunSummary {
    std::string method;
    double parameter = 0.0;
    std::size_t iterations = 0;
    double final_residual = 0.0;
    double spectral_radius = 0.0;
    bool converged = false;
};

/// {method, parameter, iterations, final_residual, spectral_radius, converged}
nlohmann::ordered_json summary_json(const RunSummary& summary);

nlohmann::ordered_json equivalence_json(const EquivalenceReport& report);

/// Non-finite doubles become strings ("inf", "-inf", "nan"); JSON has no
/// literal for them.
nlohmann::ordered_json number(double value);

} // namespace dgsor::report
