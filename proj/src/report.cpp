#include "dgsor/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dgsor::report {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

nlohmann::ordered_json number(double value) {
    if (std::isfinite(value)) return value;
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    out << "k,energy,residual,decrement\n";
    for (std::size_t k = 0; k < trace.energies.size(); ++k) {
        out << k << ',' << format_real(trace.energies[k]) << ',' << format_real(trace.residual_norms[k]) << ','
            << format_real(trace.decrements[k]) << '\n';
    }
}

nlohmann::ordered_json trace_json(const IterationTrace& trace) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < trace.energies.size(); ++k) {
        nlohmann::ordered_json row;
        row["k"] = k;
        row["energy"] = number(trace.energies[k]);
        row["residual"] = number(trace.residual_norms[k]);
        row["decrement"] = number(trace.decrements[k]);
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json summary_json(const RunSummary& s) {
    nlohmann::ordered_json j;
    j["method"] = s.method;
    j["parameter"] = number(s.parameter);
    j["iterations"] = s.iterations;
    j["final_residual"] = number(s.final_residual);
    j["spectral_radius"] = number(s.spectral_radius);
    j["converged"] = s.converged;
    return j;
}

nlohmann::ordered_json equivalence_json(const EquivalenceReport& r) {
    nlohmann::ordered_json j;
    j["omega"] = number(r.omega);
    j["h"] = number(r.h);
    j["matrix_gap"] = number(r.matrix_gap);
    j["vector_gap"] = number(r.vector_gap);
    j["sequence_gap"] = number(r.sequence_gap);
    j["matrix_scale"] = number(r.matrix_scale);
    j["vector_scale"] = number(r.vector_scale);
    j["sequence_scale"] = number(r.sequence_scale);
    j["iterations"] = r.iterations;
    j["verdict"] = r.passed ? "pass" : "fail";
    return j;
}

} // namespace dgsor::report
