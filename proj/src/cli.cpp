#include "dgsor/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgsor/classical.hpp"
#include "dgsor/discrete_gradient.hpp"
#include "dgsor/energy.hpp"
#include "dgsor/equivalence.hpp"
#include "dgsor/error.hpp"
#include "dgsor/matrix_market.hpp"
#include "dgsor/problems.hpp"
#include "dgsor/report.hpp"
#include "dgsor/schemes.hpp"

namespace dgsor::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DGSOLVE_SEED")) {
        const std::string text(env);
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(text, &used);
            if (used == text.size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("DGSOLVE_SEED is not an unsigned integer: '" + text + "'");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Problem source

struct ProblemOptions {
    std::string gen;
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<std::uint64_t> seed;
    std::string rhs = "ones";
    std::string a_path;
    std::string b_path;

    std::uint64_t resolved_seed() const { return seed ? *seed : default_seed(); }
};

void add_problem_options(CLI::App* sub, ProblemOptions& o) {
    sub->add_option("--gen", o.gen, "Generated problem")
        ->check(CLI::IsMember({"laplacian1d", "laplacian2d", "random-spd"}));
    sub->add_option("--n", o.n, "Dimension (laplacian1d, random-spd)");
    sub->add_option("--m", o.m, "Grid side (laplacian2d, n = m^2)");
    sub->add_option("--seed", o.seed, "RNG seed (default: $DGSOLVE_SEED or 0)");
    sub->add_option("--rhs", o.rhs, "Right-hand side for generated problems")
        ->check(CLI::IsMember({"ones", "random", "file"}));
    sub->add_option("--A", o.a_path, "Matrix Market file with A");
    sub->add_option("--b", o.b_path, "Matrix Market file with b");
}

DenseMatrix generate_matrix(const ProblemOptions& o, std::uint64_t seed) {
    if (o.gen == "laplacian2d") {
        if (o.m == 0) throw UsageError("--gen laplacian2d needs --m");
        return problems::laplacian_2d(o.m);
    }
    if (o.n == 0) throw UsageError("--gen " + o.gen + " needs --n");
    if (o.gen == "laplacian1d") return problems::laplacian_1d(o.n);
    return problems::random_spd(o.n, seed);
}

SpdSystem load_problem(const ProblemOptions& o, std::uint64_t seed) {
    if (o.gen.empty() == o.a_path.empty()) throw UsageError("give exactly one of --gen or --A");
    DenseMatrix a = o.a_path.empty() ? generate_matrix(o, seed) : mm::load_matrix(o.a_path);
    Vector b;
    if (!o.b_path.empty()) {
        b = mm::load_vector(o.b_path);
    } else if (o.rhs == "file") {
        throw UsageError("--rhs file needs --b");
    } else if (o.rhs == "random") {
        // Separate stream from the one that generated A.
        b = problems::random_vector(a.rows(), seed ^ 0x9e3779b97f4a7c15ULL);
    } else {
        b = problems::ones_solution_rhs(a);
    }
    return SpdSystem(std::move(a), std::move(b));
}

SpdSystem load_problem(const ProblemOptions& o) { return load_problem(o, o.resolved_seed()); }

// ---------------------------------------------------------------------------
// Method selection

struct BlockOptions {
    std::string cuts;
    std::size_t size = 0;
};

void add_block_options(CLI::App* sub, BlockOptions& o) {
    sub->add_option("--blocks", o.cuts, "Comma-separated 0-based block start indices, e.g. 2,4");
    sub->add_option("--block-size", o.size, "Uniform block size");
}

std::vector<std::size_t> resolve_boundaries(const BlockOptions& o, std::size_t n) {
    if (!o.cuts.empty() && o.size != 0) throw UsageError("give at most one of --blocks and --block-size");
    std::vector<std::size_t> cuts;
    if (!o.cuts.empty()) {
        std::string token;
        std::istringstream in(o.cuts);
        while (std::getline(in, token, ',')) {
            try {
                std::size_t used = 0;
                cuts.push_back(std::stoul(token, &used));
                if (used != token.size()) throw std::invalid_argument(token);
            } catch (const std::exception&) {
                throw UsageError("bad --blocks entry '" + token + "'");
            }
        }
    } else if (o.size != 0) {
        for (std::size_t c = o.size; c < n; c += o.size) cuts.push_back(c);
    } else if (n >= 2) {
        cuts.push_back(n / 2);
    }
    return cuts;
}

struct MethodOptions {
    std::string method = "dg-ia";
    std::string p = "jacobi";
    std::string p_path;
    std::optional<double> h;
    std::optional<double> omega;
    BlockOptions blocks;
};

void add_method_options(CLI::App* sub, MethodOptions& o) {
    sub->add_option("--method", o.method, "Iteration")
        ->check(CLI::IsMember({"dg-ia", "dg-ia-rev", "dg-sym", "dg-block", "dg-midpoint", "euler", "sor", "gs",
                               "ssor", "bsor"}));
    sub->add_option("--p", o.p, "Preconditioner P")
        ->check(CLI::IsMember({"identity", "jacobi", "block-jacobi", "explicit"}));
    sub->add_option("--P", o.p_path, "Matrix Market file with an explicit SPD preconditioner");
    sub->add_option("--h", o.h, "Stepsize (mapped to omega for classical methods)");
    sub->add_option("--omega", o.omega, "Relaxation parameter (mapped to h for DG methods)");
    add_block_options(sub, o.blocks);
}

struct ResolvedMethod {
    std::string name;
    double parameter = 0.0;
    std::variant<SchemeSpec, ClassicalSpec> spec;
};

std::optional<SchemeMethod> scheme_method(const std::string& name) {
    if (name == "dg-ia") return SchemeMethod::DgItohAbe;
    if (name == "dg-ia-rev") return SchemeMethod::DgItohAbeReverse;
    if (name == "dg-sym") return SchemeMethod::DgSymmetric;
    if (name == "dg-block") return SchemeMethod::DgBlock;
    if (name == "dg-midpoint") return SchemeMethod::DgMidpoint;
    if (name == "euler") return SchemeMethod::ExplicitEuler;
    return std::nullopt;
}

ResolvedMethod resolve_method(const MethodOptions& o, const SpdSystem& system) {
    if (o.method == "gs" && !o.h && !o.omega) {
        ClassicalSpec spec = ClassicalSpec::gauss_seidel();
        spec.validate(system);
        return {o.method, 1.0, std::move(spec)};
    }
    if (o.h.has_value() == o.omega.has_value()) throw UsageError("give exactly one of --h and --omega");

    if (const auto method = scheme_method(o.method)) {
        double h = 0.0;
        if (o.h) {
            h = *o.h;
        } else {
            if (*method == SchemeMethod::ExplicitEuler) throw UsageError("euler takes --h, not --omega");
            h = omega_to_h(*o.omega);
        }
        if (*method == SchemeMethod::DgBlock) {
            auto blocks = block_split(system, resolve_boundaries(o.blocks, system.n()));
            return {o.method, h, SchemeSpec::dg_block(std::move(blocks), h)};
        }
        Preconditioner p = Preconditioner::identity();
        if (o.p == "jacobi") {
            p = Preconditioner::jacobi_inverse();
        } else if (o.p == "block-jacobi") {
            p = Preconditioner::block_jacobi_inverse(block_split(system, resolve_boundaries(o.blocks, system.n())));
        } else if (o.p == "explicit") {
            if (o.p_path.empty()) throw UsageError("--p explicit needs --P");
            p = Preconditioner::explicit_matrix(mm::load_matrix(o.p_path));
        }
        SchemeSpec spec{*method, std::move(p), h};
        spec.validate(system);
        return {o.method, h, std::move(spec)};
    }

    const double omega = o.omega ? *o.omega : h_to_omega(*o.h);
    ClassicalSpec spec;
    if (o.method == "sor") spec = ClassicalSpec::sor(omega);
    else if (o.method == "gs") spec = ClassicalSpec::gauss_seidel();
    else if (o.method == "ssor") spec = ClassicalSpec::ssor(omega);
    else spec = ClassicalSpec::block_sor(block_split(system, resolve_boundaries(o.blocks, system.n())), omega);
    spec.validate(system);
    return {o.method, spec.effective_omega(), std::move(spec)};
}

AffineMap affine_map(const ResolvedMethod& m, const SpdSystem& system) {
    if (const auto* s = std::get_if<SchemeSpec>(&m.spec)) return iteration_matrix(*s, system);
    return classical_iteration_matrix(std::get<ClassicalSpec>(m.spec), system);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Subcommands

struct SolveOptions {
    ProblemOptions problem;
    MethodOptions method;
    double tol = 1e-10;
    std::size_t max_iters = 10000;
    std::string x0 = "zeros";
    std::string trace_path;
    std::string format = "csv";
    std::string summary_path;
};

int run_solve(const SolveOptions& o, std::ostream& out) {
    const SpdSystem system = load_problem(o.problem);
    const ResolvedMethod method = resolve_method(o.method, system);
    const Vector x0 = o.x0 == "random" ? problems::random_vector(system.n(), o.problem.resolved_seed() + 1)
                                       : Vector(system.n(), 0.0);
    const RunOptions options{o.tol, o.max_iters};

    const IterationTrace trace = std::holds_alternative<SchemeSpec>(method.spec)
                                     ? run(std::get<SchemeSpec>(method.spec), system, x0.span(), options)
                                     : classical_run(std::get<ClassicalSpec>(method.spec), system, x0.span(), options);

    report::RunSummary summary;
    summary.method = method.name;
    summary.parameter = method.parameter;
    summary.iterations = trace.iterations();
    summary.final_residual = trace.final_residual();
    summary.spectral_radius = spectral_radius(affine_map(method, system).g);
    summary.converged = trace.converged;

    if (!o.trace_path.empty()) {
        std::ostringstream text;
        if (o.format == "json") text << report::trace_json(trace).dump(2) << '\n';
        else report::write_trace_csv(text, trace);
        write_text(o.trace_path, text.str());
    }
    const std::string summary_text = report::summary_json(summary).dump(2) + "\n";
    if (!o.summary_path.empty()) write_text(o.summary_path, summary_text);
    out << summary_text;
    return trace.converged ? kExitOk : kExitFail;
}

struct EquivOptions {
    ProblemOptions problem;
    std::string pair = "sor";
    std::optional<double> omega;
    std::optional<double> h;
    std::size_t iterations = 200;
    std::size_t instances = 1;
    std::string x0 = "random";
    BlockOptions blocks;
};

EquivalencePair parse_pair(const std::string& name) {
    if (name == "sor") return EquivalencePair::ItohAbeSor;
    if (name == "ssor") return EquivalencePair::SymmetricSsor;
    return EquivalencePair::BlockItohAbeBlockSor;
}

EquivalenceReport equivalence_instance(const EquivOptions& o, double omega, std::uint64_t seed) {
    const SpdSystem system = load_problem(o.problem, seed);
    const Vector x0 = o.x0 == "random" ? problems::random_vector(system.n(), seed + 1) : Vector(system.n(), 0.0);
    const EquivalencePair pair = parse_pair(o.pair);
    std::optional<BlockSplitting> blocks;
    if (pair == EquivalencePair::BlockItohAbeBlockSor) {
        blocks = block_split(system, resolve_boundaries(o.blocks, system.n()));
    }
    return check_equivalence(pair, system, omega, x0.span(), o.iterations, blocks ? &*blocks : nullptr);
}

int run_equiv(const EquivOptions& o, std::ostream& out) {
    if (o.h.has_value() == o.omega.has_value()) throw UsageError("give exactly one of --omega and --h");
    const double omega = o.omega ? *o.omega : h_to_omega(*o.h);
    omega_to_h(omega);
    if (o.instances == 0) throw UsageError("--instances must be at least 1");
    if (o.instances > 1 && o.problem.gen != "random-spd") {
        throw UsageError("--instances > 1 needs --gen random-spd");
    }

    const std::uint64_t base = o.problem.resolved_seed();
    if (o.instances == 1) {
        const EquivalenceReport r = equivalence_instance(o, omega, base);
        json j;
        j["pair"] = o.pair;
        const json fields = report::equivalence_json(r);
        for (const auto& [key, value] : fields.items()) j[key] = value;
        out << j.dump(2) << '\n';
        return r.passed ? kExitOk : kExitFail;
    }

    // Instances are independent; results land by index so the output does
    // not depend on scheduling.
    const auto count = static_cast<std::int64_t>(o.instances);
    std::vector<std::optional<EquivalenceReport>> reports(o.instances);
    std::vector<std::string> errors(o.instances);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
        try {
            reports[static_cast<std::size_t>(k)] = equivalence_instance(o, omega, base + static_cast<std::uint64_t>(k));
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(k)] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);

    json j;
    j["pair"] = o.pair;
    j["omega"] = omega;
    j["instances"] = o.instances;
    double matrix_gap = 0.0, vector_gap = 0.0, sequence_gap = 0.0;
    std::size_t failures = 0;
    for (const auto& r : reports) {
        matrix_gap = std::max(matrix_gap, r->matrix_gap);
        vector_gap = std::max(vector_gap, r->vector_gap);
        sequence_gap = std::max(sequence_gap, r->sequence_gap);
        if (!r->passed) ++failures;
    }
    j["max_matrix_gap"] = matrix_gap;
    j["max_vector_gap"] = vector_gap;
    j["max_sequence_gap"] = sequence_gap;
    j["failures"] = failures;
    j["verdict"] = failures == 0 ? "pass" : "fail";
    out << j.dump(2) << '\n';
    return failures == 0 ? kExitOk : kExitFail;
}

struct SpectrumOptions {
    ProblemOptions problem;
    MethodOptions method;
};

int run_spectrum(const SpectrumOptions& o, std::ostream& out) {
    const SpdSystem system = load_problem(o.problem);
    const ResolvedMethod method = resolve_method(o.method, system);
    const double rho = spectral_radius(affine_map(method, system).g);
    json j;
    j["method"] = method.name;
    j["parameter"] = report::number(method.parameter);
    j["spectral_radius"] = report::number(rho);
    j["convergent"] = rho < 1.0;
    out << j.dump(2) << '\n';
    return kExitOk;
}

struct GenOptions {
    ProblemOptions problem;
    std::string out_a;
    std::string out_b;
};

int run_gen(const GenOptions& o, std::ostream& out) {
    if (o.problem.gen.empty()) throw UsageError("gen needs --gen");
    const SpdSystem system = load_problem(o.problem);
    mm::save_matrix(o.out_a, system.a());
    if (!o.out_b.empty()) mm::save_vector(o.out_b, system.b());
    json j;
    j["generator"] = o.problem.gen;
    j["n"] = system.n();
    j["A"] = o.out_a;
    if (!o.out_b.empty()) j["b"] = o.out_b;
    out << j.dump(2) << '\n';
    return kExitOk;
}

struct AxiomsOptions {
    std::string kind = "all";
    std::size_t samples = 1000;
    std::size_t n_min = 2;
    std::size_t n_max = 20;
    std::optional<std::uint64_t> seed;
};

struct AxiomSample {
    double chain = 0.0;       // residual / tolerance
    double consistency = 0.0; // residual / tolerance
    bool passed = true;
};

int run_axioms(const AxiomsOptions& o, std::ostream& out) {
    if (o.n_min < 1 || o.n_min > o.n_max) throw UsageError("need 1 <= --n-min <= --n-max");
    const std::vector<std::string> all = {"ia", "ia-rev", "gonzalez", "avf", "block"};
    std::vector<std::string> kinds;
    if (o.kind == "all") kinds = all;
    else kinds = {o.kind};

    const std::uint64_t base = o.seed ? *o.seed : default_seed();
    json j;
    j["samples"] = o.samples;
    bool all_passed = true;
    for (const auto& kind_name : kinds) {
        const auto count = static_cast<std::int64_t>(o.samples);
        std::vector<AxiomSample> results(o.samples);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < count; ++k) {
            problems::Rng rng(base * 1000003ULL + static_cast<std::uint64_t>(k));
            const std::size_t n = rng.index(o.n_min, o.n_max);
            const SpdSystem system(problems::random_spd(n, rng.index(0, 1u << 30)),
                                   problems::random_vector(n, rng));
            const Vector x = problems::random_vector(n, rng, -2.0, 2.0);
            const Vector y = problems::random_vector(n, rng, -2.0, 2.0);
            std::optional<DiscreteGradientKind> kind;
            if (kind_name == "ia") kind = DiscreteGradientKind::itoh_abe();
            else if (kind_name == "ia-rev") kind = DiscreteGradientKind::itoh_abe_reverse();
            else if (kind_name == "gonzalez") kind = DiscreteGradientKind::gonzalez();
            else if (kind_name == "avf") kind = DiscreteGradientKind::average_vector_field();
            else {
                const auto cuts = problems::random_boundaries(n, rng.index(1, 4), rng);
                kind = DiscreteGradientKind::block_itoh_abe(block_split(system, cuts));
            }
            const AxiomReport r = check_axioms(*kind, system, x.span(), y.span());
            AxiomSample& s = results[static_cast<std::size_t>(k)];
            s.chain = r.chain_rule_residual.value_or(0.0);
            s.consistency = r.consistency_residual;
            s.passed = r.passed;
        }
        double chain = 0.0, consistency = 0.0;
        std::size_t failures = 0;
        for (const auto& s : results) {
            chain = std::max(chain, s.chain);
            consistency = std::max(consistency, s.consistency);
            if (!s.passed) ++failures;
        }
        json entry;
        entry["max_chain_rule_residual"] = chain;
        entry["max_consistency_residual"] = consistency;
        entry["failures"] = failures;
        j["kinds"][kind_name] = entry;
        all_passed = all_passed && failures == 0;
    }
    j["verdict"] = all_passed ? "pass" : "fail";
    out << j.dump(2) << '\n';
    return all_passed ? kExitOk : kExitFail;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete gradient / SOR-type iterative solvers for SPD systems", "dgsolve"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run an iteration and report convergence");
    add_problem_options(solve_cmd, solve.problem);
    add_method_options(solve_cmd, solve.method);
    solve_cmd->add_option("--tol", solve.tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--max-iters", solve.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--x0", solve.x0, "Initial state")->check(CLI::IsMember({"zeros", "random"}));
    solve_cmd->add_option("--trace", solve.trace_path, "Write the iteration trace here");
    solve_cmd->add_option("--format", solve.format, "Trace format")->check(CLI::IsMember({"csv", "json"}));
    solve_cmd->add_option("--summary", solve.summary_path, "Also write the JSON summary here");

    EquivOptions equiv;
    auto* equiv_cmd = app.add_subcommand("equiv", "Compare a DG scheme with its SOR-type counterpart");
    add_problem_options(equiv_cmd, equiv.problem);
    equiv_cmd->add_option("--pair", equiv.pair, "Pair to compare")->check(CLI::IsMember({"sor", "ssor", "bsor"}));
    equiv_cmd->add_option("--omega", equiv.omega, "Relaxation parameter in (0, 2)");
    equiv_cmd->add_option("--h", equiv.h, "Stepsize, mapped to omega");
    equiv_cmd->add_option("--K", equiv.iterations, "Iterates compared");
    equiv_cmd->add_option("--instances", equiv.instances, "Random instances (seeds seed, seed+1, ...)");
    equiv_cmd->add_option("--x0", equiv.x0, "Initial state")->check(CLI::IsMember({"zeros", "random"}));
    add_block_options(equiv_cmd, equiv.blocks);

    SpectrumOptions spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectral radius of an iteration matrix");
    add_problem_options(spectrum_cmd, spectrum.problem);
    add_method_options(spectrum_cmd, spectrum.method);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated problem as Matrix Market files");
    add_problem_options(gen_cmd, gen.problem);
    gen_cmd->add_option("--out-A", gen.out_a, "Output file for A")->required();
    gen_cmd->add_option("--out-b", gen.out_b, "Output file for b");

    AxiomsOptions axioms;
    auto* axioms_cmd = app.add_subcommand("axioms", "Check the discrete gradient axioms on random samples");
    axioms_cmd->add_option("--kind", axioms.kind, "Discrete gradient")
        ->check(CLI::IsMember({"all", "ia", "ia-rev", "gonzalez", "avf", "block"}));
    axioms_cmd->add_option("--samples", axioms.samples, "Random (x, y) pairs per kind");
    axioms_cmd->add_option("--n-min", axioms.n_min, "Smallest dimension");
    axioms_cmd->add_option("--n-max", axioms.n_max, "Largest dimension");
    axioms_cmd->add_option("--seed", axioms.seed, "RNG seed (default: $DGSOLVE_SEED or 0)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve, out);
        if (equiv_cmd->parsed()) return run_equiv(equiv, out);
        if (spectrum_cmd->parsed()) return run_spectrum(spectrum, out);
        if (gen_cmd->parsed()) return run_gen(gen, out);
        if (axioms_cmd->parsed()) return run_axioms(axioms, out);
    } catch (const UsageError& e) {
        err << "dgsolve: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "dgsolve: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace dgsor::cli
