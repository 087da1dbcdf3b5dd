// ymsym — batch front-end for the per-mode quantization toolkit.
//
// Subcommands: lie, symbol, model, verify-prop41, spectrum, gap, sweep.
// All reports go to stdout as JSON (17 significant digits) or CSV; failures
// print a machine-readable error object on stderr. Exit codes: 0 ok,
// 2 config error, 3 numerical failure, 4 budget exceeded.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ymsym/json_writer.hpp"
#include "ymsym/spectral.hpp"
#include "ymsym/symbol_text.hpp"

using namespace ymsym;

namespace {

struct RunConfig {
    std::string algebra_id = "su2";
    std::vector<std::vector<int>> modes;  // one or more j vectors
    std::vector<int> cutoffs{4, 6, 8};
    int k = 8;
    double cluster_tol = -1.0;
    std::uint64_t seed = 42;
    bool two_pi = false;
    bool abelian_diagnostic = false;
    double scale_c = 1.0;
    std::string format = "json";
    std::int64_t budget = kDefaultStateBudget;
    int threads = 1;
    double ceiling = 0.0;

    SolverOptions solver() const {
        SolverOptions opt;
        opt.seed = seed;
        opt.cluster_tol = cluster_tol;
        return opt;
    }
};

std::int64_t env_int(const char* name, std::int64_t fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoll(v);
    } catch (const std::exception&) {
        throw ConfigError(std::string(name) + " is not an integer: " + v);
    }
}

std::array<int, 3> mode_vector(const std::vector<int>& j) {
    if (j.size() != 3)
        throw ConfigError("a mode needs exactly three integers, e.g. --j 0,0,1");
    return {j[0], j[1], j[2]};
}

LieAlgebraBasis configured_algebra(const RunConfig& cfg) {
    LieAlgebraBasis basis = build_algebra(cfg.algebra_id);
    if (cfg.abelian_diagnostic) return basis.zeroed();
    if (cfg.scale_c != 1.0) return basis.scaled(cfg.scale_c);
    return basis;
}

ModeModel configured_model(const RunConfig& cfg, const std::vector<int>& j) {
    return build_classical_symbol(
        make_mode(mode_vector(j), configured_algebra(cfg), cfg.two_pi));
}

void emit_error(const std::string& type, const std::string& message) {
    JsonWriter w;
    w.begin_object();
    w.key("error").begin_object();
    w.key("type").value(type);
    w.key("message").value(message);
    w.end_object();
    w.end_object();
    std::cerr << w.str() << "\n";
}

int cmd_lie(const RunConfig& cfg) {
    const auto basis = build_algebra(cfg.algebra_id);
    const auto inv = basis.check_invariants();
    if (cfg.format == "text") {
        std::cout << "algebra " << basis.id() << " dim " << basis.dim() << "\n";
        for (const auto& e : basis.nonzero_entries()) {
            char line[96];
            std::snprintf(line, sizeof(line), "c[%d][%d][%d] = %.17g\n", e.i, e.j,
                          e.k, e.value);
            std::cout << line;
        }
        char res[160];
        std::snprintf(res, sizeof(res),
                      "residuals: antisymmetry %.3g jacobi %.3g orthonormality %.3g\n",
                      inv.antisymmetry, inv.jacobi, inv.orthonormality);
        std::cout << res;
    } else {
        std::string js = basis.to_json();
        js.pop_back();  // graft the residual block onto the algebra object
        JsonWriter w;
        w.begin_object();
        w.key("antisymmetry").value(inv.antisymmetry);
        w.key("jacobi").value(inv.jacobi);
        w.key("orthonormality").value(inv.orthonormality);
        w.end_object();
        std::cout << js << ",\"residuals\":" << w.str() << "}\n";
    }
    if (!inv.pass()) {
        emit_error("numerical", "algebra invariants exceed tolerances");
        return 3;
    }
    return 0;
}

int cmd_symbol(const std::string& expr, const std::string& from,
               const std::string& to, int num_vars, bool as_json) {
    auto parsed = parse_symbol(expr, num_vars);
    PolySymbol sym = parsed.chart == Chart::real_pair
                         ? to_complex_chart(parsed.symbol)
                         : parsed.symbol;
    const Ordering from_tag = ordering_from_name(from);
    const Ordering to_tag = ordering_from_name(to);
    const PolySymbol out =
        convert_ordering(sym.with_ordering(from_tag), from_tag, to_tag);
    if (as_json)
        std::cout << symbol_to_json(out) << "\n";
    else
        std::cout << to_text(out) << "\n";
    return 0;
}

int cmd_model(const RunConfig& cfg, bool print_symbol) {
    if (cfg.modes.size() != 1)
        throw ConfigError("model and verify-prop41 take exactly one --j mode");
    const auto model = configured_model(cfg, cfg.modes.front());
    const auto report = verify_prop41(model);
    if (print_symbol) std::cout << to_text(model.h_classical) << "\n";
    std::cout << prop41_to_json(report) << "\n";
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    if (cfg.modes.empty()) throw ConfigError("spectrum needs at least one --j mode");
    std::string out = "{\"algebra\":\"" + cfg.algebra_id + "\",\"modes\":[";
    std::vector<std::vector<double>> per_mode;
    for (std::size_t i = 0; i < cfg.modes.size(); ++i) {
        const auto model = configured_model(cfg, cfg.modes[i]);
        const auto sweep = cutoff_sweep(model, cfg.cutoffs, cfg.k, cfg.solver(),
                                        cfg.budget, cfg.threads);
        if (i) out += ",";
        out += sweep_to_json(sweep);
        per_mode.push_back(sweep.entries.back().report.eigenvalues);
    }
    out += "]";
    if (cfg.modes.size() > 1) {
        double ceiling = cfg.ceiling;
        if (ceiling <= 0.0) {
            ceiling = 1.0;
            for (const auto& eigs : per_mode) ceiling += eigs.front();
        }
        out += ",\"multimode\":" +
               multimode_to_json(multimode_spectrum(
                   per_mode, ceiling,
                   cfg.cluster_tol < 0 ? 1e-9 : cfg.cluster_tol));
    }
    out += "}";
    std::cout << out << "\n";
    return 0;
}

int cmd_gap(const RunConfig& cfg) {
    if (cfg.modes.size() != 1) throw ConfigError("gap takes exactly one --j mode");
    const auto model = configured_model(cfg, cfg.modes.front());
    const auto prop = verify_prop41(model);
    const auto sweep = cutoff_sweep(model, cfg.cutoffs, cfg.k, cfg.solver(),
                                    cfg.budget, cfg.threads);
    const auto gap = mass_gap(sweep.entries.back().report, cfg.cluster_tol);
    const bool stable = sweep.entries.size() >= 2 && sweep.gap_delta_rel < 0.05;

    JsonWriter w;
    w.begin_object();
    w.key("gap").value(gap.gap);
    w.key("ground_simple").value(gap.ground_simple);
    w.key("gap_delta_rel").value(sweep.gap_delta_rel);
    w.key("stable").value(stable);
    w.key("c0_number_comparison").value(prop.c0_number_comparison);
    w.key("continuum_reference").begin_object();
    w.key("mass_gap_lower_bound").value(9.0 / 16.0);
    w.key("fundamental").value(17.0 / 16.0);
    w.key("normal_floor").value(24.0 / 16.0);
    w.end_object();
    w.end_object();
    std::string tail = w.str();
    tail.front() = ',';  // splice into the enclosing object
    std::cout << "{\"sweep\":" + sweep_to_json(sweep) + tail + "\n";
    if (!(gap.gap > 0.0)) {
        emit_error("numerical", "clustered gap is not positive");
        return 3;
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.modes.size() != 1) throw ConfigError("sweep takes exactly one --j mode");
    const auto model = configured_model(cfg, cfg.modes.front());
    const auto sweep = cutoff_sweep(model, cfg.cutoffs, cfg.k, cfg.solver(),
                                    cfg.budget, cfg.threads);
    if (cfg.format == "json")
        std::cout << sweep_to_json(sweep) << "\n";
    else
        std::cout << sweep_to_csv(sweep);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"per-mode Yang-Mills quantization toolkit"};
    app.set_config("--config", "", "flat config file; command-line flags override");
    app.allow_config_extras(false);  // unknown config fields are parse errors

    RunConfig cfg;
    cfg.budget = env_int("YMSYM_MEMORY_BUDGET", kDefaultStateBudget);
    cfg.threads = static_cast<int>(env_int("YMSYM_THREADS", 1));

    app.add_option("--seed", cfg.seed, "Krylov start-vector seed");
    app.add_option("--budget", cfg.budget, "max basis states per operator");
    app.add_option("--threads", cfg.threads, "parallel sweep workers");
    app.add_option("--format", cfg.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    auto add_model_options = [&cfg](CLI::App* sub) {
        sub->add_option("--algebra", cfg.algebra_id, "su2, su3, so3, sun:N");
        sub->add_option("--j", cfg.modes, "mode wavevector a,b,c (repeatable)")
            ->delimiter(',');
        sub->add_flag("--two-pi", cfg.two_pi, "scale j by 2*pi in the curl");
        sub->add_flag("--abelian-diagnostic", cfg.abelian_diagnostic,
                      "zero the structure constants");
        sub->add_option("--scale-c", cfg.scale_c,
                        "rescale the structure constants (diagnostic)");
    };
    auto add_spectral_options = [&cfg](CLI::App* sub) {
        sub->add_option("--cutoffs", cfg.cutoffs, "ascending n_max list")
            ->delimiter(',');
        sub->add_option("--k", cfg.k, "number of eigenpairs");
        sub->add_option("--cluster-tol", cfg.cluster_tol,
                        "degeneracy clustering tolerance (<0: auto)");
    };

    auto* lie = app.add_subcommand("lie", "print structure constants and residuals");
    std::string lie_algebra;
    lie->add_option("algebra", lie_algebra, "algebra id")->required();
    lie->fallthrough();

    auto* symbol = app.add_subcommand("symbol", "convert a symbol between orderings");
    std::string sym_expr, sym_from, sym_to;
    int sym_vars = 0;
    bool sym_json = false;
    symbol->add_option("expr", sym_expr, "symbol in the text grammar")->required();
    symbol->add_option("--from", sym_from, "source ordering")->required();
    symbol->add_option("--to", sym_to, "target ordering")->required();
    symbol->add_option("--vars", sym_vars, "declare the variable count");
    symbol->add_flag("--json", sym_json, "emit the term map as JSON");
    symbol->fallthrough();

    auto* model = app.add_subcommand("model", "build a mode and print its symbol");
    auto* model_build = model->add_subcommand("build", "emit symbol text + report");
    model->require_subcommand(1);
    model->fallthrough();
    add_model_options(model_build);
    model_build->fallthrough();

    auto* verify = app.add_subcommand("verify-prop41",
                                      "structural report for the symbol shifts");
    add_model_options(verify);
    verify->fallthrough();

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues per cutoff");
    add_model_options(spectrum);
    add_spectral_options(spectrum);
    spectrum->add_option("--ceiling", cfg.ceiling,
                         "multimode sum-spectrum energy ceiling");
    spectrum->fallthrough();

    auto* gap = app.add_subcommand("gap", "mass gap with stability flag");
    add_model_options(gap);
    add_spectral_options(gap);
    gap->fallthrough();

    auto* sweep = app.add_subcommand("sweep", "cutoff convergence table");
    add_model_options(sweep);
    add_spectral_options(sweep);
    sweep->fallthrough();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::stringstream silent;
        app.exit(e, silent, silent);
        emit_error("config", e.what());
        return 2;
    }

    try {
        if (lie->parsed()) {
            cfg.algebra_id = lie_algebra;
            return cmd_lie(cfg);
        }
        if (symbol->parsed())
            return cmd_symbol(sym_expr, sym_from, sym_to, sym_vars, sym_json);
        if (model->parsed()) return cmd_model(cfg, true);
        if (verify->parsed()) return cmd_model(cfg, false);
        if (spectrum->parsed()) return cmd_spectrum(cfg);
        if (gap->parsed()) return cmd_gap(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        emit_error("config", "no subcommand selected");
        return 2;
    } catch (const ConfigError& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const BudgetError& e) {
        emit_error("budget", e.what());
        return 4;
    } catch (const NumericalError& e) {
        emit_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
}
