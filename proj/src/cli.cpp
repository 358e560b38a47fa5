#include "qnewton/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnewton/catalog.hpp"
#include "qnewton/error.hpp"
#include "qnewton/harness.hpp"
#include "qnewton/rootfind.hpp"

namespace qnewton {
namespace {

/// Flags shared by minimize, compare and roots.
struct CommonFlags {
    std::string method = "nqn";
    std::string delta_set = "0,1,-1";
    double alpha = 1.0;
    std::string h_mode = "power";
    int max_iter = 1000;
    double gtol = 1e-10;
    double xtol = 1e-20;
    std::uint64_t seed = 0;
    double delta0 = 1.0;
    double armijo = 0.5;
    double beta = 0.7;
    double kappa = 0.5;
};

void add_common(CLI::App* app, CommonFlags& f, bool method) {
    if (method)
        app->add_option("--method", f.method, "Method: nqn, rnqn, gnqn, nqn-bt, newton, rand-newton, back")
            ->capture_default_str();
    app->add_option("--delta-set", f.delta_set, "Comma-separated delta values")->capture_default_str();
    app->add_option("--alpha", f.alpha, "Exponent in h(t) = t^(1+alpha)")->capture_default_str();
    app->add_option("--h-mode", f.h_mode, "Perturbation magnitude: power (t^(1+alpha)) or capped (min(1, t^(1+alpha)))")
        ->capture_default_str();
    app->add_option("--max-iter", f.max_iter, "Iteration cap")->capture_default_str();
    app->add_option("--gtol", f.gtol, "Stop when the gradient norm is at most this")->capture_default_str();
    app->add_option("--xtol", f.xtol, "Stop when the step norm is below this")->capture_default_str();
    app->add_option("--seed", f.seed, "Seed for randomized methods")->capture_default_str();
    app->add_option("--delta0", f.delta0, "Backtracking GD initial learning rate")->capture_default_str();
    app->add_option("--armijo", f.armijo, "Armijo constant for line searches")->capture_default_str();
    app->add_option("--beta", f.beta, "Backtracking GD shrink factor")->capture_default_str();
    app->add_option("--kappa", f.kappa, "Backtracking GD learning-rate cap exponent")->capture_default_str();
}

Vector parse_list(const std::string& text, const std::string& what) {
    Vector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidInputError(what + ": '" + item + "' is not a number");
        }
    }
    if (v.empty()) throw InvalidInputError(what + " is empty");
    return v;
}

Params parse_params(const std::vector<std::string>& items) {
    Params p;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw InvalidInputError("--param expects key=value, got " + item);
        p[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return p;
}

void apply_common(const CommonFlags& f, ExperimentSpec& s) {
    s.deltas = parse_list(f.delta_set, "--delta-set");
    s.alpha = f.alpha;
    s.h_mode = parse_h_mode(f.h_mode);
    s.stop.max_iter = f.max_iter;
    s.stop.grad_tol = f.gtol;
    s.stop.step_tol = f.xtol;
    s.seed = f.seed;
    s.method_params.gd.delta0 = f.delta0;
    s.method_params.gd.armijo = f.armijo;
    s.method_params.gd.beta = f.beta;
    s.method_params.gd.kappa = f.kappa;
    s.method_params.line_search.armijo = f.armijo;
    DeltaSchedule(s.deltas, s.alpha, s.h_mode); // validates
}

std::vector<MethodSpec> parse_methods(const std::string& text) {
    std::vector<MethodSpec> out;
    std::stringstream ss(text);
    std::string id;
    while (std::getline(ss, id, ','))
        if (!id.empty()) {
            parse_method(id);
            out.push_back(MethodSpec{id, std::nullopt, std::nullopt, std::nullopt});
        }
    return out;
}

/// "--x0" grammar: comma list, random:<seed>, fill:<value>, fixture:<name>.
/// Random and fill points need the objective dimension, so they are resolved late.
void set_initial_point(const std::string& text, ExperimentSpec& s) {
    if (text.rfind("random:", 0) == 0) {
        s.initial.random_count = 1;
        try {
            s.initial.random_seed = std::stoull(text.substr(7));
        } catch (const std::exception&) {
            throw InvalidInputError("--x0 random:<seed> needs an integer seed");
        }
        return;
    }
    if (text.rfind("fixture:", 0) == 0) {
        const std::string name = text.substr(8);
        try {
            s.initial.points.push_back({name, named_fixture(name)});
        } catch (const UnknownNameError& e) {
            throw InvalidInputError(e.what());
        }
    } else if (text.rfind("fill:", 0) == 0) {
        const double v = parse_list(text.substr(5), "--x0 fill:<value>").at(0);
        ExperimentSpec probe = s;
        s.initial.points.push_back({"fill", Vector(objective_dim(probe), v)});
    } else {
        s.initial.points.push_back({"x0", parse_list(text, "--x0")});
    }
    if (s.dim == 0 && s.objective.rfind("mero:", 0) != 0 && s.objective.rfind("poly:", 0) != 0)
        s.dim = s.initial.points.back().x.size();
}

/// Checks the objective builds and the points match its dimension.
void check_points(const ExperimentSpec& s) {
    const std::size_t dim = objective_dim(s);
    for (const auto& p : s.initial.points)
        if (p.x.size() != dim)
            throw InvalidInputError("initial point '" + p.label + "' has length " + std::to_string(p.x.size()) +
                                    ", objective dimension is " + std::to_string(dim));
}

std::string results_dir() {
    const char* env = std::getenv("QNEWTON_RESULTS_DIR");
    return env && *env ? env : "results";
}

std::string join(const Vector& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + format_number(x[i]);
    return s;
}

std::vector<ResultRow> run_all(std::vector<ExperimentSpec>& specs) {
    std::vector<ResultRow> rows;
    for (auto& s : specs) {
        auto r = run_experiment(s);
        rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    }
    return rows;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Second-order optimization with New Q-Newton's method and baselines", "qnewton"};
    app.require_subcommand(1);

    // minimize
    CommonFlags mf;
    std::string m_function, m_x0, m_out;
    std::size_t m_dim = 0;
    std::vector<std::string> m_params;
    auto* minimize = app.add_subcommand("minimize", "Run one method from one initial point");
    minimize->add_option("--function", m_function, "Catalog objective, griewank-stochastic, mero:gN or poly:<coeffs>")
        ->required();
    minimize->add_option("--dim", m_dim, "Dimension (0: entry default or the length of --x0)")->capture_default_str();
    minimize->add_option("--x0", m_x0, "Comma list, random:<seed>, fill:<value> or fixture:<name>")->required();
    minimize->add_option("--param", m_params, "Objective parameter key=value (repeatable)");
    minimize->add_option("--out", m_out, "Trace path stem (default <results>/<function>__<method>)");
    add_common(minimize, mf, true);

    // compare
    CommonFlags cf;
    cf.method = "newton,nqn,rand-newton,rnqn,nqn-bt,back";
    std::string c_suite, c_spec, c_function, c_out, c_format = "markdown";
    std::vector<std::string> c_x0, c_params;
    std::size_t c_dim = 0;
    unsigned c_workers = 0;
    auto* compare = app.add_subcommand("compare", "Run several methods from several initial points");
    compare->add_option("--suite", c_suite, "Named suite: " + [] {
        std::string s;
        for (const auto& n : suite_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }());
    compare->add_option("--spec", c_spec, "Experiment spec JSON file");
    compare->add_option("--function", c_function, "Objective for an inline experiment");
    compare->add_option("--dim", c_dim, "Dimension for an inline experiment")->capture_default_str();
    compare->add_option("--x0", c_x0, "Initial point (repeatable; same grammar as minimize)");
    compare->add_option("--param", c_params, "Objective parameter key=value (repeatable)");
    compare->add_option("--methods,--method", cf.method, "Comma-separated method ids")->capture_default_str();
    compare->add_option("--workers", c_workers, "Worker threads (0: hardware concurrency)")->capture_default_str();
    compare->add_option("--format", c_format, "Report format: markdown or csv")->capture_default_str();
    compare->add_option("--out", c_out, "Directory for traces and the CSV report (default: $QNEWTON_RESULTS_DIR or results)");
    add_common(compare, cf, false);

    // roots
    CommonFlags rf;
    std::string r_poly, r_builtin, r_x0;
    auto* roots = app.add_subcommand("roots", "Find a root of g by minimizing |g|^2");
    auto* poly_opt = roots->add_option("--poly", r_poly, "Coefficients, highest degree first (a, a+bi)");
    roots->add_option("--builtin", r_builtin, "Built-in function g1..g6")->excludes(poly_opt);
    roots->add_option("--x0", r_x0, "Start point re,im")->required();
    add_common(roots, rf, true);

    // bench
    std::string b_suite;
    std::string b_out;
    bool b_json = false, b_suites = false;
    unsigned b_workers = 0;
    auto* bench = app.add_subcommand("bench", "List the benchmark catalog or run named suites");
    bench->add_flag("--json", b_json, "Print the catalog as JSON");
    bench->add_flag("--list-suites", b_suites, "Print the suite names");
    bench->add_option("--suite", b_suite, "Run a named suite, or 'all'");
    bench->add_option("--out", b_out, "Directory for traces and CSV reports (default: $QNEWTON_RESULTS_DIR or results)");
    bench->add_option("--workers", b_workers, "Worker threads (0: hardware concurrency)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*minimize) {
            ExperimentSpec s;
            s.name = "minimize";
            s.objective = m_function;
            s.dim = m_dim;
            s.params = parse_params(m_params);
            s.methods = parse_methods(mf.method);
            if (s.methods.size() != 1) throw InvalidInputError("minimize takes exactly one --method");
            apply_common(mf, s);
            set_initial_point(m_x0, s);
            check_points(s);
            s.workers = 1;
            std::vector<ResultRow> rows = run_experiment(s);
            ResultRow& row = rows.at(0);
            const std::string stem =
                m_out.empty() ? (std::filesystem::path(results_dir()) / (m_function + "__" + s.methods[0].id)).string()
                              : m_out;
            if (!row.trace.records.empty()) {
                write_trace(row.trace, stem);
                row.trace_path = stem;
            }
            out << emit_report(rows, ReportFormat::Csv);
            if (!row.trace.records.empty()) {
                out << "final_x: " << join(row.trace.last().x) << '\n';
                out << "trace: " << stem << ".csv\n";
            }
            for (const auto& w : row.trace.warnings) err << "warning: " << w << '\n';
            if (!row.trace.detail.empty()) out << "detail: " << row.trace.detail << '\n';
            return kExitOk;
        }

        if (*compare) {
            const int sources = !c_suite.empty() + !c_spec.empty() + !c_function.empty();
            if (sources != 1) throw InvalidInputError("compare needs exactly one of --suite, --spec, --function");
            std::vector<ExperimentSpec> specs;
            if (!c_suite.empty()) {
                try {
                    specs = suite(c_suite);
                } catch (const UnknownNameError& e) {
                    throw InvalidInputError(e.what());
                }
                const auto methods = parse_methods(cf.method);
                for (auto& s : specs) {
                    if (compare->count("--methods")) s.methods = methods;
                    if (compare->count("--max-iter")) s.stop.max_iter = cf.max_iter;
                }
            } else if (!c_spec.empty()) {
                specs.push_back(load_experiment_spec(c_spec));
            } else {
                ExperimentSpec s;
                s.name = "compare-" + c_function;
                s.objective = c_function;
                s.dim = c_dim;
                s.params = parse_params(c_params);
                s.methods = parse_methods(cf.method);
                apply_common(cf, s);
                if (c_x0.empty()) throw InvalidInputError("inline compare needs at least one --x0");
                for (const auto& x : c_x0) set_initial_point(x, s);
                specs.push_back(std::move(s));
            }
            const std::string dir = !c_out.empty() ? c_out : results_dir();
            for (auto& s : specs) {
                if (c_workers) s.workers = c_workers;
                s.output_dir = dir;
                s.validate();
                check_points(s);
            }
            const auto rows = run_all(specs);
            if (c_format != "markdown" && c_format != "csv") throw InvalidInputError("--format must be markdown or csv");
            out << emit_report(rows, c_format == "csv" ? ReportFormat::Csv : ReportFormat::Markdown);
            return kExitOk;
        }

        if (*roots) {
            if (r_poly.empty() == r_builtin.empty()) throw InvalidInputError("roots needs one of --poly or --builtin");
            MeroFunction m;
            if (!r_poly.empty()) {
                m = polynomial(parse_coefficients(r_poly), "poly");
            } else {
                try {
                    m = builtin_mero(r_builtin);
                } catch (const UnknownNameError& e) {
                    throw InvalidInputError(e.what());
                }
            }
            const Vector z0 = parse_list(r_x0, "--x0");
            if (z0.size() != 2) throw InvalidInputError("--x0 for roots must be re,im");
            ExperimentSpec s;
            apply_common(rf, s);
            const RootResult r = find_root(m, Complex(z0[0], z0[1]), parse_method(rf.method), s.stop,
                                           DeltaSchedule(s.deltas, s.alpha, s.h_mode), s.seed);
            out << r.json() << '\n';
            return kExitOk;
        }

        if (*bench) {
            if (b_suites) {
                for (const auto& n : suite_names()) out << n << '\n';
                return kExitOk;
            }
            if (!b_suite.empty()) {
                std::vector<ExperimentSpec> specs;
                const std::vector<std::string> names =
                    b_suite == "all" ? suite_names() : std::vector<std::string>{b_suite};
                for (const auto& n : names) {
                    std::vector<ExperimentSpec> more;
                    try {
                        more = suite(n);
                    } catch (const UnknownNameError& e) {
                        throw InvalidInputError(e.what());
                    }
                    specs.insert(specs.end(), more.begin(), more.end());
                }
                const std::string dir = !b_out.empty() ? b_out : results_dir();
                for (auto& s : specs) {
                    if (b_workers) s.workers = b_workers;
                    s.output_dir = dir;
                }
                out << emit_report(run_all(specs), ReportFormat::Markdown);
                return kExitOk;
            }
            if (b_json) {
                out << catalog_json() << '\n';
                return kExitOk;
            }
            for (const auto& info : benchmark_catalog()) {
                out << info.id;
                if (!info.aliases.empty()) {
                    out << " (";
                    for (std::size_t i = 0; i < info.aliases.size(); ++i) out << (i ? ", " : "") << info.aliases[i];
                    out << ")";
                }
                out << ": " << info.formula << '\n';
            }
            return kExitOk;
        }
    } catch (const InvalidInputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnknownNameError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

} // namespace qnewton
