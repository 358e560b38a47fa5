#include "qnewton/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qnewton/error.hpp"
#include "qnewton/rootfind.hpp"

namespace qnewton {

void ExperimentSpec::validate() const {
    if (objective.empty()) throw InvalidInputError("experiment '" + name + "': objective is required");
    if (methods.empty()) throw InvalidInputError("experiment '" + name + "': at least one method is required");
    if (initial.points.empty() && initial.random_count == 0)
        throw InvalidInputError("experiment '" + name + "': at least one initial point is required");
    if (initial.random_count > 0 && !(initial.box_low < initial.box_high))
        throw InvalidInputError("experiment '" + name + "': random box needs low < high");
    for (const auto& m : methods) parse_method(m.id);
    stop.validate();
}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

using nlohmann::json;

Vector json_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw InvalidInputError(what + " must be an array of numbers");
    Vector v;
    for (const auto& e : j) {
        if (!e.is_number()) throw InvalidInputError(what + " must be an array of numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

NamedPoint json_point(const json& j, std::size_t index) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const std::string prefix = "fixture:";
        const std::string name = s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
        try {
            return {name, named_fixture(name)};
        } catch (const UnknownNameError& e) {
            throw InvalidInputError(e.what());
        }
    }
    if (j.is_object()) {
        const std::string label = j.value("label", "p" + std::to_string(index + 1));
        if (!j.contains("x")) throw InvalidInputError("initial point object needs an 'x' array");
        return {label, json_vector(j.at("x"), "initial point")};
    }
    return {"p" + std::to_string(index + 1), json_vector(j, "initial point")};
}

std::string param_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw InvalidInputError("experiment params must be strings or numbers");
}

} // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(std::string("experiment spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInputError("experiment spec must be a JSON object");

    ExperimentSpec s;
    try {
        s.name = j.value("name", s.name);
        if (!j.contains("objective")) throw InvalidInputError("experiment spec needs 'objective'");
        s.objective = j.at("objective").get<std::string>();
        s.dim = j.value("dim", std::size_t{0});
        if (j.contains("params"))
            for (const auto& [k, v] : j.at("params").items()) s.params[k] = param_string(v);

        if (!j.contains("initial_points")) throw InvalidInputError("experiment spec needs 'initial_points'");
        const json& ip = j.at("initial_points");
        if (ip.is_array()) {
            for (std::size_t i = 0; i < ip.size(); ++i) s.initial.points.push_back(json_point(ip[i], i));
        } else if (ip.is_object()) {
            s.initial.random_count = ip.value("count", std::size_t{0});
            s.initial.random_seed = ip.value("seed", std::uint64_t{0});
            if (ip.contains("box")) {
                const Vector box = json_vector(ip.at("box"), "box");
                if (box.size() != 2) throw InvalidInputError("box must be [low, high]");
                s.initial.box_low = box[0];
                s.initial.box_high = box[1];
            }
        } else {
            throw InvalidInputError("'initial_points' must be a list or a {count, box, seed} object");
        }

        if (!j.contains("methods") || !j.at("methods").is_array())
            throw InvalidInputError("experiment spec needs a 'methods' list");
        for (const auto& m : j.at("methods")) {
            MethodSpec ms;
            if (m.is_string()) {
                ms.id = m.get<std::string>();
            } else {
                ms.id = m.at("id").get<std::string>();
                if (m.contains("deltas")) ms.deltas = json_vector(m.at("deltas"), "deltas");
                if (m.contains("alpha")) ms.alpha = m.at("alpha").get<double>();
                if (m.contains("max_iter")) ms.max_iter = m.at("max_iter").get<int>();
            }
            s.methods.push_back(std::move(ms));
        }

        if (j.contains("stop")) {
            const json& st = j.at("stop");
            s.stop.max_iter = st.value("max_iter", s.stop.max_iter);
            s.stop.grad_tol = st.value("grad_tol", s.stop.grad_tol);
            s.stop.step_tol = st.value("step_tol", s.stop.step_tol);
            s.stop.f_divergence_cap = st.value("f_divergence_cap", s.stop.f_divergence_cap);
            s.stop.x_divergence_cap = st.value("x_divergence_cap", s.stop.x_divergence_cap);
        }
        if (j.contains("schedule")) {
            const json& sc = j.at("schedule");
            if (sc.contains("deltas")) s.deltas = json_vector(sc.at("deltas"), "deltas");
            s.alpha = sc.value("alpha", s.alpha);
            if (sc.contains("h_mode")) s.h_mode = parse_h_mode(sc.at("h_mode").get<std::string>());
        }
        s.seed = j.value("seed", s.seed);
        s.workers = j.value("workers", s.workers);
        s.output_dir = j.value("output_dir", s.output_dir);
    } catch (const json::exception& e) {
        throw InvalidInputError(std::string("experiment spec has a malformed field: ") + e.what());
    }
    s.validate();
    return s;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot read experiment spec " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_spec(ss.str());
}

// ---------------------------------------------------------------------------
// Execution

std::string digest(const Vector& x) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : x) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct BuiltObjective {
    std::optional<Objective> deterministic;
    std::optional<StochasticObjective> stochastic;
    std::size_t dim = 0;
};

double number_param(const Params& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw InvalidInputError("parameter '" + key + "' is not a number: " + it->second);
    }
}

BuiltObjective build_objective(const ExperimentSpec& spec) {
    BuiltObjective b;
    const std::string& id = spec.objective;
    if (id == "griewank-stochastic") {
        const std::size_t dim = spec.dim == 0 ? 10 : spec.dim;
        const double sigma = number_param(spec.params, "sigma", std::sqrt(0.1));
        const auto batch = static_cast<std::size_t>(number_param(spec.params, "batch", 10.0));
        const auto sample_seed = static_cast<std::uint64_t>(number_param(spec.params, "sample_seed", 0.0));
        b.stochastic = make_stochastic_griewank(dim, sigma, batch, sample_seed);
        b.dim = dim;
    } else if (id.rfind("mero:", 0) == 0) {
        b.deterministic = mero_objective(builtin_mero(id.substr(5)));
        b.dim = 2;
    } else if (id.rfind("poly:", 0) == 0) {
        b.deterministic = mero_objective(polynomial(parse_coefficients(id.substr(5)), id));
        b.dim = 2;
    } else {
        b.deterministic = make_benchmark(id, spec.dim, spec.params);
        b.dim = b.deterministic->dim();
    }
    return b;
}

std::uint64_t run_seed(std::uint64_t base, std::size_t method_index, std::size_t point_index) {
    return base * 1000003ULL + method_index * 1009ULL + point_index;
}

std::string safe_label(std::string s) {
    for (char& c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
    return s;
}

} // namespace

std::size_t objective_dim(const ExperimentSpec& spec) { return build_objective(spec).dim; }

std::vector<NamedPoint> resolve_points(const ExperimentSpec& spec) {
    std::vector<NamedPoint> pts = spec.initial.points;
    if (spec.initial.random_count > 0) {
        const std::size_t dim = build_objective(spec).dim;
        Rng rng(spec.initial.random_seed);
        for (std::size_t i = 0; i < spec.initial.random_count; ++i) {
            Vector x(dim);
            for (double& v : x) v = spec.initial.box_low + (spec.initial.box_high - spec.initial.box_low) * uniform01(rng);
            pts.push_back({"r" + std::to_string(i + 1), std::move(x)});
        }
    }
    return pts;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const BuiltObjective obj = build_objective(spec);
    const std::vector<NamedPoint> points = resolve_points(spec);
    const std::size_t n_jobs = spec.methods.size() * points.size();
    std::vector<ResultRow> rows(n_jobs);

    auto job = [&](std::size_t k) {
        const std::size_t mi = k / points.size();
        const std::size_t pi = k % points.size();
        const MethodSpec& ms = spec.methods[mi];
        const NamedPoint& pt = points[pi];
        ResultRow& row = rows[k];
        row.method = ms.id;
        row.objective = spec.objective;
        row.point = pt.label;
        row.x0_digest = digest(pt.x);
        row.seed = run_seed(spec.seed, mi, pi);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Method method = parse_method(ms.id);
            const DeltaSchedule sched(ms.deltas.value_or(spec.deltas), ms.alpha.value_or(spec.alpha), spec.h_mode);
            StopCriteria stop = spec.stop;
            if (ms.max_iter) stop.max_iter = *ms.max_iter;
            row.trace = obj.stochastic ? run(method, *obj.stochastic, pt.x, sched, stop, row.seed, spec.method_params)
                                       : run(method, *obj.deterministic, pt.x, sched, stop, row.seed, spec.method_params);
            const IterationRecord& last = row.trace.last();
            row.iterations = row.trace.iterations();
            row.final_f = last.f;
            row.final_grad_norm = last.grad_norm;
            row.termination = to_string(row.trace.termination);
        } catch (const std::exception& e) {
            row.iterations = 0;
            row.final_f = std::nan("");
            row.final_grad_norm = std::nan("");
            row.termination = std::string("invalid-run: ") + e.what();
        }
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    unsigned workers = spec.workers != 0 ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_jobs));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < n_jobs; k = next++) job(k);
        });
    for (auto& t : pool) t.join();

    if (!spec.output_dir.empty()) {
        const std::filesystem::path dir = std::filesystem::path(spec.output_dir) / safe_label(spec.name);
        for (auto& row : rows) {
            if (row.trace.records.empty()) continue;
            const std::string stem = (dir / (safe_label(row.method) + "__" + safe_label(row.point))).string();
            write_trace(row.trace, stem);
            row.trace_path = stem;
        }
        std::ofstream out(std::filesystem::path(spec.output_dir) / (safe_label(spec.name) + ".csv"));
        if (!out) throw Error("cannot write report under " + spec.output_dir);
        out << emit_report(rows, ReportFormat::Csv);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Reports

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    std::string s = buf;
    const std::size_t e = s.find('e');
    if (e != std::string::npos) {
        std::size_t digits = e + 2; // after the sign
        while (digits + 1 < s.size() && s[digits] == '0') s.erase(digits, 1);
    }
    return s;
}

namespace {

std::vector<std::string> row_cells(const ResultRow& r) {
    return {r.method,
            r.objective,
            r.point,
            r.x0_digest,
            std::to_string(r.seed),
            std::to_string(r.iterations),
            format_number(r.final_f),
            format_number(r.final_grad_norm),
            format_number(r.wall_seconds),
            r.termination};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

} // namespace

std::string emit_report(const std::vector<ResultRow>& rows, ReportFormat format) {
    std::string out;
    const std::size_t ncol = std::size(kReportColumns);
    if (format == ReportFormat::Csv) {
        for (std::size_t c = 0; c < ncol; ++c) out += (c ? "," : "") + std::string(kReportColumns[c]);
        out += '\n';
        for (const auto& r : rows) {
            const auto cells = row_cells(r);
            for (std::size_t c = 0; c < ncol; ++c) out += (c ? "," : "") + csv_escape(cells[c]);
            out += '\n';
        }
        return out;
    }
    out += "|";
    for (const char* col : kReportColumns) out += " " + std::string(col) + " |";
    out += "\n|";
    for (std::size_t c = 0; c < ncol; ++c) out += "---|";
    out += '\n';
    for (const auto& r : rows) {
        out += "|";
        for (const auto& cell : row_cells(r)) out += " " + cell + " |";
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InvalidInputError("report is empty");
    const auto header = split_csv_line(line);
    const std::size_t ncol = std::size(kReportColumns);
    if (header.size() != ncol) throw InvalidInputError("report header has the wrong number of columns");
    for (std::size_t c = 0; c < ncol; ++c)
        if (header[c] != kReportColumns[c]) throw InvalidInputError("unexpected report column " + header[c]);
    std::vector<ResultRow> rows;
    auto number = [](const std::string& s) {
        try {
            return std::stod(s);
        } catch (const std::exception&) {
            throw InvalidInputError("report cell is not a number: " + s);
        }
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != ncol) throw InvalidInputError("report row has the wrong number of columns");
        ResultRow r;
        r.method = cells[0];
        r.objective = cells[1];
        r.point = cells[2];
        r.x0_digest = cells[3];
        r.seed = static_cast<std::uint64_t>(std::stoull(cells[4]));
        r.iterations = std::stoi(cells[5]);
        r.final_f = number(cells[6]);
        r.final_grad_norm = number(cells[7]);
        r.wall_seconds = number(cells[8]);
        r.termination = cells[9];
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

std::vector<MethodSpec> methods(std::initializer_list<const char*> ids) {
    std::vector<MethodSpec> out;
    for (const char* id : ids) out.push_back(MethodSpec{id, std::nullopt, std::nullopt, std::nullopt});
    return out;
}

ExperimentSpec fixture_spec(std::string name, std::string objective, std::size_t dim,
                            const std::vector<std::string>& fixture_names, std::vector<MethodSpec> ms) {
    ExperimentSpec s;
    s.name = std::move(name);
    s.objective = std::move(objective);
    s.dim = dim;
    for (const auto& f : fixture_names) s.initial.points.push_back({f, named_fixture(f)});
    s.methods = std::move(ms);
    return s;
}

const std::vector<MethodSpec> kAllMethods =
    methods({"newton", "nqn", "rand-newton", "rnqn", "nqn-bt", "back"});

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"example7",      "rosenbrock30",  "styblinski100",
                                                   "griewank15",    "protein-abbba", "protein-10mer",
                                                   "griewank-stochastic", "roots",   "appendix"};
    return names;
}

std::vector<ExperimentSpec> suite(const std::string& name) {
    if (name == "example7") return {fixture_spec("example7", "ex07", 2, {"ex07"}, kAllMethods)};
    if (name == "rosenbrock30") return {fixture_spec("rosenbrock30", "rosenbrock", 30, {"rosenbrock30"}, kAllMethods)};
    if (name == "styblinski100")
        return {fixture_spec("styblinski100", "styblinski-tang", 100, {"styblinski100"}, kAllMethods)};
    if (name == "griewank15")
        return {fixture_spec("griewank15", "griewank", 15, {"griewank15-p1", "griewank15-p2"}, kAllMethods)};
    if (name == "protein-abbba") {
        ExperimentSpec s = fixture_spec("protein-abbba", "protein", 0, {"abbba-p1", "abbba-p2", "abbba-p3"}, kAllMethods);
        s.params["seq"] = "ABBBA";
        return {s};
    }
    if (name == "protein-10mer") {
        ExperimentSpec s = fixture_spec("protein-10mer", "protein", 0,
                                        {"abbbababab-p1", "abbbababab-p2", "abbbababab-p3", "abbbababab-p4"},
                                        kAllMethods);
        s.params["seq"] = "ABBBABABAB";
        return {s};
    }
    if (name == "griewank-stochastic") {
        ExperimentSpec s = fixture_spec("griewank-stochastic", "griewank-stochastic", 10, {"griewank10-p1"},
                                        methods({"newton", "nqn", "rand-newton", "rnqn", "back"}));
        s.params["sigma"] = "0.31622776601683794";
        s.params["batch"] = "10";
        return {s};
    }
    if (name == "roots") {
        std::vector<ExperimentSpec> out;
        for (const auto& start : root_starts()) {
            ExperimentSpec s;
            s.name = "roots-" + start.name;
            s.objective = "mero:" + start.function;
            s.initial.points.push_back({start.name, {start.z0.real(), start.z0.imag()}});
            s.methods = methods({"newton", "nqn", "rand-newton", "rnqn", "back"});
            out.push_back(std::move(s));
        }
        return out;
    }
    if (name == "appendix") {
        std::vector<ExperimentSpec> out;
        for (const auto& info : benchmark_catalog()) {
            if (info.example == 0 || info.optional) continue;
            out.push_back(fixture_spec("appendix-" + info.id, info.id, info.default_dim, info.fixtures, kAllMethods));
        }
        return out;
    }
    throw UnknownNameError("unknown suite: " + name);
}

} // namespace qnewton
