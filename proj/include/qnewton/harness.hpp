#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnewton/catalog.hpp"
#include "qnewton/optimizers.hpp"

namespace qnewton {

struct NamedPoint {
    std::string label;
    Vector x;
};

/// Explicit points, or `count` points drawn uniformly from [box_low, box_high]^dim.
struct InitialPoints {
    std::vector<NamedPoint> points;
    std::size_t random_count = 0;
    double box_low = -1.0;
    double box_high = 1.0;
    std::uint64_t random_seed = 0;
};

struct MethodSpec {
    std::string id;
    std::optional<Vector> deltas;
    std::optional<double> alpha;
    std::optional<int> max_iter;
};

/// One objective, several methods and initial points.
/// Objective ids: any catalog name, "griewank-stochastic" (params sigma, batch,
/// sample_seed), "mero:g1".."mero:g6" or "poly:<coefficients>" (x = (Re z, Im z)).
struct ExperimentSpec {
    std::string name = "experiment";
    std::string objective;
    std::size_t dim = 0;
    Params params;
    InitialPoints initial;
    std::vector<MethodSpec> methods;
    StopCriteria stop;
    Vector deltas{0.0, 1.0, -1.0};
    double alpha = 1.0;
    HMode h_mode = HMode::Power;
    MethodParams method_params;
    std::uint64_t seed = 0;
    unsigned workers = 0;   // 0 = hardware concurrency
    std::string output_dir; // empty: traces are not written

    /// Throws InvalidInputError unless there is at least one method and one point.
    void validate() const;
};

/// Parses the JSON experiment format documented in the README; throws InvalidInputError.
ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::string& path);

struct ResultRow {
    std::string method;
    std::string objective;
    std::string point;
    std::string x0_digest;
    std::uint64_t seed = 0;
    int iterations = 0;
    double final_f = 0.0;
    double final_grad_norm = 0.0;
    double wall_seconds = 0.0;
    std::string termination;
    std::string trace_path; // stem of the persisted trace, empty if not written
    Trace trace;
};

/// FNV-1a 64-bit digest of the point's IEEE-754 bytes, as 16 hex digits.
std::string digest(const Vector& x);

/// Dimension of the spec's objective; throws InvalidInputError / UnknownNameError
/// when the objective cannot be built.
std::size_t objective_dim(const ExperimentSpec& spec);

/// Points the spec resolves to (random points are drawn once, deterministically).
std::vector<NamedPoint> resolve_points(const ExperimentSpec& spec);

/// Runs methods x points on a bounded worker pool; rows come back in spec order
/// (method-major). Run failures become termination statuses, never exceptions.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

enum class ReportFormat { Csv, Markdown };

inline constexpr const char* kReportColumns[] = {"method",          "objective",    "point",
                                                 "x0_digest",       "seed",         "iterations",
                                                 "final_f",         "final_grad_norm", "wall_seconds",
                                                 "termination"};

/// 6 significant digits, exponent without padding zeros ("1e-10").
std::string format_number(double v);
std::string emit_report(const std::vector<ResultRow>& rows, ReportFormat format);
/// Inverse of the CSV report (trace fields left empty); throws InvalidInputError.
std::vector<ResultRow> parse_report_csv(const std::string& text);

/// Named reproduction suites: example7, rosenbrock30, styblinski100,
/// griewank15, protein-abbba, protein-10mer, griewank-stochastic, roots, appendix.
const std::vector<std::string>& suite_names();
/// Throws UnknownNameError.
std::vector<ExperimentSpec> suite(const std::string& name);

} // namespace qnewton
