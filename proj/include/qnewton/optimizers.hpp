#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qnewton/linalg.hpp"
#include "qnewton/objective.hpp"
#include "qnewton/spectral.hpp"

namespace qnewton {

using Rng = std::mt19937_64;

/// Uniform draw in [0, 1) from the top 53 bits (platform independent, unlike
/// std::uniform_real_distribution).
double uniform01(Rng& rng);

enum class HMode { Power, Capped, Custom };
enum class Selection { Sequential, RandomPerIteration };
enum class SelectMode { Plain, Floor };

/// "power" or "capped"; throws InvalidInputError for anything else.
HMode parse_h_mode(const std::string& name);
std::string to_string(HMode m);

/// Perturbation set Delta, exponent alpha and magnitude function h.
class DeltaSchedule {
public:
    /// Defaults: Delta = {0, 1, -1}, alpha = 1, h(t) = t^(1 + alpha), sequential.
    DeltaSchedule();
    /// Throws InvalidInputError for an empty or non-distinct delta list,
    /// alpha <= 0, or h_mode Custom without a function.
    DeltaSchedule(Vector deltas, double alpha, HMode h_mode = HMode::Power,
                  Selection selection = Selection::Sequential);

    /// |Delta| = count values 0, 1, -1, 2, -2, ... (the default set extended).
    static DeltaSchedule symmetric(std::size_t count, double alpha = 1.0);

    const Vector& deltas() const noexcept { return deltas_; }
    double alpha() const noexcept { return alpha_; }
    HMode h_mode() const noexcept { return h_mode_; }
    Selection selection() const noexcept { return selection_; }
    /// inf over i != j of |delta_i - delta_j|; 0 for a single delta.
    double min_gap() const noexcept { return min_gap_; }
    double random_low() const noexcept { return random_low_; }
    double random_high() const noexcept { return random_high_; }

    double h(double t) const;

    DeltaSchedule& with_selection(Selection s);
    DeltaSchedule& with_h_mode(HMode m);
    DeltaSchedule& with_custom_h(std::function<double(double)> h, std::string tag);
    /// Interval for random-per-iteration draws; throws unless low < high.
    DeltaSchedule& with_random_interval(double low, double high);

    std::string describe() const;

private:
    Vector deltas_;
    double alpha_ = 1.0;
    HMode h_mode_ = HMode::Power;
    Selection selection_ = Selection::Sequential;
    double min_gap_ = 0.0;
    double random_low_ = -2.0;
    double random_high_ = 2.0;
    std::function<double(double)> custom_h_;
    std::string custom_tag_;
};

struct StopCriteria {
    int max_iter = 1000;
    double grad_tol = 1e-10;
    double step_tol = 1e-20;
    double f_divergence_cap = 1e100;
    double x_divergence_cap = 1e10;

    /// Throws InvalidInputError on negative tolerances or max_iter < 1.
    void validate() const;
};

struct IterationRecord {
    int index = 0;
    Vector x;
    double f = 0.0;
    double grad_norm = 0.0;
    std::optional<double> delta_used;
    double step_norm = 0.0;
    int ls_backtracks = 0;
    std::int64_t wall_ns = 0;
};

enum class Termination { Converged, MaxIter, Diverged, NumericalError };

std::string to_string(Termination t);

/// records[0] describes x0 (no step taken); records[k] the point after step k.
struct Trace {
    std::string method;
    std::string objective;
    std::uint64_t seed = 0;
    std::vector<IterationRecord> records;
    Termination termination = Termination::MaxIter;
    std::string detail;
    std::vector<std::string> warnings;

    int iterations() const noexcept { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
    const IterationRecord& last() const { return records.back(); }
};

// ---------------------------------------------------------------------------
// Step rules

struct DeltaChoice {
    double delta = 0.0;
    SymMatrix a;
    spectral::SpectralDecomposition decomp;
};

/// Numerical-rank tolerance: dim * machine epsilon * max |eig|; eigenvalues at or
/// below it make the matrix count as singular.
double singularity_threshold(const spectral::SpectralDecomposition& decomp);

/// First delta whose A = H + delta h(grad_norm) Id passes the mode's test, in
/// schedule order; random-per-iteration mode tries 0 (when the schedule has it)
/// and then random draws. Throws NoValidDeltaError when the schedule is exhausted.
DeltaChoice select_delta(const SymMatrix& h, double grad_norm, const DeltaSchedule& sched, SelectMode mode,
                         Rng* rng = nullptr);

struct LineSearchParams {
    double beta_start = 1.0;
    double rho = 0.5;
    double armijo = 0.5;
    int max_halvings = 100;
};

struct BacktrackingGdParams {
    double delta0 = 1.0;
    double armijo = 0.5;
    double beta = 0.7;
    double kappa = 0.5;
    int max_growth = 100;
    int max_reductions = 200;
};

/// Value and gradient at a point, computed once and shared by the step rules.
struct PointEval {
    Vector x;
    double f = 0.0;
    Vector grad;
    double grad_norm = 0.0;
};

PointEval evaluate_point(const Objective& obj, const Vector& x);

/// What a step rule produced; f and gradient at x_next are filled in by the caller.
struct StepOutcome {
    Vector x_next;
    std::optional<double> delta_used;
    int ls_backtracks = 0;
    double step_norm = 0.0;
    double x_next_f = 0.0; // valid when has_x_next_f
    bool has_x_next_f = false;
};

StepOutcome nqn_step(const Objective& obj, const PointEval& at, const DeltaSchedule& sched, Rng* rng = nullptr);
StepOutcome nqn_backtracking_step(const Objective& obj, const PointEval& at, const DeltaSchedule& sched,
                                  const LineSearchParams& ls = {});
StepOutcome newton_step(const Objective& obj, const PointEval& at);
/// damping = nullopt draws uniformly from (0, 2).
StepOutcome random_damping_newton_step(const Objective& obj, const PointEval& at, Rng& rng,
                                       std::optional<double> damping = std::nullopt);
/// lr carries the previous learning rate in and the accepted one out.
StepOutcome backtracking_gd_step(const Objective& obj, const PointEval& at, double& lr,
                                 const BacktrackingGdParams& params = {});

/// One full step from x with the new point's value and gradient norm recorded.
struct StepResult {
    Vector x_next;
    IterationRecord record;
};
StepResult nqn_step(const Objective& obj, const Vector& x, const DeltaSchedule& sched, Rng* rng = nullptr);
StepResult nqn_backtracking_step(const Objective& obj, const Vector& x, const DeltaSchedule& sched,
                                 const LineSearchParams& ls = {});
StepResult newton_step(const Objective& obj, const Vector& x);
StepResult random_damping_newton_step(const Objective& obj, const Vector& x, Rng& rng,
                                      std::optional<double> damping = std::nullopt);
StepResult backtracking_gd_step(const Objective& obj, const Vector& x, double& lr,
                                const BacktrackingGdParams& params = {});

// ---------------------------------------------------------------------------
// Driver

enum class Method { Nqn, RandomNqn, GeneralizedNqn, NqnBacktracking, Newton, RandomDampingNewton, BacktrackingGd };

/// Identifiers: nqn, rnqn, gnqn, nqn-bt (alias nqn-backtracking), newton,
/// rand-newton, back. Throws UnknownNameError.
Method parse_method(const std::string& name);
std::string method_id(Method m);
const std::vector<std::string>& method_ids();

struct MethodParams {
    LineSearchParams line_search;
    BacktrackingGdParams gd;
};

/// Schedule actually used by a method: rnqn switches to random-per-iteration
/// selection, gnqn to the capped h unless a custom h is set.
DeltaSchedule effective_schedule(Method m, const DeltaSchedule& sched);

Trace run(Method method, const Objective& obj, const Vector& x0, const DeltaSchedule& sched = {},
          const StopCriteria& stop = {}, std::uint64_t seed = 0, const MethodParams& params = {});

/// Stochastic variant: the step from iterate k, and the record of iterate k,
/// use the mini-batch for step index k.
Trace run(Method method, const StochasticObjective& obj, const Vector& x0, const DeltaSchedule& sched = {},
          const StopCriteria& stop = {}, std::uint64_t seed = 0, const MethodParams& params = {});

// ---------------------------------------------------------------------------
// Serialization

inline constexpr const char* kTraceCsvHeader = "iter,f,grad_norm,delta,step_norm,ls_backtracks,wall_ns";

std::string trace_csv(const Trace& trace);
std::string trace_json(const Trace& trace);
/// Writes <stem>.csv and <stem>.json; throws Error on I/O failure.
void write_trace(const Trace& trace, const std::string& stem);

} // namespace qnewton
