#include "qnewton/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "qnewton/error.hpp"

namespace qnewton {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------
// DeltaSchedule

DeltaSchedule::DeltaSchedule() : DeltaSchedule(Vector{0.0, 1.0, -1.0}, 1.0) {}

DeltaSchedule::DeltaSchedule(Vector deltas, double alpha, HMode h_mode, Selection selection)
    : deltas_(std::move(deltas)), alpha_(alpha), h_mode_(h_mode), selection_(selection) {
    if (deltas_.empty()) throw InvalidInputError("delta schedule: at least one delta is required");
    if (!all_finite(deltas_)) throw InvalidInputError("delta schedule: deltas must be finite");
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) throw InvalidInputError("delta schedule: alpha must be positive");
    if (h_mode_ == HMode::Custom) throw InvalidInputError("delta schedule: use with_custom_h for a custom h");
    min_gap_ = deltas_.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < deltas_.size(); ++i) {
        for (std::size_t j = i + 1; j < deltas_.size(); ++j) {
            const double gap = std::abs(deltas_[i] - deltas_[j]);
            if (gap == 0.0) throw InvalidInputError("delta schedule: deltas must be pairwise distinct");
            min_gap_ = std::min(min_gap_, gap);
        }
    }
}

DeltaSchedule DeltaSchedule::symmetric(std::size_t count, double alpha) {
    if (count == 0) throw InvalidInputError("delta schedule: at least one delta is required");
    Vector d{0.0};
    for (int k = 1; d.size() < count; ++k) {
        d.push_back(static_cast<double>(k));
        if (d.size() < count) d.push_back(-static_cast<double>(k));
    }
    return DeltaSchedule(std::move(d), alpha);
}

double DeltaSchedule::h(double t) const {
    switch (h_mode_) {
    case HMode::Power:
        return std::pow(t, 1.0 + alpha_);
    case HMode::Capped:
        return std::min(1.0, std::pow(t, 1.0 + alpha_));
    case HMode::Custom:
        return custom_h_(t);
    }
    return 0.0;
}

DeltaSchedule& DeltaSchedule::with_selection(Selection s) {
    selection_ = s;
    return *this;
}

DeltaSchedule& DeltaSchedule::with_h_mode(HMode m) {
    if (m == HMode::Custom && !custom_h_) throw InvalidInputError("delta schedule: use with_custom_h for a custom h");
    h_mode_ = m;
    return *this;
}

DeltaSchedule& DeltaSchedule::with_custom_h(std::function<double(double)> h, std::string tag) {
    if (!h) throw InvalidInputError("delta schedule: custom h must be callable");
    custom_h_ = std::move(h);
    custom_tag_ = std::move(tag);
    h_mode_ = HMode::Custom;
    return *this;
}

DeltaSchedule& DeltaSchedule::with_random_interval(double low, double high) {
    if (!(low < high) || !std::isfinite(low) || !std::isfinite(high))
        throw InvalidInputError("delta schedule: random interval needs finite low < high");
    random_low_ = low;
    random_high_ = high;
    return *this;
}

std::string DeltaSchedule::describe() const {
    std::ostringstream os;
    os << "deltas={";
    for (std::size_t i = 0; i < deltas_.size(); ++i) os << (i ? "," : "") << deltas_[i];
    os << "} alpha=" << alpha_ << " h=";
    switch (h_mode_) {
    case HMode::Power:
        os << "power";
        break;
    case HMode::Capped:
        os << "capped";
        break;
    case HMode::Custom:
        os << "custom:" << custom_tag_;
        break;
    }
    os << " selection=" << (selection_ == Selection::Sequential ? "sequential" : "random");
    if (selection_ == Selection::RandomPerIteration) os << "[" << random_low_ << "," << random_high_ << "]";
    return os.str();
}

void StopCriteria::validate() const {
    if (max_iter < 1) throw InvalidInputError("stop criteria: max_iter must be at least 1");
    if (!(grad_tol >= 0.0) || !(step_tol >= 0.0)) throw InvalidInputError("stop criteria: tolerances must be >= 0");
    if (!(f_divergence_cap > 0.0) || !(x_divergence_cap > 0.0))
        throw InvalidInputError("stop criteria: divergence caps must be positive");
}

std::string to_string(Termination t) {
    switch (t) {
    case Termination::Converged:
        return "converged";
    case Termination::MaxIter:
        return "max-iter";
    case Termination::Diverged:
        return "diverged";
    case Termination::NumericalError:
        return "numerical-error";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Delta selection

double singularity_threshold(const spectral::SpectralDecomposition& decomp) {
    return static_cast<double>(decomp.dim()) * std::numeric_limits<double>::epsilon() *
           spectral::max_abs_eigenvalue(decomp);
}

namespace {

bool passes(const spectral::SpectralDecomposition& d, SelectMode mode, double floor) {
    const double m = spectral::min_abs_eigenvalue(d);
    if (mode == SelectMode::Floor) return m >= floor && m > 0.0;
    return m > singularity_threshold(d);
}

DeltaChoice try_delta(const SymMatrix& h, double delta, double shift) {
    DeltaChoice c;
    c.delta = delta;
    c.a = h;
    c.a.add_to_diagonal(delta * shift);
    c.decomp = spectral::eigh(c.a);
    return c;
}

} // namespace

HMode parse_h_mode(const std::string& name) {
    if (name == "power") return HMode::Power;
    if (name == "capped") return HMode::Capped;
    throw InvalidInputError("h mode must be power or capped, got '" + name + "'");
}

std::string to_string(HMode m) {
    switch (m) {
    case HMode::Power: return "power";
    case HMode::Capped: return "capped";
    case HMode::Custom: return "custom";
    }
    return "custom";
}

DeltaChoice select_delta(const SymMatrix& h, double grad_norm, const DeltaSchedule& sched, SelectMode mode,
                         Rng* rng) {
    if (!(grad_norm >= 0.0)) throw InvalidInputError("select_delta: gradient norm must be non-negative");
    const double shift = sched.h(grad_norm);
    // With a single delta there is no gap to build a floor from.
    if (mode == SelectMode::Floor && sched.min_gap() == 0.0) mode = SelectMode::Plain;
    const double floor = 0.5 * sched.min_gap() * shift;

    if (sched.selection() == Selection::RandomPerIteration) {
        if (rng == nullptr) throw InvalidInputError("select_delta: random selection needs a generator");
        // Zero stays the first candidate, so invertible Hessians give the unperturbed step.
        if (std::find(sched.deltas().begin(), sched.deltas().end(), 0.0) != sched.deltas().end()) {
            DeltaChoice c = try_delta(h, 0.0, shift);
            if (passes(c.decomp, mode, floor)) return c;
        }
        constexpr int kMaxDraws = 1000;
        for (int i = 0; i < kMaxDraws; ++i) {
            const double delta = sched.random_low() + (sched.random_high() - sched.random_low()) * uniform01(*rng);
            DeltaChoice c = try_delta(h, delta, shift);
            if (passes(c.decomp, mode, floor)) return c;
        }
        throw NoValidDeltaError("select_delta: no random delta made the matrix invertible");
    }

    for (double delta : sched.deltas()) {
        DeltaChoice c = try_delta(h, delta, shift);
        if (passes(c.decomp, mode, floor)) return c;
    }
    throw NoValidDeltaError("select_delta: delta schedule exhausted without an invertible matrix");
}

// ---------------------------------------------------------------------------
// Step rules

PointEval evaluate_point(const Objective& obj, const Vector& x) {
    PointEval p;
    p.x = x;
    p.f = obj.value(x);
    p.grad = obj.gradient(x);
    p.grad_norm = norm(p.grad);
    return p;
}

namespace {

SymMatrix checked_hessian(const Objective& obj, const Vector& x) {
    SymMatrix h = obj.hessian(x);
    if (!h.all_finite()) throw DomainError("Hessian is not finite", x);
    return h;
}

StepOutcome stay(const PointEval& at) {
    StepOutcome s;
    s.x_next = at.x;
    return s;
}

StepOutcome move(const PointEval& at, const Vector& direction, double scale) {
    StepOutcome s;
    s.x_next = axpy(at.x, -scale, direction);
    s.step_norm = norm(subtract(s.x_next, at.x));
    return s;
}

// Armijo test. When the required decrease is below the resolution of f, the
// inequality cannot be decided in floating point; a trial that does not
// increase f is accepted instead.
bool armijo_holds(double trial_f, double f, double required_decrease) {
    if (trial_f - f <= -required_decrease) return true;
    return required_decrease <= std::numeric_limits<double>::epsilon() * std::abs(f) && trial_f <= f;
}

// Armijo trial value; evaluation failures (overlap, poles) count as rejection.
double trial_value(const Objective& obj, const Vector& x) {
    try {
        return obj.value(x);
    } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

StepOutcome nqn_step(const Objective& obj, const PointEval& at, const DeltaSchedule& sched, Rng* rng) {
    if (at.grad_norm == 0.0) return stay(at);
    const DeltaChoice c = select_delta(checked_hessian(obj, at.x), at.grad_norm, sched, SelectMode::Plain, rng);
    const Vector w = spectral::reflect_inverse_apply(c.decomp, at.grad);
    StepOutcome s = move(at, w, 1.0);
    s.delta_used = c.delta;
    return s;
}

StepOutcome nqn_backtracking_step(const Objective& obj, const PointEval& at, const DeltaSchedule& sched,
                                  const LineSearchParams& ls) {
    if (at.grad_norm == 0.0) return stay(at);
    const DeltaChoice c = select_delta(checked_hessian(obj, at.x), at.grad_norm, sched, SelectMode::Floor);
    const Vector w = spectral::reflect_inverse_apply(c.decomp, at.grad);
    const double slope = dot(w, at.grad);
    double beta = ls.beta_start;
    for (int halvings = 0;; ++halvings) {
        if (halvings > ls.max_halvings)
            throw StalledLineSearchError("line search: no Armijo step after " + std::to_string(ls.max_halvings) +
                                         " reductions");
        const Vector trial = axpy(at.x, -beta, w);
        const double ft = trial_value(obj, trial);
        if (armijo_holds(ft, at.f, ls.armijo * beta * slope)) {
            StepOutcome s;
            s.x_next = trial;
            s.step_norm = norm(subtract(trial, at.x));
            s.delta_used = c.delta;
            s.ls_backtracks = halvings;
            s.x_next_f = ft;
            s.has_x_next_f = true;
            return s;
        }
        beta *= ls.rho;
    }
}

StepOutcome newton_step(const Objective& obj, const PointEval& at) {
    if (at.grad_norm == 0.0) return stay(at);
    const auto d = spectral::eigh(checked_hessian(obj, at.x));
    if (spectral::min_abs_eigenvalue(d) <= singularity_threshold(d))
        throw SingularMatrixError("newton: singular Hessian");
    return move(at, spectral::inverse_apply(d, at.grad), 1.0);
}

StepOutcome random_damping_newton_step(const Objective& obj, const PointEval& at, Rng& rng,
                                       std::optional<double> damping) {
    double delta = 0.0;
    if (damping) {
        delta = *damping;
    } else {
        while (delta == 0.0) delta = 2.0 * uniform01(rng);
    }
    if (at.grad_norm == 0.0) return stay(at);
    const auto d = spectral::eigh(checked_hessian(obj, at.x));
    if (spectral::min_abs_eigenvalue(d) <= singularity_threshold(d))
        throw SingularMatrixError("random damping newton: singular Hessian");
    StepOutcome s = move(at, spectral::inverse_apply(d, at.grad), delta);
    s.delta_used = delta;
    return s;
}

StepOutcome backtracking_gd_step(const Objective& obj, const PointEval& at, double& lr,
                                 const BacktrackingGdParams& p) {
    if (at.grad_norm == 0.0) return stay(at);
    const double g2 = at.grad_norm * at.grad_norm;
    const double cap = std::max(p.delta0, p.delta0 * std::pow(at.grad_norm, -p.kappa));
    auto armijo = [&](double delta) {
        const double ft = trial_value(obj, axpy(at.x, -delta, at.grad));
        return armijo_holds(ft, at.f, p.armijo * delta * g2);
    };

    double delta = std::min(lr, cap);
    int reductions = 0;
    if (armijo(delta)) {
        for (int growth = 0; growth < p.max_growth; ++growth) {
            const double bigger = delta / p.beta;
            if (bigger > cap || !armijo(bigger)) break;
            delta = bigger;
        }
    } else {
        do {
            delta *= p.beta;
            if (++reductions > p.max_reductions)
                throw StalledLineSearchError("two-way backtracking: no Armijo step after " +
                                             std::to_string(p.max_reductions) + " reductions");
        } while (!armijo(delta));
    }
    lr = delta;
    StepOutcome s = move(at, at.grad, delta);
    s.delta_used = delta;
    s.ls_backtracks = reductions;
    return s;
}

namespace {

StepResult finish_step(const Objective& obj, StepOutcome&& s) {
    StepResult r;
    r.record.index = 1;
    r.record.x = s.x_next;
    r.record.f = obj.value(s.x_next);
    r.record.grad_norm = norm(obj.gradient(s.x_next));
    r.record.delta_used = s.delta_used;
    r.record.step_norm = s.step_norm;
    r.record.ls_backtracks = s.ls_backtracks;
    r.x_next = std::move(s.x_next);
    return r;
}

} // namespace

StepResult nqn_step(const Objective& obj, const Vector& x, const DeltaSchedule& sched, Rng* rng) {
    return finish_step(obj, nqn_step(obj, evaluate_point(obj, x), sched, rng));
}

StepResult nqn_backtracking_step(const Objective& obj, const Vector& x, const DeltaSchedule& sched,
                                 const LineSearchParams& ls) {
    return finish_step(obj, nqn_backtracking_step(obj, evaluate_point(obj, x), sched, ls));
}

StepResult newton_step(const Objective& obj, const Vector& x) {
    return finish_step(obj, newton_step(obj, evaluate_point(obj, x)));
}

StepResult random_damping_newton_step(const Objective& obj, const Vector& x, Rng& rng,
                                      std::optional<double> damping) {
    return finish_step(obj, random_damping_newton_step(obj, evaluate_point(obj, x), rng, damping));
}

StepResult backtracking_gd_step(const Objective& obj, const Vector& x, double& lr, const BacktrackingGdParams& p) {
    return finish_step(obj, backtracking_gd_step(obj, evaluate_point(obj, x), lr, p));
}

// ---------------------------------------------------------------------------
// Driver

namespace {

struct MethodName {
    Method method;
    const char* id;
};

constexpr MethodName kMethodNames[] = {
    {Method::Nqn, "nqn"},
    {Method::RandomNqn, "rnqn"},
    {Method::GeneralizedNqn, "gnqn"},
    {Method::NqnBacktracking, "nqn-bt"},
    {Method::Newton, "newton"},
    {Method::RandomDampingNewton, "rand-newton"},
    {Method::BacktrackingGd, "back"},
};

bool uses_delta_schedule(Method m) {
    return m == Method::Nqn || m == Method::RandomNqn || m == Method::GeneralizedNqn ||
           m == Method::NqnBacktracking;
}

} // namespace

Method parse_method(const std::string& name) {
    for (const auto& m : kMethodNames)
        if (name == m.id) return m.method;
    if (name == "nqn-backtracking") return Method::NqnBacktracking;
    throw UnknownNameError("unknown method: " + name);
}

std::string method_id(Method m) {
    for (const auto& entry : kMethodNames)
        if (entry.method == m) return entry.id;
    return "unknown";
}

const std::vector<std::string>& method_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& m : kMethodNames) out.emplace_back(m.id);
        return out;
    }();
    return ids;
}

DeltaSchedule effective_schedule(Method m, const DeltaSchedule& sched) {
    DeltaSchedule s = sched;
    if (m == Method::RandomNqn) s.with_selection(Selection::RandomPerIteration);
    if (m == Method::GeneralizedNqn && s.h_mode() != HMode::Custom) s.with_h_mode(HMode::Capped);
    return s;
}

namespace {

using ObjectiveAt = std::function<const Objective&(std::uint64_t step)>;

std::int64_t elapsed_ns(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - since).count();
}

Trace drive(Method method, const std::string& name, std::size_t dim, const ObjectiveAt& objective_at,
            const Vector& x0, const DeltaSchedule& sched, const StopCriteria& stop, std::uint64_t seed,
            const MethodParams& params) {
    stop.validate();
    if (x0.size() != dim)
        throw InvalidInputError("initial point has dimension " + std::to_string(x0.size()) + ", objective expects " +
                                std::to_string(dim));
    if (!all_finite(x0)) throw InvalidInputError("initial point must be finite");

    Trace trace;
    trace.method = method_id(method);
    trace.objective = name;
    trace.seed = seed;
    const DeltaSchedule eff = effective_schedule(method, sched);
    if (uses_delta_schedule(method) && eff.selection() == Selection::Sequential && eff.deltas().size() < dim + 1)
        trace.warnings.push_back("delta set has " + std::to_string(eff.deltas().size()) + " values; dimension " +
                                 std::to_string(dim) + " needs " + std::to_string(dim + 1) +
                                 " for guaranteed invertibility");

    Rng rng(seed);
    double lr = params.gd.delta0;
    PointEval at;
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Fills rec and `at` for the point x; false when the run must stop there.
    auto assess = [&](const Objective& obj, const Vector& x, IterationRecord& rec) {
        rec.x = x;
        rec.grad_norm = kInf;
        if (!all_finite(x) || norm(x) > stop.x_divergence_cap) {
            rec.f = all_finite(x) ? obj.value(x) : std::numeric_limits<double>::quiet_NaN();
            trace.termination = Termination::Diverged;
            trace.detail = "iterate norm exceeded " + std::to_string(stop.x_divergence_cap);
            return false;
        }
        rec.f = obj.value(x);
        if (std::isnan(rec.f)) {
            trace.termination = Termination::NumericalError;
            trace.detail = "objective value is NaN";
            return false;
        }
        if (rec.f > stop.f_divergence_cap || rec.f == -kInf) {
            trace.termination = Termination::Diverged;
            trace.detail = "objective value left the finite range";
            return false;
        }
        at.x = x;
        at.f = rec.f;
        at.grad = obj.gradient(x);
        at.grad_norm = norm(at.grad);
        if (!std::isfinite(at.grad_norm)) {
            trace.termination = Termination::NumericalError;
            trace.detail = "gradient is not finite";
            return false;
        }
        rec.grad_norm = at.grad_norm;
        return true;
    };

    try {
        const auto start = std::chrono::steady_clock::now();
        IterationRecord first;
        first.index = 0;
        const bool ok = assess(objective_at(0), x0, first);
        first.wall_ns = elapsed_ns(start);
        trace.records.push_back(std::move(first));
        if (!ok) return trace;

        for (std::uint64_t k = 0;; ++k) {
            if (at.grad_norm <= stop.grad_tol) {
                trace.termination = Termination::Converged;
                trace.detail = "gradient norm below tolerance";
                break;
            }
            if (k >= static_cast<std::uint64_t>(stop.max_iter)) {
                trace.termination = Termination::MaxIter;
                trace.detail = "iteration limit reached";
                break;
            }
            const auto t0 = std::chrono::steady_clock::now();
            const Objective& obj = objective_at(k);
            StepOutcome step;
            switch (method) {
            case Method::Nqn:
            case Method::RandomNqn:
            case Method::GeneralizedNqn:
                step = nqn_step(obj, at, eff, &rng);
                break;
            case Method::NqnBacktracking:
                step = nqn_backtracking_step(obj, at, eff, params.line_search);
                break;
            case Method::Newton:
                step = newton_step(obj, at);
                break;
            case Method::RandomDampingNewton:
                step = random_damping_newton_step(obj, at, rng);
                break;
            case Method::BacktrackingGd:
                step = backtracking_gd_step(obj, at, lr, params.gd);
                break;
            }
            IterationRecord rec;
            rec.index = static_cast<int>(k + 1);
            rec.delta_used = step.delta_used;
            rec.step_norm = step.step_norm;
            rec.ls_backtracks = step.ls_backtracks;
            const bool ok_next = assess(objective_at(k + 1), step.x_next, rec);
            rec.wall_ns = elapsed_ns(t0);
            trace.records.push_back(std::move(rec));
            if (!ok_next) break;
            if (trace.records.back().step_norm < stop.step_tol) {
                trace.termination = Termination::Converged;
                trace.detail = "step norm below tolerance";
                break;
            }
        }
    } catch (const Error& e) {
        trace.termination = Termination::NumericalError;
        trace.detail = e.what();
    }
    return trace;
}

} // namespace

Trace run(Method method, const Objective& obj, const Vector& x0, const DeltaSchedule& sched,
          const StopCriteria& stop, std::uint64_t seed, const MethodParams& params) {
    ObjectiveAt same = [&obj](std::uint64_t) -> const Objective& { return obj; };
    return drive(method, obj.name(), obj.dim(), same, x0, sched, stop, seed, params);
}

Trace run(Method method, const StochasticObjective& obj, const Vector& x0, const DeltaSchedule& sched,
          const StopCriteria& stop, std::uint64_t seed, const MethodParams& params) {
    // A batch is used for one point's record and the step leaving it; keep
    // the two most recent so references stay valid across one iteration.
    std::uint64_t cached_step[2] = {~0ULL, ~0ULL};
    Objective cached[2];
    ObjectiveAt batch = [&](std::uint64_t step) -> const Objective& {
        const int slot = static_cast<int>(step & 1ULL);
        if (cached_step[slot] != step) {
            cached[slot] = sample_batch_objective(obj, step);
            cached_step[slot] = step;
        }
        return cached[slot];
    };
    return drive(method, obj.name, obj.dim, batch, x0, sched, stop, seed, params);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

} // namespace

std::string trace_csv(const Trace& trace) {
    std::string out = kTraceCsvHeader;
    out += '\n';
    for (const auto& r : trace.records) {
        out += std::to_string(r.index);
        out += ',' + fmt17(r.f);
        out += ',' + fmt17(r.grad_norm);
        out += ',' + (r.delta_used ? fmt17(*r.delta_used) : std::string());
        out += ',' + fmt17(r.step_norm);
        out += ',' + std::to_string(r.ls_backtracks);
        out += ',' + std::to_string(r.wall_ns);
        out += '\n';
    }
    return out;
}

std::string trace_json(const Trace& trace) {
    nlohmann::json j;
    j["method"] = trace.method;
    j["objective"] = trace.objective;
    j["seed"] = trace.seed;
    j["termination"] = to_string(trace.termination);
    j["detail"] = trace.detail;
    j["iterations"] = trace.iterations();
    j["warnings"] = trace.warnings;
    if (!trace.records.empty()) {
        const auto& last = trace.records.back();
        nlohmann::json x = nlohmann::json::array();
        for (double v : last.x) x.push_back(finite_or_null(v));
        j["final_x"] = x;
        j["final_f"] = finite_or_null(last.f);
        j["final_grad_norm"] = finite_or_null(last.grad_norm);
    }
    return j.dump(2);
}

void write_trace(const Trace& trace, const std::string& stem) {
    const std::filesystem::path base(stem);
    if (base.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(base.parent_path(), ec);
        if (ec) throw Error("cannot create directory " + base.parent_path().string() + ": " + ec.message());
    }
    const auto write = [](const std::string& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open " + path + " for writing");
        out << text;
        if (!out) throw Error("failed writing " + path);
    };
    write(stem + ".csv", trace_csv(trace));
    write(stem + ".json", trace_json(trace));
}

} // namespace qnewton
