#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "qnewton/linalg.hpp"

namespace qnewton {

using ValueFn = std::function<double(const Vector&)>;
using GradientFn = std::function<Vector(const Vector&)>;
using HessianFn = std::function<SymMatrix(const Vector&)>;

inline constexpr double kFdGradientStep = 1e-5;
inline constexpr double kFdHessianStep = 1e-4;
/// Step for differencing an analytic gradient into a Hessian.
inline constexpr double kFdGradientHessianStep = 1e-5;

/// Central differences (f(x+h e_i) - f(x-h e_i)) / 2h.
/// Throws DomainError carrying the offending point if f is non-finite there.
Vector fd_gradient(const ValueFn& f, const Vector& x, double h = kFdGradientStep);

/// Second-order central differences, symmetrized as (H + H^T) / 2.
SymMatrix fd_hessian(const ValueFn& f, const Vector& x, double h = kFdHessianStep);

/// Jacobian of an analytic gradient by central differences, symmetrized.
SymMatrix fd_hessian_from_gradient(const GradientFn& g, const Vector& x, double h = kFdGradientHessianStep);

/// Value/gradient/Hessian provider. Missing derivatives fall back to finite
/// differences: the gradient to fd_gradient of the value, the Hessian to
/// differences of the analytic gradient when there is one, else fd_hessian.
/// Fallback steps are the defaults scaled by max(1, max_i |x_i|).
/// Immutable after construction, so safe to share across threads.
class Objective {
public:
    Objective() = default;
    Objective(std::size_t dim, ValueFn value, GradientFn gradient = {}, HessianFn hessian = {},
              std::string name = {});

    std::size_t dim() const noexcept { return dim_; }
    const std::string& name() const noexcept { return name_; }
    bool has_analytic_gradient() const noexcept { return static_cast<bool>(gradient_); }
    bool has_analytic_hessian() const noexcept { return static_cast<bool>(hessian_); }

    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;
    SymMatrix hessian(const Vector& x) const;

    const ValueFn& value_fn() const noexcept { return value_; }

private:
    void check_dim(const Vector& x) const;

    std::size_t dim_ = 0;
    ValueFn value_;
    GradientFn gradient_;
    HessianFn hessian_;
    std::string name_;
};

/// f(x) = 1/2 <Hx, x>.
Objective make_quadratic(const SymMatrix& h, std::string name = "quadratic");

// ---------------------------------------------------------------------------
// Toy protein model

/// Bend-angle energy of an n-mer; theta holds theta_2..theta_{n-1} and xi
/// the +1 (A) / -1 (B) residue labels. Throws InvalidInputError on bad sizes
/// or labels and DomainError when two beads overlap.
double protein_energy(const Vector& theta, const std::vector<int>& xi);
Vector protein_gradient(const Vector& theta, const std::vector<int>& xi);
SymMatrix protein_hessian(const Vector& theta, const std::vector<int>& xi);

/// Parses a sequence such as "ABBBA" into labels; throws InvalidInputError.
std::vector<int> parse_protein_sequence(const std::string& seq);
Objective make_protein_objective(const std::string& seq);

// ---------------------------------------------------------------------------
// Stochastic objectives

/// f(x, xi) family with xi ~ Normal(xi_mean, xi_sigma^2); batch k averages
/// batch_size samples keyed on (seed, step, sample index).
struct StochasticObjective {
    std::size_t dim = 0;
    std::function<double(const Vector&, double)> instance;
    std::function<Vector(const Vector&, double)> instance_gradient;
    std::function<SymMatrix(const Vector&, double)> instance_hessian;
    double xi_mean = 1.0;
    double xi_sigma = 0.0;
    std::size_t batch_size = 1;
    std::uint64_t seed = 0;
    std::string name;
};

/// Counter-based standard normal draw; the same key always gives the same value.
double counter_normal(std::uint64_t seed, std::uint64_t step, std::uint64_t sample);

double sample_xi(const StochasticObjective& s, std::uint64_t step, std::uint64_t sample);

/// F_n(x) = mean of instance(x, xi_{n,i}) over the batch for step n.
Objective sample_batch_objective(const StochasticObjective& s, std::uint64_t step_index);

/// f(x, xi) = 1 + xi^2 |x|^2 / 4000 - prod cos(x_i xi / sqrt(i)).
StochasticObjective make_stochastic_griewank(std::size_t dim, double sigma, std::size_t batch_size,
                                             std::uint64_t seed);

/// Griewank with the scaling xi folded in (xi = 1 is the deterministic function).
double griewank_value(const Vector& x, double xi = 1.0);
Vector griewank_gradient(const Vector& x, double xi = 1.0);
SymMatrix griewank_hessian(const Vector& x, double xi = 1.0);

} // namespace qnewton
