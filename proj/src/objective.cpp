#include "qnewton/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnewton/error.hpp"

namespace qnewton {
namespace {

double checked_eval(const ValueFn& f, const Vector& x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw DomainError("objective is not finite at the evaluation point", x);
    return v;
}

// Fallback steps grow with the iterate so that rounding in f does not swamp
// the difference quotient far from the origin.
double fd_scale(const Vector& x) { return std::max(1.0, norm_inf(x)); }

} // namespace

Vector fd_gradient(const ValueFn& f, const Vector& x, double h) {
    if (!(h > 0.0)) throw InvalidInputError("fd_gradient: step must be positive");
    Vector g(x.size());
    Vector probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double fp = checked_eval(f, probe);
        probe[i] = x[i] - h;
        const double fm = checked_eval(f, probe);
        probe[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

SymMatrix fd_hessian(const ValueFn& f, const Vector& x, double h) {
    if (!(h > 0.0)) throw InvalidInputError("fd_hessian: step must be positive");
    const std::size_t n = x.size();
    SymMatrix hess(n);
    Vector probe = x;
    const double f0 = checked_eval(f, x);
    for (std::size_t i = 0; i < n; ++i) {
        probe[i] = x[i] + h;
        const double fp = checked_eval(f, probe);
        probe[i] = x[i] - h;
        const double fm = checked_eval(f, probe);
        probe[i] = x[i];
        hess.set(i, i, (fp - 2.0 * f0 + fm) / (h * h));
    }
    // The mixed stencil is symmetric in (i, j) already, so computing the upper
    // triangle once is the symmetrized result.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            probe[i] = x[i] + h;
            probe[j] = x[j] + h;
            const double fpp = checked_eval(f, probe);
            probe[j] = x[j] - h;
            const double fpm = checked_eval(f, probe);
            probe[i] = x[i] - h;
            const double fmm = checked_eval(f, probe);
            probe[j] = x[j] + h;
            const double fmp = checked_eval(f, probe);
            probe[i] = x[i];
            probe[j] = x[j];
            hess.set(i, j, (fpp - fpm - fmp + fmm) / (4.0 * h * h));
        }
    }
    return hess;
}

SymMatrix fd_hessian_from_gradient(const GradientFn& g, const Vector& x, double h) {
    if (!(h > 0.0)) throw InvalidInputError("fd_hessian_from_gradient: step must be positive");
    const std::size_t n = x.size();
    std::vector<Vector> cols(n);
    Vector probe = x;
    for (std::size_t i = 0; i < n; ++i) {
        probe[i] = x[i] + h;
        const Vector gp = g(probe);
        probe[i] = x[i] - h;
        const Vector gm = g(probe);
        probe[i] = x[i];
        if (!all_finite(gp) || !all_finite(gm)) throw DomainError("gradient is not finite near the point", x);
        cols[i] = subtract(gp, gm);
        for (double& v : cols[i]) v /= 2.0 * h;
    }
    SymMatrix hess(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) hess.set(i, j, 0.5 * (cols[i][j] + cols[j][i]));
    return hess;
}

Objective::Objective(std::size_t dim, ValueFn value, GradientFn gradient, HessianFn hessian, std::string name)
    : dim_(dim), value_(std::move(value)), gradient_(std::move(gradient)), hessian_(std::move(hessian)),
      name_(std::move(name)) {
    if (dim_ == 0) throw InvalidInputError("Objective: dimension must be positive");
    if (!value_) throw InvalidInputError("Objective: value function is required");
}

void Objective::check_dim(const Vector& x) const {
    if (x.size() != dim_)
        throw InvalidInputError("objective '" + name_ + "' expects dimension " + std::to_string(dim_) + ", got " +
                                std::to_string(x.size()));
}

double Objective::value(const Vector& x) const {
    check_dim(x);
    return value_(x);
}

Vector Objective::gradient(const Vector& x) const {
    check_dim(x);
    if (gradient_) return gradient_(x);
    return fd_gradient(value_, x, kFdGradientStep * fd_scale(x));
}

SymMatrix Objective::hessian(const Vector& x) const {
    check_dim(x);
    if (hessian_) return hessian_(x);
    if (gradient_) return fd_hessian_from_gradient(gradient_, x, kFdGradientHessianStep * fd_scale(x));
    return fd_hessian(value_, x, kFdHessianStep * fd_scale(x));
}

Objective make_quadratic(const SymMatrix& h, std::string name) {
    return Objective(
        h.dim(), [h](const Vector& x) { return 0.5 * dot(h.multiply(x), x); },
        [h](const Vector& x) { return h.multiply(x); }, [h](const Vector&) { return h; }, std::move(name));
}

} // namespace qnewton
