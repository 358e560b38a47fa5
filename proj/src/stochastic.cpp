#include <cmath>
#include <numbers>
#include <string>

#include "qnewton/error.hpp"
#include "qnewton/objective.hpp"

namespace qnewton {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// 53 random bits mapped into (0, 1].
double to_unit_open_closed(std::uint64_t bits) { return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53; }

} // namespace

double counter_normal(std::uint64_t seed, std::uint64_t step, std::uint64_t sample) {
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ step);
    key = splitmix64(key ^ (sample * 0xd6e8feb86659fd93ULL));
    const double u1 = to_unit_open_closed(key);
    const double u2 = to_unit_open_closed(splitmix64(key ^ 0xa0761d6478bd642fULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_xi(const StochasticObjective& s, std::uint64_t step, std::uint64_t sample) {
    if (s.xi_sigma == 0.0) return s.xi_mean;
    return s.xi_mean + s.xi_sigma * counter_normal(s.seed, step, sample);
}

Objective sample_batch_objective(const StochasticObjective& s, std::uint64_t step_index) {
    if (s.batch_size == 0) throw InvalidInputError("stochastic objective: batch size must be at least 1");
    if (!s.instance) throw InvalidInputError("stochastic objective: instance function is required");
    Vector xis(s.batch_size);
    for (std::size_t i = 0; i < s.batch_size; ++i) xis[i] = sample_xi(s, step_index, i);
    const double inv_n = 1.0 / static_cast<double>(s.batch_size);

    auto value = [inst = s.instance, xis, inv_n](const Vector& x) {
        double sum = 0.0;
        for (double xi : xis) sum += inst(x, xi);
        return sum * inv_n;
    };
    GradientFn gradient;
    if (s.instance_gradient) {
        gradient = [grad = s.instance_gradient, xis, inv_n](const Vector& x) {
            Vector sum(x.size(), 0.0);
            for (double xi : xis) {
                const Vector g = grad(x, xi);
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += g[i];
            }
            for (double& v : sum) v *= inv_n;
            return sum;
        };
    }
    HessianFn hessian;
    if (s.instance_hessian) {
        hessian = [hess = s.instance_hessian, xis, inv_n](const Vector& x) {
            const std::size_t n = x.size();
            SymMatrix sum(n);
            for (double xi : xis) {
                const SymMatrix h = hess(x, xi);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i; j < n; ++j) sum.set(i, j, sum(i, j) + h(i, j));
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) sum.set(i, j, sum(i, j) * inv_n);
            return sum;
        };
    }
    return Objective(s.dim, std::move(value), std::move(gradient), std::move(hessian),
                     s.name + "@" + std::to_string(step_index));
}

double griewank_value(const Vector& x, double xi) {
    double sq = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sq += x[i] * x[i];
        prod *= std::cos(xi * x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + xi * xi * sq / 4000.0 - prod;
}

Vector griewank_gradient(const Vector& x, double xi) {
    const std::size_t n = x.size();
    Vector c(n), s(n), k(n);
    for (std::size_t i = 0; i < n; ++i) {
        k[i] = xi / std::sqrt(static_cast<double>(i + 1));
        c[i] = std::cos(k[i] * x[i]);
        s[i] = std::sin(k[i] * x[i]);
    }
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) {
        double others = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) others *= c[j];
        g[i] = xi * xi * x[i] / 2000.0 + k[i] * s[i] * others;
    }
    return g;
}

SymMatrix griewank_hessian(const Vector& x, double xi) {
    const std::size_t n = x.size();
    Vector c(n), s(n), k(n);
    for (std::size_t i = 0; i < n; ++i) {
        k[i] = xi / std::sqrt(static_cast<double>(i + 1));
        c[i] = std::cos(k[i] * x[i]);
        s[i] = std::sin(k[i] * x[i]);
    }
    SymMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double others = 1.0;
            for (std::size_t l = 0; l < n; ++l)
                if (l != i && l != j) others *= c[l];
            if (i == j)
                h.set(i, i, xi * xi / 2000.0 + k[i] * k[i] * c[i] * others);
            else
                h.set(i, j, -k[i] * k[j] * s[i] * s[j] * others);
        }
    }
    return h;
}

StochasticObjective make_stochastic_griewank(std::size_t dim, double sigma, std::size_t batch_size,
                                             std::uint64_t seed) {
    if (dim == 0) throw InvalidInputError("stochastic griewank: dimension must be positive");
    if (!(sigma >= 0.0)) throw InvalidInputError("stochastic griewank: sigma must be non-negative");
    if (batch_size == 0) throw InvalidInputError("stochastic griewank: batch size must be at least 1");
    StochasticObjective s;
    s.dim = dim;
    s.instance = [](const Vector& x, double xi) { return griewank_value(x, xi); };
    s.instance_gradient = [](const Vector& x, double xi) { return griewank_gradient(x, xi); };
    s.instance_hessian = [](const Vector& x, double xi) { return griewank_hessian(x, xi); };
    s.xi_mean = 1.0;
    s.xi_sigma = sigma;
    s.batch_size = batch_size;
    s.seed = seed;
    s.name = "griewank-stochastic";
    return s;
}

} // namespace qnewton
