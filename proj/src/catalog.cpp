#include "qnewton/catalog.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include "json.hpp"

#include "qnewton/error.hpp"

namespace qnewton {
namespace {

constexpr double kPi = std::numbers::pi;

using Fn1 = double (*)(double);

Objective scalar_objective(std::string name, Fn1 f, Fn1 d1, Fn1 d2) {
    ValueFn value = [f](const Vector& x) { return f(x[0]); };
    if (d1 == nullptr) return Objective(1, std::move(value), {}, {}, std::move(name));
    return Objective(
        1, std::move(value), [d1](const Vector& x) { return Vector{d1(x[0])}; },
        [d2](const Vector& x) { return SymMatrix::diagonal(Vector{d2(x[0])}); }, std::move(name));
}

// ---- one-dimensional appendix functions -----------------------------------

double abs43(double x) { return std::pow(std::abs(x), 4.0 / 3.0); }
double abs13(double x) { return std::cbrt(std::abs(x)); }

double expinv(double x) { return x == 0.0 ? 0.0 : std::exp(-1.0 / (x * x)); }
double expinv_d1(double x) { return x == 0.0 ? 0.0 : 2.0 / (x * x * x) * std::exp(-1.0 / (x * x)); }
double expinv_d2(double x) {
    if (x == 0.0) return 0.0;
    const double x2 = x * x;
    return std::exp(-1.0 / x2) * (4.0 / (x2 * x2 * x2) - 6.0 / (x2 * x2));
}

// The oscillating pair below extends by 0 at the origin, where the second
// derivative has no limit; 0 is reported there.
double cubsin(double x) { return x == 0.0 ? 0.0 : x * x * x * std::sin(1.0 / x); }
double cubsin_d1(double x) {
    return x == 0.0 ? 0.0 : 3.0 * x * x * std::sin(1.0 / x) - x * std::cos(1.0 / x);
}
double cubsin_d2(double x) {
    if (x == 0.0) return 0.0;
    const double s = std::sin(1.0 / x), c = std::cos(1.0 / x);
    return 6.0 * x * s - 4.0 * c - s / x;
}

double cubcos(double x) { return x == 0.0 ? 0.0 : x * x * x * std::cos(1.0 / x); }
double cubcos_d1(double x) {
    return x == 0.0 ? 0.0 : 3.0 * x * x * std::cos(1.0 / x) + x * std::sin(1.0 / x);
}
double cubcos_d2(double x) {
    if (x == 0.0) return 0.0;
    const double s = std::sin(1.0 / x), c = std::cos(1.0 / x);
    return 6.0 * x * c + 4.0 * s - c / x;
}

double expcub(double x) { return std::exp(x * x) - 2.0 * x * x * x; }
double expcub_d1(double x) { return 2.0 * x * std::exp(x * x) - 6.0 * x * x; }
double expcub_d2(double x) { return (2.0 + 4.0 * x * x) * std::exp(x * x) - 12.0 * x; }

double quartic(double t) { return t * t * t * t / 4.0 - t * t + 2.0 * t; }
double quartic_d1(double t) { return t * t * t - 2.0 * t + 2.0; }
double quartic_d2(double t) { return 3.0 * t * t - 2.0; }

double ci_mix(double t) {
    if (t == 0.0) return 0.0;
    const double s = 2.0 / t;
    return 4.0 / 3.0 * cosine_integral(std::abs(s)) + t * (t * t - 2.0) * std::sin(s) / 3.0 + t * t / 2.0 +
           t * t * std::cos(s) / 3.0;
}
double ci_mix_d1(double t) { return t == 0.0 ? 0.0 : t + t * t * std::sin(2.0 / t); }
double ci_mix_d2(double t) {
    return t == 0.0 ? 1.0 : 1.0 + 2.0 * t * std::sin(2.0 / t) - 2.0 * std::cos(2.0 / t);
}

// ---- multi-dimensional families -------------------------------------------

Objective rosenbrock(std::size_t dim) {
    auto value = [](const Vector& x) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            const double b = x[i] - 1.0;
            s += 100.0 * a * a + b * b;
        }
        return s;
    };
    auto gradient = [](const Vector& x) {
        Vector g(x.size(), 0.0);
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            g[i] += -400.0 * x[i] * a + 2.0 * (x[i] - 1.0);
            g[i + 1] += 200.0 * a;
        }
        return g;
    };
    auto hessian = [](const Vector& x) {
        SymMatrix h(x.size());
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            h.set(i, i, h(i, i) + 1200.0 * x[i] * x[i] - 400.0 * x[i + 1] + 2.0);
            h.set(i, i + 1, h(i, i + 1) - 400.0 * x[i]);
            h.set(i + 1, i + 1, h(i + 1, i + 1) + 200.0);
        }
        return h;
    };
    return Objective(dim, value, gradient, hessian, "rosenbrock");
}

Objective styblinski_tang(std::size_t dim) {
    auto value = [](const Vector& x) {
        double s = 0.0;
        for (double v : x) s += (v * v * v * v - 16.0 * v * v + 5.0 * v) / 2.0;
        return s;
    };
    auto gradient = [](const Vector& x) {
        Vector g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i] * x[i] * x[i] - 16.0 * x[i] + 2.5;
        return g;
    };
    auto hessian = [](const Vector& x) {
        Vector d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = 6.0 * x[i] * x[i] - 16.0;
        return SymMatrix::diagonal(d);
    };
    return Objective(dim, value, gradient, hessian, "styblinski-tang");
}

Objective griewank(std::size_t dim) {
    return Objective(
        dim, [](const Vector& x) { return griewank_value(x); }, [](const Vector& x) { return griewank_gradient(x); },
        [](const Vector& x) { return griewank_hessian(x); }, "griewank");
}

Objective rastrigin(std::size_t dim, double a) {
    auto value = [a](const Vector& x) {
        double s = a * static_cast<double>(x.size());
        for (double v : x) s += v * v - a * std::cos(2.0 * kPi * v);
        return s;
    };
    auto gradient = [a](const Vector& x) {
        Vector g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i] + 2.0 * kPi * a * std::sin(2.0 * kPi * x[i]);
        return g;
    };
    auto hessian = [a](const Vector& x) {
        Vector d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = 2.0 + 4.0 * kPi * kPi * a * std::cos(2.0 * kPi * x[i]);
        return SymMatrix::diagonal(d);
    };
    return Objective(dim, value, gradient, hessian, "rastrigin");
}

double ackley_value(const Vector& x) {
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * kPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(0.5 * sq)) - std::exp(0.5 * cs) + std::numbers::e + 20.0;
}

Objective ackley(std::size_t dim) {
    // r = sqrt(0.5 |x|^2); the first term has a cone-like kink at the origin,
    // where the gradient is reported as 0 and the Hessian falls back to differences.
    auto gradient = [](const Vector& x) {
        double sq = 0.0, cs = 0.0;
        for (double v : x) {
            sq += v * v;
            cs += std::cos(2.0 * kPi * v);
        }
        const double r = std::sqrt(0.5 * sq);
        const double e1 = std::exp(-0.2 * r);
        const double e2 = std::exp(0.5 * cs);
        Vector g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double cone = r > 0.0 ? 2.0 * e1 * x[i] / r : 0.0;
            g[i] = cone + kPi * e2 * std::sin(2.0 * kPi * x[i]);
        }
        return g;
    };
    auto hessian = [](const Vector& x) {
        double sq = 0.0, cs = 0.0;
        for (double v : x) {
            sq += v * v;
            cs += std::cos(2.0 * kPi * v);
        }
        const double r = std::sqrt(0.5 * sq);
        if (r == 0.0) return fd_hessian(ackley_value, x);
        const double e1 = std::exp(-0.2 * r);
        const double e2 = std::exp(0.5 * cs);
        const std::size_t n = x.size();
        SymMatrix h(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double si = std::sin(2.0 * kPi * x[i]);
            for (std::size_t j = i; j < n; ++j) {
                const double sj = std::sin(2.0 * kPi * x[j]);
                double v = 2.0 * e1 * (-0.1 * x[i] * x[j] / (r * r) - 0.5 * x[i] * x[j] / (r * r * r));
                v += -kPi * kPi * e2 * si * sj;
                if (i == j) v += 2.0 * e1 / r + 2.0 * kPi * kPi * e2 * std::cos(2.0 * kPi * x[i]);
                h.set(i, j, v);
            }
        }
        return h;
    };
    return Objective(dim, ackley_value, gradient, hessian, "ackley");
}

// ---- two-dimensional appendix functions -----------------------------------

Objective quadratic_2d(double a, double b, double c, std::string name) {
    // f = a x^2 + b xy + c y^2
    return make_quadratic(SymMatrix::from_rows({{2.0 * a, b}, {b, 2.0 * c}}), std::move(name));
}

Objective beale() {
    static constexpr double kC[3] = {1.5, 2.25, 2.625};
    auto value = [](const Vector& p) {
        double s = 0.0, yk = 1.0;
        for (double c : kC) {
            yk *= p[1];
            const double r = c - p[0] + p[0] * yk;
            s += r * r;
        }
        return s;
    };
    auto gradient = [](const Vector& p) {
        const double x = p[0], y = p[1];
        Vector g(2, 0.0);
        for (int k = 1; k <= 3; ++k) {
            const double yk = std::pow(y, k);
            const double r = kC[k - 1] - x + x * yk;
            g[0] += 2.0 * r * (yk - 1.0);
            g[1] += 2.0 * r * (k * x * std::pow(y, k - 1));
        }
        return g;
    };
    auto hessian = [](const Vector& p) {
        const double x = p[0], y = p[1];
        double hxx = 0.0, hxy = 0.0, hyy = 0.0;
        for (int k = 1; k <= 3; ++k) {
            const double yk = std::pow(y, k);
            const double r = kC[k - 1] - x + x * yk;
            const double rx = yk - 1.0;
            const double ry = k * x * std::pow(y, k - 1);
            const double rxy = k * std::pow(y, k - 1);
            const double ryy = k >= 2 ? k * (k - 1) * x * std::pow(y, k - 2) : 0.0;
            hxx += 2.0 * rx * rx;
            hxy += 2.0 * (rx * ry + r * rxy);
            hyy += 2.0 * (ry * ry + r * ryy);
        }
        return SymMatrix::from_rows({{hxx, hxy}, {hxy, hyy}});
    };
    return Objective(2, value, gradient, hessian, "beale");
}

Objective bukin6() {
    return Objective(
        2,
        [](const Vector& p) {
            return 100.0 * std::sqrt(std::abs(p[1] - 0.01 * p[0] * p[0])) + 0.01 * std::abs(p[0] + 10.0);
        },
        {}, {}, "bukin6");
}

Objective levi13() {
    auto value = [](const Vector& p) {
        const double x = p[0], y = p[1];
        const double s1 = std::sin(3.0 * kPi * x), s2 = std::sin(3.0 * kPi * y), s3 = std::sin(2.0 * kPi * y);
        return s1 * s1 + (x - 1.0) * (x - 1.0) * (1.0 + s2 * s2) + (y - 1.0) * (y - 1.0) * (1.0 + s3 * s3);
    };
    auto gradient = [](const Vector& p) {
        const double x = p[0], y = p[1];
        const double s2 = std::sin(3.0 * kPi * y), s3 = std::sin(2.0 * kPi * y);
        const double gx = 3.0 * kPi * std::sin(6.0 * kPi * x) + 2.0 * (x - 1.0) * (1.0 + s2 * s2);
        const double gy = (x - 1.0) * (x - 1.0) * 3.0 * kPi * std::sin(6.0 * kPi * y) +
                          2.0 * (y - 1.0) * (1.0 + s3 * s3) + (y - 1.0) * (y - 1.0) * 2.0 * kPi * std::sin(4.0 * kPi * y);
        return Vector{gx, gy};
    };
    auto hessian = [](const Vector& p) {
        const double x = p[0], y = p[1];
        const double s2 = std::sin(3.0 * kPi * y), s3 = std::sin(2.0 * kPi * y);
        const double hxx = 18.0 * kPi * kPi * std::cos(6.0 * kPi * x) + 2.0 * (1.0 + s2 * s2);
        const double hxy = 6.0 * kPi * (x - 1.0) * std::sin(6.0 * kPi * y);
        const double hyy = (x - 1.0) * (x - 1.0) * 18.0 * kPi * kPi * std::cos(6.0 * kPi * y) + 2.0 * (1.0 + s3 * s3) +
                           8.0 * kPi * (y - 1.0) * std::sin(4.0 * kPi * y) +
                           8.0 * kPi * kPi * (y - 1.0) * (y - 1.0) * std::cos(4.0 * kPi * y);
        return SymMatrix::from_rows({{hxx, hxy}, {hxy, hyy}});
    };
    return Objective(2, value, gradient, hessian, "levi13");
}

Objective eggholder() {
    return Objective(
        2,
        [](const Vector& p) {
            const double x = p[0], y = p[1] + 47.0;
            return -y * std::sin(std::sqrt(std::abs(x / 2.0 + y))) - x * std::sin(std::sqrt(std::abs(x - y)));
        },
        {}, {}, "eggholder");
}

Objective mccormick() {
    auto value = [](const Vector& p) {
        const double x = p[0], y = p[1];
        return std::sin(x + y) + (x - y) * (x - y) - 1.5 * x + 2.5 * y + 1.0;
    };
    auto gradient = [](const Vector& p) {
        const double c = std::cos(p[0] + p[1]), d = p[0] - p[1];
        return Vector{c + 2.0 * d - 1.5, c - 2.0 * d + 2.5};
    };
    auto hessian = [](const Vector& p) {
        const double s = std::sin(p[0] + p[1]);
        return SymMatrix::from_rows({{2.0 - s, -s - 2.0}, {-s - 2.0, 2.0 - s}});
    };
    return Objective(2, value, gradient, hessian, "mccormick");
}

Objective schaffer2() {
    // f = 0.5 + N / D^2 with N = sin^2(x^2 - y^2) - 0.5, D = 1 + 0.001 (x^2 + y^2).
    auto value = [](const Vector& p) {
        const double x = p[0], y = p[1];
        const double s = std::sin(x * x - y * y);
        const double d = 1.0 + 0.001 * (x * x + y * y);
        return 0.5 + (s * s - 0.5) / (d * d);
    };
    auto parts = [](const Vector& p, double& n, double* nd, double* ndd, double& d, double* dd) {
        const double x = p[0], y = p[1];
        const double u = x * x - y * y;
        const double s = std::sin(u), s2u = std::sin(2.0 * u), c2u = std::cos(2.0 * u);
        n = s * s - 0.5;
        nd[0] = 2.0 * x * s2u;
        nd[1] = -2.0 * y * s2u;
        ndd[0] = 2.0 * s2u + 8.0 * x * x * c2u;
        ndd[1] = -8.0 * x * y * c2u;
        ndd[2] = -2.0 * s2u + 8.0 * y * y * c2u;
        d = 1.0 + 0.001 * (x * x + y * y);
        dd[0] = 0.002 * x;
        dd[1] = 0.002 * y;
    };
    auto gradient = [parts](const Vector& p) {
        double n, nd[2], ndd[3], d, dd[2];
        parts(p, n, nd, ndd, d, dd);
        Vector g(2);
        for (int a = 0; a < 2; ++a) g[a] = nd[a] / (d * d) - 2.0 * n * dd[a] / (d * d * d);
        return g;
    };
    auto hessian = [parts](const Vector& p) {
        double n, nd[2], ndd[3], d, dd[2];
        parts(p, n, nd, ndd, d, dd);
        const double d2 = d * d, d3 = d2 * d, d4 = d3 * d;
        SymMatrix h(2);
        for (int a = 0; a < 2; ++a) {
            for (int b = a; b < 2; ++b) {
                const double nab = ndd[a + b];
                const double dab = a == b ? 0.002 : 0.0;
                h.set(a, b, nab / d2 - 2.0 * (nd[a] * dd[b] + nd[b] * dd[a]) / d3 + 6.0 * n * dd[a] * dd[b] / d4 -
                                2.0 * n * dab / d3);
            }
        }
        return h;
    };
    return Objective(2, value, gradient, hessian, "schaffer2");
}

Objective schaffer4() {
    return Objective(
        2,
        [](const Vector& p) {
            const double x = p[0], y = p[1];
            const double c = std::cos(std::sin(std::abs(x * x - y * y)));
            const double d = 1.0 + 0.001 * (x * x + y * y);
            return 0.5 + (c * c - 0.5) / (d * d);
        },
        {}, {}, "schaffer4");
}

Objective abs_valley() {
    return Objective(
        2,
        [](const Vector& p) {
            const double a = p[1] - std::abs(p[0]);
            return 100.0 * a * a + std::abs(1.0 - p[0]);
        },
        {}, {}, "abs-valley");
}

// ---- registry --------------------------------------------------------------

double param_double(const Params& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw InvalidInputError("parameter '" + key + "' is not a number: " + it->second);
    }
}

BenchmarkInfo entry(std::string id, int example, std::size_t min_dim, std::size_t max_dim, std::size_t default_dim,
                    std::optional<double> known_min, std::string formula, std::vector<std::string> fixture_names,
                    std::function<Objective(std::size_t, const Params&)> build) {
    BenchmarkInfo info;
    info.id = std::move(id);
    info.example = example;
    info.min_dim = min_dim;
    info.max_dim = max_dim;
    info.default_dim = default_dim;
    info.known_min = known_min;
    info.formula = std::move(formula);
    info.fixtures = std::move(fixture_names);
    info.build = std::move(build);
    return info;
}

std::vector<BenchmarkInfo> build_catalog() {
    std::vector<BenchmarkInfo> c;
    auto fixed = [](Objective (*make)()) { return [make](std::size_t, const Params&) { return make(); }; };

    c.push_back(entry("ex01", 1, 1, 1, 1, 0.0, "|x|^(4/3)", {"ex01"}, [](std::size_t, const Params&) {
        return scalar_objective("ex01", abs43, nullptr, nullptr);
    }));
    c.back().analytic = false;
    c.push_back(entry("ex02", 2, 1, 1, 1, 0.0, "|x|^(1/3)", {"ex02"}, [](std::size_t, const Params&) {
        return scalar_objective("ex02", abs13, nullptr, nullptr);
    }));
    c.back().analytic = false;
    c.push_back(entry("ex03", 3, 1, 1, 1, 0.0, "exp(-1/x^2)", {"ex03"}, [](std::size_t, const Params&) {
        return scalar_objective("ex03", expinv, expinv_d1, expinv_d2);
    }));
    c.push_back(entry("ex04", 4, 1, 1, 1, std::nullopt, "x^3 sin(1/x)", {"ex04"}, [](std::size_t, const Params&) {
        return scalar_objective("ex04", cubsin, cubsin_d1, cubsin_d2);
    }));
    c.push_back(entry("ex05", 5, 1, 1, 1, std::nullopt, "x^3 cos(1/x)", {"ex05"}, [](std::size_t, const Params&) {
        return scalar_objective("ex05", cubcos, cubcos_d1, cubcos_d2);
    }));
    c.push_back(entry("ex06", 6, 1, 1, 1, std::nullopt, "exp(x^2) - 2x^3", {"ex06-a", "ex06-b", "ex06-c"},
                      [](std::size_t, const Params&) { return scalar_objective("ex06", expcub, expcub_d1, expcub_d2); }));
    c.push_back(entry("ex07", 7, 2, 2, 2, 0.0, "(x-1)^2 + 100(y-x^2)^2", {"ex07"},
                      [](std::size_t, const Params&) { return rosenbrock(2); }));
    c.back().aliases = {"rosenbrock-2"};
    c.push_back(entry("ex08", 8, 4, 4, 4, 0.0, "f7(x1,x2) + f7(x2,x3) + f7(x3,x4)", {"ex08"},
                      [](std::size_t, const Params&) { return rosenbrock(4); }));
    c.push_back(entry("ex09", 9, 2, 2, 2, 0.0, "100(y-|x|)^2 + |1-x|", {"ex09"}, fixed(abs_valley)));
    c.back().analytic = false;
    c.push_back(entry("ex10", 10, 1, 1, 1, std::nullopt, "t^4/4 - t^2 + 2t", {"ex10"},
                      [](std::size_t, const Params&) { return scalar_objective("ex10", quartic, quartic_d1, quartic_d2); }));
    c.push_back(entry("ex11", 11, 1, 1, 1, std::nullopt,
                      "4/3 Ci(2/t) + t(t^2-2) sin(2/t)/3 + t^2/2 + t^2 cos(2/t)/3", {"ex11"},
                      [](std::size_t, const Params&) { return scalar_objective("ex11", ci_mix, ci_mix_d1, ci_mix_d2); }));
    c.back().optional = true;
    c.push_back(entry("ex12", 12, 2, 2, 2, std::nullopt, "x^2 + y^2 + 4xy", {"ex12"},
                      [](std::size_t, const Params&) { return quadratic_2d(1.0, 4.0, 1.0, "ex12"); }));
    c.push_back(entry("ex13", 13, 2, 2, 2, 0.0, "x^2 + y^2 + xy", {"ex13"},
                      [](std::size_t, const Params&) { return quadratic_2d(1.0, 1.0, 1.0, "ex13"); }));
    c.push_back(entry("ex14", 14, 2, 2, 2, 0.0, "x^2 + y^2 + 2xy", {"ex14"},
                      [](std::size_t, const Params&) { return quadratic_2d(1.0, 2.0, 1.0, "ex14"); }));
    c.push_back(entry("ex15", 15, 3, 3, 3, std::nullopt, "x^T H x / 2, H = [[-23,-61,40],[-61,-39.5,155],[40,155,-50]]",
                      {"ex15"}, [](std::size_t, const Params&) {
                          return make_quadratic(
                              SymMatrix::from_rows({{-23.0, -61.0, 40.0}, {-61.0, -39.5, 155.0}, {40.0, 155.0, -50.0}}),
                              "ex15");
                      }));
    c.push_back(entry("ex16", 16, 3, 3, 3, std::numbers::e - std::exp(1.5), "Ackley, D = 3", {"ex16-a", "ex16-b"},
                      [](std::size_t, const Params&) { return ackley(3); }));
    c.push_back(entry("ex17", 17, 4, 4, 4, 0.0, "Rastrigin, D = 4, A = 10", {"ex17-a", "ex17-b"},
                      [](std::size_t, const Params&) { return rastrigin(4, 10.0); }));
    c.push_back(entry("ex18", 18, 7, 7, 7, 0.0, "Rosenbrock chain, D = 7", {"ex18"},
                      [](std::size_t, const Params&) { return rosenbrock(7); }));
    c.push_back(entry("ex19", 19, 2, 2, 2, 0.0, "(1.5-x+xy)^2 + (2.25-x+xy^2)^2 + (2.625-x+xy^3)^2", {"ex19"},
                      fixed(beale)));
    c.back().aliases = {"beale"};
    c.push_back(entry("ex20", 20, 2, 2, 2, 0.0, "100 sqrt|y-0.01x^2| + 0.01|x+10|", {"ex20-a", "ex20-b"},
                      fixed(bukin6)));
    c.back().aliases = {"bukin6"};
    c.back().analytic = false;
    c.push_back(entry("ex21", 21, 2, 2, 2, 0.0,
                      "sin^2(3 pi x) + (x-1)^2 (1+sin^2(3 pi y)) + (y-1)^2 (1+sin^2(2 pi y))", {"ex21-a", "ex21-b"},
                      fixed(levi13)));
    c.back().aliases = {"levi13"};
    c.push_back(entry("ex22", 22, 2, 2, 2, -959.6407,
                      "-(y+47) sin sqrt|x/2+y+47| - x sin sqrt|x-(y+47)|", {"ex22-a", "ex22-b"}, fixed(eggholder)));
    c.back().aliases = {"eggholder"};
    c.back().analytic = false;
    c.push_back(entry("ex23", 23, 2, 2, 2, -1.9133, "sin(x+y) + (x-y)^2 - 1.5x + 2.5y + 1", {"ex23"},
                      fixed(mccormick)));
    c.back().aliases = {"mccormick"};
    c.push_back(entry("ex24", 24, 2, 2, 2, 0.0, "0.5 + (sin^2(x^2-y^2) - 0.5) / (1 + 0.001(x^2+y^2))^2",
                      {"ex24-a", "ex24-b"}, fixed(schaffer2)));
    c.back().aliases = {"schaffer2"};
    c.push_back(entry("ex25", 25, 2, 2, 2, 0.292579,
                      "0.5 + (cos^2(sin|x^2-y^2|) - 0.5) / (1 + 0.001(x^2+y^2))^2", {"ex25-a", "ex25-b"},
                      fixed(schaffer4)));
    c.back().aliases = {"schaffer4"};
    c.back().analytic = false;
    c.push_back(entry("ex26", 26, 2, 2, 2, -78.33233140754284, "sum (x_i^4 - 16x_i^2 + 5x_i) / 2, D = 2",
                      {"ex26-a", "ex26-b"}, [](std::size_t, const Params&) { return styblinski_tang(2); }));

    c.push_back(entry("rosenbrock", 0, 2, 0, 2, 0.0, "sum 100(x_{i+1}-x_i^2)^2 + (x_i-1)^2", {"rosenbrock30"},
                      [](std::size_t dim, const Params&) { return rosenbrock(dim); }));
    c.push_back(entry("styblinski-tang", 0, 1, 0, 2, -39.16616570377142, "sum (x_i^4 - 16x_i^2 + 5x_i) / 2",
                      {"styblinski100"}, [](std::size_t dim, const Params&) { return styblinski_tang(dim); }));
    c.back().per_coordinate_min = true;
    c.push_back(entry("griewank", 0, 1, 0, 15, 0.0, "1 + |x|^2/4000 - prod cos(x_i/sqrt(i))",
                      {"griewank15-p1", "griewank15-p2"}, [](std::size_t dim, const Params&) { return griewank(dim); }));
    c.push_back(entry("ackley", 0, 1, 0, 3, std::nullopt,
                      "-20 exp(-0.2 sqrt(0.5 |x|^2)) - exp(0.5 sum cos(2 pi x_i)) + e + 20", {},
                      [](std::size_t dim, const Params&) { return ackley(dim); }));
    c.push_back(entry("rastrigin", 0, 1, 0, 4, 0.0, "A D + sum (x_i^2 - A cos(2 pi x_i)), param A (default 10)", {},
                      [](std::size_t dim, const Params& p) { return rastrigin(dim, param_double(p, "A", 10.0)); }));
    c.push_back(entry("saddle", 0, 2, 2, 2, std::nullopt, "(x^2 - y^2) / 2", {}, [](std::size_t, const Params&) {
        return make_quadratic(SymMatrix::diagonal(Vector{1.0, -1.0}), "saddle");
    }));
    c.push_back(entry("protein", 0, 1, 0, 3, std::nullopt,
                      "toy AB protein bend energy, param seq (default ABBBA); dim = len(seq) - 2",
                      {"abbba-p1", "abbba-p2", "abbba-p3", "abbbababab-p1", "abbbababab-p2", "abbbababab-p3",
                       "abbbababab-p4"},
                      [](std::size_t dim, const Params& p) {
                          const auto it = p.find("seq");
                          const std::string seq = it == p.end() ? "ABBBA" : it->second;
                          Objective obj = make_protein_objective(seq);
                          if (dim != 0 && dim != obj.dim())
                              throw InvalidInputError("protein: sequence " + seq + " has dimension " +
                                                      std::to_string(obj.dim()));
                          return obj;
                      }));
    return c;
}

Fixture fx(std::string name, Vector x0) { return Fixture{std::move(name), std::move(x0)}; }

std::vector<Fixture> build_fixtures() {
    std::vector<Fixture> f;
    f.push_back(fx("ex01", {1.0}));
    f.push_back(fx("ex02", {1.0}));
    f.push_back(fx("ex03", {3.0}));
    f.push_back(fx("ex04", {0.75134554}));
    f.push_back(fx("ex05", {0.75134554}));
    f.push_back(fx("ex06-a", {0.6}));
    f.push_back(fx("ex06-b", {0.8}));
    f.push_back(fx("ex06-c", {0.9}));
    f.push_back(fx("ex07", {0.55134554, 0.75134554}));
    f.push_back(fx("ex08", {-0.7020, 0.5342, -2.0101, 2.002}));
    f.push_back(fx("ex09", {-0.99998925, 2.00001188}));
    f.push_back(fx("ex10", {0.0}));
    f.push_back(fx("ex11", {1.00001188}));
    f.push_back(fx("ex12", {1.0, 2.0}));
    f.push_back(fx("ex13", {0.55134554, 0.75134554}));
    f.push_back(fx("ex14", {0.55134554, 0.75134554}));
    f.push_back(fx("ex15", {0.00001188, 0.00002188, 0.00003188}));
    f.push_back(fx("ex16-a", {-2.94501548, -1.81794532, -2.44883475}));
    f.push_back(fx("ex16-b", {0.01, 0.02, -0.07}));
    f.push_back(fx("ex17-a", {-4.66266579, -2.69585675, -3.08589085, -2.25482451}));
    f.push_back(fx("ex17-b", {0.01, 0.5, -0.07, -0.3}));
    f.push_back(fx("ex18", {-2.95108579, -0.76552935, 1.83618076, -0.6336922, 1.33774087, -0.93499206, 3.51430143}));
    f.push_back(fx("ex19", {-0.52012358, -1.28227229}));
    f.push_back(fx("ex20-a", {4.38848192, -3.47943683}));
    f.push_back(fx("ex20-b", {-9.7, 0.7}));
    f.push_back(fx("ex21-a", {-3.52914182, 1.36683019}));
    f.push_back(fx("ex21-b", {0.95, 1.15}));
    f.push_back(fx("ex22-a", {224.63208339, -188.85104265}));
    f.push_back(fx("ex22-b", {500.0, 450.0}));
    f.push_back(fx("ex23", {-2.28637302, 1.52532269}));
    f.push_back(fx("ex24-a", {-57.32135254, -17.85920667}));
    f.push_back(fx("ex24-b", {0.5, -0.7}));
    f.push_back(fx("ex25-a", {86.64664502, 23.63197178}));
    f.push_back(fx("ex25-b", {0.5, 1.25313 + 0.8}));
    f.push_back(fx("ex26-a", {1.02183524, 0.13979978}));
    f.push_back(fx("ex26-b", {-2.903534 + 0.3, -2.903534 - 0.8}));

    f.push_back(fx("rosenbrock30",
                   {0.26010457,  -10.91803423, 2.98112261,  -15.95313456, -2.78250859, -0.77467653,
                    -2.02113182, 9.10887908,   -10.45035903, 11.94967756, -1.24926898,  -2.13950642,
                    7.20804014,  1.0291962,    0.06391697,  2.71562242,  -11.41484204, 10.59539405,
                    12.95776531, 11.13258434,  8.16230421,  -17.21206152, -4.0493811,  -19.69634293,
                    14.25263482, 3.19319406,   11.45059677, 18.89542157, 19.44495031,  -3.66913821}));
    f.push_back(fx("styblinski100",
                   {-0.15359941, -0.59005902, 0.45366905,  -0.94873933, 0.52152264,  -0.02738085, 0.17599868,
                    0.36736119,  0.30861332,  0.90622707,  0.10472251,  -0.74494753, 0.67337336,  -0.21703503,
                    -0.17819413, -0.14024491, -0.93297061, 0.63585997,  -0.34774991, -0.02915787, -0.17318147,
                    -0.04669807, 0.03478713,  -0.21959983, 0.54296245,  0.71978214,  -0.50010954, -0.69673303,
                    0.583932,    -0.38138978, -0.85625076, 0.20134663,  -0.71309977, -0.61278167, 0.86638939,
                    0.45731164,  -0.32956812, 0.64553452,  -0.89968231, 0.79641384,  0.44785232,  0.38489415,
                    -0.51330669, 0.81273771,  -0.54611157, -0.87101225, -0.72997209, -0.16185048, 0.38042508,
                    -0.63330049, 0.71930612,  -0.33714448, -0.24835364, -0.78859559, -0.07531072, 0.19087508,
                    -0.95964552, -0.72759281, 0.13079216,  0.6982817,   0.54827214,  0.70860856,  -0.51314115,
                    -0.54742142, 0.73180924,  -0.28666226, 0.89588517,  0.35797497,  -0.21406766, -0.05558283,
                    0.89932563,  -0.16479757, -0.29753867, 0.5090385,   0.95156811,  0.8701501,   0.62499125,
                    -0.22215331, 0.8355082,   -0.83695582, -0.96214862, -0.22495384, -0.30823426, 0.55635375,
                    0.38262606,  -0.60688932, -0.04303575, 0.59260985,  0.5887739,   -0.00570958, -0.502354,
                    0.50740011,  -0.08916369, 0.62672251,  0.13993309,  -0.92816931, 0.50047918,  0.856543,
                    0.99560466,  -0.44254687}));
    f.push_back(fx("griewank15-p1", Vector(15, 10.0)));
    f.push_back(fx("griewank15-p2", {-0.24657266, -5.45285145, -0.92531932, -5.68778641, 1.64861456, 5.65718487,
                                     -6.17919738, 2.95625737, -6.47274618, -0.47513139, -8.60344445, 0.74612203,
                                     3.70371132, -6.39595989, 7.5908029}));
    f.push_back(fx("griewank10-p1", Vector(10, 10.0)));
    f.push_back(fx("abbba-p1", {-0.0534927, 1.61912758, 2.9567358}));
    f.push_back(fx("abbba-p2", {1.80953527, -1.74233202, 2.45974152}));
    f.push_back(fx("abbba-p3", {1.07689387, 2.97081771, 0.800213082}));
    f.push_back(fx("abbbababab-p1",
                   {-3.00156524, -1.5427558, 1.9394472, -2.74672374, -1.82664375, 1.96928115, -1.26350718, 2.82317321}));
    f.push_back(fx("abbbababab-p2",
                   {1.50386159, -1.36306552, 2.93979824, 1.01082799, -1.56261475, 1.61429959, -0.02311273, -1.8108999}));
    f.push_back(fx("abbbababab-p3",
                   {2.89936055, 2.5913901, -1.40975004, -2.76032304, -3.05060738, 1.09171554, 1.33525563, -1.85212602}));
    f.push_back(fx("abbbababab-p4",
                   {-1.3335047, 2.76782837, -1.89518385, 2.52345111, -0.33519698, -1.98794015, 0.02088706, -1.09200044}));
    return f;
}

} // namespace

const std::vector<BenchmarkInfo>& benchmark_catalog() {
    static const std::vector<BenchmarkInfo> catalog = build_catalog();
    return catalog;
}

const BenchmarkInfo& find_benchmark(const std::string& name) {
    for (const auto& info : benchmark_catalog()) {
        if (info.id == name) return info;
        for (const auto& alias : info.aliases)
            if (alias == name) return info;
    }
    throw UnknownNameError("unknown benchmark function: " + name);
}

Objective make_benchmark(const std::string& name, std::size_t dim, const Params& params) {
    const BenchmarkInfo& info = find_benchmark(name);
    const bool protein = info.id == "protein";
    const std::size_t d = dim == 0 ? info.default_dim : dim;
    if (!protein && (d < info.min_dim || (info.max_dim != 0 && d > info.max_dim)))
        throw InvalidInputError("benchmark '" + name + "' does not accept dimension " + std::to_string(d));
    return info.build(protein ? dim : d, params);
}

std::optional<double> known_minimum(const BenchmarkInfo& info, std::size_t dim) {
    if (!info.known_min) return std::nullopt;
    if (info.per_coordinate_min) return *info.known_min * static_cast<double>(dim);
    return info.known_min;
}

std::string catalog_json() {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& info : benchmark_catalog()) {
        nlohmann::json item;
        item["id"] = info.id;
        item["aliases"] = info.aliases;
        item["example"] = info.example;
        item["min_dim"] = info.min_dim;
        item["max_dim"] = info.max_dim == 0 ? nlohmann::json(nullptr) : nlohmann::json(info.max_dim);
        item["default_dim"] = info.default_dim;
        if (info.known_min)
            item["known_min"] = info.per_coordinate_min ? nlohmann::json({{"per_coordinate", *info.known_min}})
                                                        : nlohmann::json(*info.known_min);
        else
            item["known_min"] = nullptr;
        item["derivatives"] = info.analytic ? "analytic" : "finite-difference";
        item["optional"] = info.optional;
        item["formula"] = info.formula;
        item["fixtures"] = info.fixtures;
        list.push_back(item);
    }
    return list.dump(2);
}

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = build_fixtures();
    return all;
}

const Vector& named_fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f.x0;
    throw UnknownNameError("unknown fixture: " + name);
}

double cosine_integral(double x) {
    if (!(x > 0.0)) throw InvalidInputError("cosine_integral: argument must be positive");
    constexpr double kEuler = 0.57721566490153286061;
    constexpr double kEps = 1e-16;
    if (x <= 4.0) {
        // Ci(x) = gamma + ln x + sum_{k>=1} (-1)^k x^{2k} / (2k (2k)!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 100; ++k) {
            term *= -x * x / ((2.0 * k - 1.0) * (2.0 * k));
            const double add = term / (2.0 * k);
            sum += add;
            if (std::abs(add) < kEps * std::abs(sum)) break;
        }
        return kEuler + std::log(x) + sum;
    }
    // Continued fraction for E1(ix) evaluated by the modified Lentz method.
    const std::complex<double> one(1.0, 0.0);
    std::complex<double> b(1.0, x);
    std::complex<double> c(1.0 / std::numeric_limits<double>::min(), 0.0);
    std::complex<double> d = one / b;
    std::complex<double> h = d;
    for (int i = 2; i < 1000; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = one / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= std::complex<double>(std::cos(x), -std::sin(x));
    return -h.real();
}

} // namespace qnewton
