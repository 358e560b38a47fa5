#include "qnewton/rootfind.hpp"

#include <cctype>
#include <cmath>

#include "json.hpp"
#include "qnewton/error.hpp"

namespace qnewton {
namespace {

struct MeroEval {
    Complex g, g1, g2;
};

MeroEval eval_checked(const MeroFunction& m, const Vector& p) {
    const Complex z(p[0], p[1]);
    const Complex g = m.g(z);
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()) || std::abs(g) > m.pole_guard)
        throw DomainError(m.name + ": too close to a pole", p);
    return {g, m.g1 ? m.g1(z) : Complex(), m.g2 ? m.g2(z) : Complex()};
}

} // namespace

Objective mero_objective(const MeroFunction& m) {
    if (!m.g || !m.g1 || !m.g2) throw InvalidInputError("meromorphic function needs g, g' and g''");
    auto value = [m](const Vector& p) { return std::norm(eval_checked(m, p).g); };
    auto gradient = [m](const Vector& p) {
        const MeroEval e = eval_checked(m, p);
        const Complex t = std::conj(e.g) * e.g1;
        return Vector{2.0 * t.real(), -2.0 * t.imag()};
    };
    auto hessian = [m](const Vector& p) {
        const MeroEval e = eval_checked(m, p);
        const double d1 = std::norm(e.g1);
        const Complex t = std::conj(e.g) * e.g2;
        SymMatrix h(2);
        h.set(0, 0, 2.0 * (d1 + t.real()));
        h.set(0, 1, -2.0 * t.imag());
        h.set(1, 1, 2.0 * (d1 - t.real()));
        return h;
    };
    return Objective(2, value, gradient, hessian, m.name);
}

std::string to_string(RootClass c) {
    switch (c) {
    case RootClass::RootOfG:
        return "root-of-g";
    case RootClass::SaddleOfF:
        return "saddle-of-f";
    case RootClass::Degenerate:
        return "degenerate";
    case RootClass::Diverged:
        return "diverged";
    }
    return "unknown";
}

RootClass classify_critical_point(const MeroFunction& m, Complex z, double tol) {
    const Complex g = m.g(z);
    if (std::abs(g) <= tol) return RootClass::RootOfG;
    if (std::abs(m.g1(z)) <= tol && std::abs(g * m.g2(z)) > tol) return RootClass::SaddleOfF;
    return RootClass::Degenerate;
}

std::string RootResult::json() const {
    nlohmann::json j;
    j["z"] = {z.real(), z.imag()};
    j["f"] = std::isfinite(f_value) ? nlohmann::json(f_value) : nlohmann::json(nullptr);
    j["classification"] = to_string(classification);
    j["iterations"] = trace.iterations();
    j["termination"] = to_string(trace.termination);
    return j.dump();
}

RootResult find_root(const MeroFunction& m, Complex z0, Method method, const StopCriteria& stop,
                     const DeltaSchedule& sched, std::uint64_t seed) {
    const Objective obj = mero_objective(m);
    RootResult r;
    r.trace = run(method, obj, Vector{z0.real(), z0.imag()}, sched, stop, seed);
    const IterationRecord& last = r.trace.last();
    r.z = Complex(last.x[0], last.x[1]);
    r.f_value = last.f;
    if (r.trace.termination == Termination::Diverged) {
        r.classification = RootClass::Diverged;
        return r;
    }
    const RootClass c = classify_critical_point(m, r.z);
    // Only a converged run sits at a critical point; otherwise a non-root is inconclusive.
    r.classification = (c == RootClass::RootOfG || r.trace.termination == Termination::Converged)
                           ? c
                           : RootClass::Degenerate;
    return r;
}

// ---------------------------------------------------------------------------
// Built-in functions

MeroFunction polynomial(std::vector<Complex> coeffs, std::string name) {
    if (coeffs.empty()) throw InvalidInputError("polynomial: at least one coefficient is required");
    // Horner for p, p', p'' in one pass.
    auto eval = [coeffs](Complex z, int order) {
        Complex p = coeffs[0], d1 = 0.0, d2 = 0.0;
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            d2 = d2 * z + 2.0 * d1;
            d1 = d1 * z + p;
            p = p * z + coeffs[i];
        }
        return order == 0 ? p : order == 1 ? d1 : d2;
    };
    MeroFunction m;
    m.g = [eval](Complex z) { return eval(z, 0); };
    m.g1 = [eval](Complex z) { return eval(z, 1); };
    m.g2 = [eval](Complex z) { return eval(z, 2); };
    m.name = std::move(name);
    return m;
}

std::vector<Complex> expand_roots(const std::vector<std::pair<Complex, int>>& roots) {
    std::vector<Complex> c{Complex(1.0)};
    for (const auto& [r, mult] : roots) {
        if (mult < 1) throw InvalidInputError("expand_roots: multiplicity must be positive");
        for (int k = 0; k < mult; ++k) {
            std::vector<Complex> next(c.size() + 1, Complex(0.0));
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i] += c[i];
                next[i + 1] -= r * c[i];
            }
            c = std::move(next);
        }
    }
    return c;
}

namespace {

double parse_real(const std::string& s, const std::string& whole) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidInputError("bad coefficient '" + whole + "'");
    }
}

Complex parse_complex(std::string s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw InvalidInputError("empty coefficient");
    if (t.back() != 'i' && t.back() != 'j') return Complex(parse_real(t, s), 0.0);
    t.pop_back();
    // Split "a+b" / "a-b" at the last sign that is not an exponent sign or the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](const std::string& u) {
        if (u.empty() || u == "+") return 1.0;
        if (u == "-") return -1.0;
        return parse_real(u, s);
    };
    if (split == std::string::npos) return Complex(0.0, imag_part(t));
    return Complex(parse_real(t.substr(0, split), s), imag_part(t.substr(split)));
}

} // namespace

std::vector<Complex> parse_coefficients(const std::string& text) {
    std::vector<Complex> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_complex(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    while (out.size() > 1 && out.front() == Complex(0.0)) out.erase(out.begin());
    if (out.size() < 2) throw InvalidInputError("polynomial must have degree at least 1");
    return out;
}

MeroFunction zeta_partial_sum(std::size_t terms, std::string name) {
    if (terms == 0) throw InvalidInputError("zeta partial sum: need at least one term");
    std::vector<double> logs(terms);
    for (std::size_t n = 1; n <= terms; ++n) logs[n - 1] = std::log(static_cast<double>(n));
    auto eval = [logs](Complex z, int order) {
        Complex s = 0.0;
        for (double l : logs) {
            const Complex term = std::exp(-z * l);
            s += order == 0 ? term : order == 1 ? -l * term : l * l * term;
        }
        return s;
    };
    MeroFunction m;
    m.g = [eval](Complex z) { return eval(z, 0); };
    m.g1 = [eval](Complex z) { return eval(z, 1); };
    m.g2 = [eval](Complex z) { return eval(z, 2); };
    m.name = std::move(name);
    return m;
}

MeroFunction exponential_quotient_derivative(const std::vector<double>& num, const std::vector<double>& den,
                                             std::string name) {
    // E(z) = sum_j c_j e^{-j z}, so E^(k)(z) = sum_j c_j (-j)^k e^{-j z}.
    auto derivs = [](const std::vector<double>& c, Complex z, Complex out[4]) {
        for (int k = 0; k < 4; ++k) out[k] = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            const double jj = static_cast<double>(j);
            const Complex e = c[j] * std::exp(-jj * z);
            double pw = 1.0;
            for (int k = 0; k < 4; ++k) {
                out[k] += pw * e;
                pw *= -jj;
            }
        }
    };
    // q = N / D, and q', q'', q''' from differentiating q D = N repeatedly.
    auto eval = [num, den, derivs](Complex z, int order) {
        Complex n[4], d[4];
        derivs(num, z, n);
        derivs(den, z, d);
        const Complex q0 = n[0] / d[0];
        const Complex q1 = (n[1] - q0 * d[1]) / d[0];
        if (order == 0) return q1;
        const Complex q2 = (n[2] - 2.0 * q1 * d[1] - q0 * d[2]) / d[0];
        if (order == 1) return q2;
        return (n[3] - 3.0 * q2 * d[1] - 3.0 * q1 * d[2] - q0 * d[3]) / d[0];
    };
    MeroFunction m;
    m.g = [eval](Complex z) { return eval(z, 0); };
    m.g1 = [eval](Complex z) { return eval(z, 1); };
    m.g2 = [eval](Complex z) { return eval(z, 2); };
    m.name = std::move(name);
    return m;
}

MeroFunction builtin_mero(const std::string& name) {
    if (name == "g1") {
        const double c[] = {1250162561, 385455882, 845947696, 240775148, 247926664, 64249356,
                            41018752,   9490840,   4178260,   837860,    267232,    44184,
                            10416,      1288,      242,       16,        2};
        return polynomial(std::vector<Complex>(std::begin(c), std::end(c)), "g1");
    }
    if (name == "g2") return polynomial({1.0, 0.0, 1.0}, "g2");
    if (name == "g3")
        return exponential_quotient_derivative({1.0, -1.005, 0.525, -0.475, -0.045}, {0.0, 2.27, -2.19, 1.86, -0.38},
                                               "g3");
    if (name == "g4") return polynomial(expand_roots({{0.0, 1}, {1.0, 2}, {2.0, 3}, {5.0, 5}}), "g4");
    if (name == "g5") return zeta_partial_sum(101, "g5");
    if (name == "g6") return zeta_partial_sum(1001, "g6");
    throw UnknownNameError("unknown builtin function: " + name);
}

const std::vector<std::string>& builtin_mero_names() {
    static const std::vector<std::string> names = {"g1", "g2", "g3", "g4", "g5", "g6"};
    return names;
}

const std::vector<RootStart>& root_starts() {
    static const std::vector<RootStart> starts = {
        {"g1", "g1", {6.58202917, -7.93929341}},  {"g2-p1", "g2", {4.0963223, -8.0935966}},
        {"g2-p2", "g2", {0.317, -0.15}},          {"g3", "g3", {-0.227, 1.115}},
        {"g4", "g4", {4.48270522, 3.79095724}},   {"g5", "g5", {-8.5209648, 1.28480016}},
        {"g6", "g6", {9.76536427, -4.15647151}},
    };
    return starts;
}

} // namespace qnewton
