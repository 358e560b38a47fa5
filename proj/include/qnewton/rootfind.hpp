#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qnewton/objective.hpp"
#include "qnewton/optimizers.hpp"

namespace qnewton {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(Complex)>;

inline constexpr double kRootTol = 1e-8;

/// A meromorphic g with its first two derivatives.
struct MeroFunction {
    ComplexFn g;
    ComplexFn g1;
    ComplexFn g2;
    double pole_guard = 1e50;
    std::string name = "g";
};

/// f(x, y) = |g(x + iy)|^2 with gradient and Hessian assembled from g, g', g''.
/// Evaluations with |g| above the pole guard (or non-finite) throw DomainError.
Objective mero_objective(const MeroFunction& m);

enum class RootClass { RootOfG, SaddleOfF, Degenerate, Diverged };

std::string to_string(RootClass c);

/// |g| <= tol: root of g; else |g'| <= tol and |g g''| > tol: saddle of f;
/// otherwise degenerate.
RootClass classify_critical_point(const MeroFunction& m, Complex z, double tol = kRootTol);

struct RootResult {
    Complex z;
    double f_value = 0.0;
    RootClass classification = RootClass::Degenerate;
    Trace trace;

    /// {"z": [re, im], "f": ..., "classification": ..., "iterations": ..., "termination": ...}
    std::string json() const;
};

RootResult find_root(const MeroFunction& m, Complex z0, Method method = Method::Nqn, const StopCriteria& stop = {},
                     const DeltaSchedule& sched = {}, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Built-in functions

/// Coefficients highest degree first; evaluated with Horner's scheme.
MeroFunction polynomial(std::vector<Complex> coeffs, std::string name = "poly");

/// Expands prod (z - r)^m into coefficients, highest degree first.
std::vector<Complex> expand_roots(const std::vector<std::pair<Complex, int>>& roots);

/// Parses "1,0,1" or "1+2i,-0.5i,3" (highest degree first); throws InvalidInputError.
std::vector<Complex> parse_coefficients(const std::string& text);

/// sum_{n=1}^{terms} n^{-z}.
MeroFunction zeta_partial_sum(std::size_t terms, std::string name = "zeta-partial");

/// Derivative of the quotient of exponential sums used by g3.
MeroFunction exponential_quotient_derivative(const std::vector<double>& num, const std::vector<double>& den,
                                             std::string name);

/// g1 ... g6; throws UnknownNameError.
MeroFunction builtin_mero(const std::string& name);
const std::vector<std::string>& builtin_mero_names();

struct RootStart {
    std::string name;     // e.g. "g2-p1"
    std::string function; // builtin name
    Complex z0;
};
const std::vector<RootStart>& root_starts();

} // namespace qnewton
