#include <cmath>
#include <string>

#include "qnewton/error.hpp"
#include "qnewton/objective.hpp"

namespace qnewton {
namespace {

constexpr double kOverlapRadius = 1e-12;

struct ProteinEval {
    double value = 0.0;
    Vector grad;
    SymMatrix hess;
};

void check_inputs(const Vector& theta, const std::vector<int>& xi) {
    if (xi.size() < 3) throw InvalidInputError("protein: need at least 3 residues");
    if (theta.size() != xi.size() - 2)
        throw InvalidInputError("protein: expected " + std::to_string(xi.size() - 2) + " bend angles, got " +
                                std::to_string(theta.size()));
    for (int s : xi)
        if (s != 1 && s != -1) throw InvalidInputError("protein: residue labels must be +1 or -1");
}

double coupling(int a, int b) { return (1.0 + a + b + 5.0 * a * b) / 8.0; }

// order 0: value only, 1: + gradient, 2: + Hessian.
ProteinEval evaluate(const Vector& theta, const std::vector<int>& xi, int order) {
    check_inputs(theta, xi);
    const std::size_t n = xi.size();
    const std::size_t m = theta.size();
    ProteinEval out;
    if (order >= 1) out.grad.assign(m, 0.0);
    if (order >= 2) out.hess = SymMatrix(m);

    for (std::size_t t = 0; t < m; ++t) {
        out.value += 0.25 * (1.0 - std::cos(theta[t]));
        if (order >= 1) out.grad[t] += 0.25 * std::sin(theta[t]);
        if (order >= 2) out.hess.set(t, t, out.hess(t, t) + 0.25 * std::cos(theta[t]));
    }

    // Bead pair (a, b), 0-based, b >= a + 2. The chain between them runs
    // through the partial angle sums phi_k = theta[a] + ... + theta[a + k].
    Vector cphi, sphi, xt, yt;
    for (std::size_t a = 0; a + 2 < n; ++a) {
        for (std::size_t b = a + 2; b < n; ++b) {
            const std::size_t len = b - a - 1;
            cphi.assign(len, 0.0);
            sphi.assign(len, 0.0);
            double phi = 0.0, x = 0.0, y = 0.0;
            for (std::size_t k = 0; k < len; ++k) {
                phi += theta[a + k];
                cphi[k] = std::cos(phi);
                sphi[k] = std::sin(phi);
                x += cphi[k];
                y += sphi[k];
            }
            const double r2 = x * x + y * y;
            if (!(r2 >= kOverlapRadius * kOverlapRadius)) throw DomainError("protein: overlapping beads", theta);

            const double c = coupling(xi[a], xi[b]);
            const double inv3 = 1.0 / (r2 * r2 * r2);
            out.value += 4.0 * (inv3 * inv3 - c * inv3);
            if (order == 0) continue;

            // Suffix sums give d/dtheta[a+k] of x and y (phi_j depends on theta[a+k] iff j >= k).
            xt.assign(len, 0.0);
            yt.assign(len, 0.0);
            double cs = 0.0, ss = 0.0;
            for (std::size_t k = len; k-- > 0;) {
                cs += cphi[k];
                ss += sphi[k];
                xt[k] = -ss;
                yt[k] = cs;
            }
            const double dv = 4.0 * (-6.0 * inv3 * inv3 / r2 + 3.0 * c * inv3 / r2);
            for (std::size_t k = 0; k < len; ++k) out.grad[a + k] += dv * 2.0 * (x * xt[k] + y * yt[k]);
            if (order < 2) continue;

            const double d2v = 4.0 * (42.0 * inv3 * inv3 / (r2 * r2) - 12.0 * c * inv3 / (r2 * r2));
            for (std::size_t k = 0; k < len; ++k) {
                const double rk = 2.0 * (x * xt[k] + y * yt[k]);
                for (std::size_t l = k; l < len; ++l) {
                    const double rl = 2.0 * (x * xt[l] + y * yt[l]);
                    // Second partials of x, y: -(suffix sums of cos, sin) from max(k, l) = l.
                    const double xkl = -yt[l];
                    const double ykl = xt[l];
                    const double rkl = 2.0 * (xt[k] * xt[l] + yt[k] * yt[l]) + 2.0 * (x * xkl + y * ykl);
                    const double add = d2v * rk * rl + dv * rkl;
                    out.hess.set(a + k, a + l, out.hess(a + k, a + l) + add);
                }
            }
        }
    }
    return out;
}

} // namespace

double protein_energy(const Vector& theta, const std::vector<int>& xi) { return evaluate(theta, xi, 0).value; }

Vector protein_gradient(const Vector& theta, const std::vector<int>& xi) { return evaluate(theta, xi, 1).grad; }

SymMatrix protein_hessian(const Vector& theta, const std::vector<int>& xi) { return evaluate(theta, xi, 2).hess; }

std::vector<int> parse_protein_sequence(const std::string& seq) {
    std::vector<int> xi;
    xi.reserve(seq.size());
    for (char ch : seq) {
        if (ch == 'A' || ch == 'a')
            xi.push_back(1);
        else if (ch == 'B' || ch == 'b')
            xi.push_back(-1);
        else
            throw InvalidInputError("protein: sequence must contain only A and B, got '" + seq + "'");
    }
    if (xi.size() < 3) throw InvalidInputError("protein: sequence needs at least 3 residues");
    return xi;
}

Objective make_protein_objective(const std::string& seq) {
    const std::vector<int> xi = parse_protein_sequence(seq);
    return Objective(
        xi.size() - 2, [xi](const Vector& t) { return protein_energy(t, xi); },
        [xi](const Vector& t) { return protein_gradient(t, xi); },
        [xi](const Vector& t) { return protein_hessian(t, xi); }, "protein-" + seq);
}

} // namespace qnewton
