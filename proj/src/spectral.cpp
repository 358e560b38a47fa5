#include "qnewton/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qnewton/error.hpp"

namespace qnewton::spectral {
namespace {

// Applies the rotation in the (p, q) plane that annihilates a(p, q).
// a is row-major dense, v accumulates eigenvectors as columns.
void rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n, std::size_t p, std::size_t q) {
    const double apq = a[p * n + q];
    const double app = a[p * n + p];
    const double aqq = a[q * n + q];

    const double theta = (aqq - app) / (2.0 * apq);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    if (!std::isfinite(theta)) t = apq / (aqq - app); // |theta| overflowed: t ~ 1/(2 theta)
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const double arp = a[r * n + p];
        const double arq = a[r * n + q];
        const double new_rp = arp - s * (arq + tau * arp);
        const double new_rq = arq + s * (arp - tau * arq);
        a[r * n + p] = new_rp;
        a[p * n + r] = new_rp;
        a[r * n + q] = new_rq;
        a[q * n + r] = new_rq;
    }
    for (std::size_t r = 0; r < n; ++r) {
        const double vrp = v[r * n + p];
        const double vrq = v[r * n + q];
        v[r * n + p] = vrp - s * (vrq + tau * vrp);
        v[r * n + q] = vrq + s * (vrp - tau * vrq);
    }
}

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

} // namespace

SpectralDecomposition eigh(const SymMatrix& matrix, const JacobiOptions& options) {
    if (matrix.dim() == 0) throw InvalidInputError("eigh: empty matrix");
    if (!matrix.all_finite()) throw InvalidInputError("eigh: matrix has non-finite entries");

    const std::size_t n = matrix.dim();
    std::vector<double> a = matrix.data();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double frob = 0.0;
    for (double x : a) frob += x * x;
    frob = std::sqrt(frob);
    const double target = std::numeric_limits<double>::epsilon() * frob * 0.01;

    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        const double off = off_diagonal_norm(a, n);
        if (off == 0.0 || off <= target) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                // Entry already negligible against both diagonal entries: drop it.
                const double scale = std::abs(a[p * n + p]) + std::abs(a[q * n + q]);
                if (sweep > 3 && scale + 100.0 * std::abs(apq) == scale) {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                rotate(a, v, n, p, q);
            }
        }
    }
    if (!converged) {
        if (off_diagonal_norm(a, n) > target) throw NoConvergenceError("eigh: Jacobi sweep limit exceeded");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, Vector(n));
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t col = order[k];
        out.eigenvalues[k] = a[col * n + col];
        Vector& e = out.eigenvectors[k];
        std::size_t big = 0;
        for (std::size_t r = 0; r < n; ++r) {
            e[r] = v[r * n + col];
            if (std::abs(e[r]) > std::abs(e[big])) big = r;
        }
        if (e[big] < 0.0)
            for (double& x : e) x = -x;
    }
    return out;
}

Vector reflect_inverse_apply(const SpectralDecomposition& decomp, const Vector& g) {
    const std::size_t n = decomp.dim();
    if (g.size() != n) throw InvalidInputError("reflect_inverse_apply: dimension mismatch");
    Vector w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double lambda = decomp.eigenvalues[i];
        if (lambda == 0.0) throw SingularMatrixError("reflect_inverse_apply: zero eigenvalue");
        const double coeff = dot(decomp.eigenvectors[i], g) / std::abs(lambda);
        for (std::size_t r = 0; r < n; ++r) w[r] += coeff * decomp.eigenvectors[i][r];
    }
    return w;
}

Vector inverse_apply(const SpectralDecomposition& decomp, const Vector& g) {
    const std::size_t n = decomp.dim();
    if (g.size() != n) throw InvalidInputError("inverse_apply: dimension mismatch");
    Vector v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double lambda = decomp.eigenvalues[i];
        if (lambda == 0.0) throw SingularMatrixError("inverse_apply: zero eigenvalue");
        const double coeff = dot(decomp.eigenvectors[i], g) / lambda;
        for (std::size_t r = 0; r < n; ++r) v[r] += coeff * decomp.eigenvectors[i][r];
    }
    return v;
}

double min_abs_eigenvalue(const SpectralDecomposition& decomp) {
    double m = std::numeric_limits<double>::infinity();
    for (double l : decomp.eigenvalues) m = std::min(m, std::abs(l));
    return m;
}

double max_abs_eigenvalue(const SpectralDecomposition& decomp) {
    double m = 0.0;
    for (double l : decomp.eigenvalues) m = std::max(m, std::abs(l));
    return m;
}

SymMatrix reconstruct(const SpectralDecomposition& decomp) {
    const std::size_t n = decomp.dim();
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += decomp.eigenvalues[k] * decomp.eigenvectors[k][i] * decomp.eigenvectors[k][j];
            out.set(i, j, s);
        }
    }
    return out;
}

} // namespace qnewton::spectral
