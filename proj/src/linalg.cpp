#include "qnewton/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qnewton/error.hpp"

namespace qnewton {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> v) {
    // Scaled accumulation so huge iterates (divergence detection) don't overflow early.
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (double x : v) {
        const double r = x / scale;
        s += r * r;
    }
    return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector axpy(std::span<const double> x, double s, std::span<const double> d) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + s * d[i];
    return out;
}

SymMatrix::SymMatrix(std::size_t dim, double fill) : dim_(dim), data_(dim * dim, fill) {}

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.data_[i * dim + i] = 1.0;
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    SymMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * diag.size() + i] = diag[i];
    return m;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<Vector> r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.emplace_back(row);
    return from_rows(r);
}

SymMatrix SymMatrix::from_rows(const std::vector<Vector>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidInputError("SymMatrix: empty matrix");
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw InvalidInputError("SymMatrix: rows must form a square matrix");
        for (std::size_t j = 0; j < n; ++j) m.data_[i * n + j] = rows[i][j];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m.data_[i * n + j] != m.data_[j * n + i])
                throw InvalidInputError("SymMatrix: matrix is not symmetric");
    return m;
}

void SymMatrix::add_to_diagonal(double v) noexcept {
    for (std::size_t i = 0; i < dim_; ++i) data_[i * dim_ + i] += v;
}

Vector SymMatrix::multiply(std::span<const double> x) const {
    Vector out(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) s += data_[i * dim_ + j] * x[j];
        out[i] = s;
    }
    return out;
}

double SymMatrix::norm_inf() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) s += std::abs(data_[i * dim_ + j]);
        m = std::max(m, s);
    }
    return m;
}

bool SymMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

} // namespace qnewton
