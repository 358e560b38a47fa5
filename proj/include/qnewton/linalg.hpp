#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qnewton {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);
double norm_inf(std::span<const double> v);
bool all_finite(std::span<const double> v);

/// a - b
Vector subtract(std::span<const double> a, std::span<const double> b);
/// x + s * d
Vector axpy(std::span<const double> x, double s, std::span<const double> d);

/// Dense symmetric matrix. Writes go through set(), which mirrors the entry,
/// so entries(i, j) == entries(j, i) holds bit-for-bit.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t dim, double fill = 0.0);

    static SymMatrix identity(std::size_t dim);
    static SymMatrix diagonal(std::span<const double> diag);
    /// Throws InvalidInputError unless rows form a square, exactly symmetric matrix.
    static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static SymMatrix from_rows(const std::vector<Vector>& rows);

    std::size_t dim() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, double v) noexcept {
        data_[i * dim_ + j] = v;
        data_[j * dim_ + i] = v;
    }
    void add_to_diagonal(double v) noexcept;

    Vector multiply(std::span<const double> x) const;
    /// Max absolute row sum.
    double norm_inf() const noexcept;
    bool all_finite() const noexcept;

    const std::vector<double>& data() const noexcept { return data_; }

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

} // namespace qnewton
