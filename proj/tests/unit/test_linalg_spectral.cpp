#include <cmath>
#include <random>

#include "doctest.h"
#include "qnewton/error.hpp"
#include "qnewton/linalg.hpp"
#include "qnewton/spectral.hpp"

using namespace qnewton;

namespace {

// Closed-form eigenpairs of a symmetric 2x2 matrix, used as an oracle.
struct Eig2 {
    double l1, l2;      // ascending
    double v1[2], v2[2]; // unit eigenvectors
};

Eig2 eig2(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), b);
    Eig2 e{mean - r, mean + r, {}, {}};
    auto vec = [&](double l, double* v) {
        double x = b, y = l - a;
        if (std::abs(x) + std::abs(y) < 1e-300) {
            x = l - d;
            y = b;
        }
        if (std::abs(x) + std::abs(y) < 1e-300) {
            x = (a <= d) == (l == e.l1) ? 1.0 : 0.0;
            y = 1.0 - x;
        }
        const double n = std::hypot(x, y);
        v[0] = x / n;
        v[1] = y / n;
    };
    vec(e.l1, e.v1);
    vec(e.l2, e.v2);
    return e;
}

double mat_diff(const SymMatrix& a, const SymMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

} // namespace

TEST_CASE("symmetric storage mirrors writes and rejects asymmetric input") {
    SymMatrix m(3);
    m.set(0, 2, 5.0);
    CHECK(m(2, 0) == 5.0);
    CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}}), InvalidInputError);
    CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, 2.0}}), InvalidInputError);
    const SymMatrix i3 = SymMatrix::identity(3);
    CHECK(i3.multiply(Vector{1.0, 2.0, 3.0}) == Vector{1.0, 2.0, 3.0});
}

TEST_CASE("vector helpers") {
    CHECK(dot(Vector{1, 2, 3}, Vector{4, 5, 6}) == 32.0);
    CHECK(norm(Vector{3, 4}) == doctest::Approx(5.0));
    CHECK(norm(Vector{3e200, 4e200}) == doctest::Approx(5e200));
    CHECK(norm_inf(Vector{-7, 2}) == 7.0);
    CHECK(axpy(Vector{1, 1}, 2.0, Vector{1, -1}) == Vector{3, -1});
    CHECK_FALSE(all_finite(Vector{1.0, std::nan("")}));
}

TEST_CASE("eigh of a diagonal matrix returns the axes") {
    const auto d = spectral::eigh(SymMatrix::from_rows({{3.0, 0.0}, {0.0, -1.0}}));
    CHECK(d.eigenvalues == Vector{-1.0, 3.0});
    CHECK(d.eigenvectors[0] == Vector{0.0, 1.0});
    CHECK(d.eigenvectors[1] == Vector{1.0, 0.0});
}

TEST_CASE("eigh of the swap matrix") {
    const auto d = spectral::eigh(SymMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(d.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(d.eigenvalues[1] == doctest::Approx(1.0));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(d.eigenvectors[0][0]) == doctest::Approx(s));
    CHECK(d.eigenvectors[0][0] * d.eigenvectors[0][1] == doctest::Approx(-0.5));
    CHECK(d.eigenvectors[1][0] * d.eigenvectors[1][1] == doctest::Approx(0.5));
}

TEST_CASE("the 3x3 appendix Hessian has one positive, one negative and one zero eigenvalue") {
    const SymMatrix a = SymMatrix::from_rows({{-23, -61, 40}, {-61, -39.5, 155}, {40, 155, -50}});
    const auto d = spectral::eigh(a);
    const double tol = 1e-8 * a.norm_inf();
    int pos = 0, neg = 0, zero = 0;
    for (double l : d.eigenvalues) {
        if (std::abs(l) <= tol)
            ++zero;
        else
            (l > 0 ? pos : neg)++;
    }
    CHECK(pos == 1);
    CHECK(neg == 1);
    CHECK(zero == 1);
}

TEST_CASE("eigh matches the closed-form 2x2 solution") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int t = 0; t < 200; ++t) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const auto d = spectral::eigh(SymMatrix::from_rows({{a, b}, {b, c}}));
        const Eig2 e = eig2(a, b, c);
        CHECK(d.eigenvalues[0] == doctest::Approx(e.l1).epsilon(1e-12).scale(10));
        CHECK(d.eigenvalues[1] == doctest::Approx(e.l2).epsilon(1e-12).scale(10));
        CHECK(std::abs(dot(d.eigenvectors[0], Vector{e.v1[0], e.v1[1]})) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("orthonormality and reconstruction on random matrices") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t dim : {1u, 2u, 5u, 12u, 40u}) {
        SymMatrix a(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j) a.set(i, j, n(rng) * (i == j ? 100.0 : 1.0));
        const auto d = spectral::eigh(a);
        for (std::size_t i = 1; i < dim; ++i) CHECK(d.eigenvalues[i - 1] <= d.eigenvalues[i]);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                CHECK(std::abs(dot(d.eigenvectors[i], d.eigenvectors[j]) - (i == j ? 1.0 : 0.0)) <= 1e-10);
        CHECK(mat_diff(spectral::reconstruct(d), a) <= 1e-9 * std::max(1.0, a.norm_inf()));
    }
}

TEST_CASE("eigh rejects non-finite input") {
    SymMatrix a(2);
    a.set(0, 1, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(spectral::eigh(a), InvalidInputError);
}

TEST_CASE("eigh is deterministic") {
    const SymMatrix a = SymMatrix::from_rows({{4, 1, 2}, {1, -3, 0.5}, {2, 0.5, 1}});
    const auto d1 = spectral::eigh(a), d2 = spectral::eigh(a);
    CHECK(d1.eigenvalues == d2.eigenvalues);
    CHECK(d1.eigenvectors == d2.eigenvectors);
}

TEST_CASE("reflect_inverse_apply") {
    SUBCASE("identity returns g") {
        const auto d = spectral::eigh(SymMatrix::identity(4));
        CHECK(spectral::reflect_inverse_apply(d, {1, -2, 3, 0.5}) == Vector{1, -2, 3, 0.5});
    }
    SUBCASE("sign flip on the quadratic saddle") {
        const double x = 0.7, y = -1.3;
        const auto d = spectral::eigh(SymMatrix::from_rows({{1, 0}, {0, -1}}));
        // v = A^{-1} g = (x, y); reflecting the negative direction gives (x, -y).
        CHECK(spectral::inverse_apply(d, {x, -y}) == Vector{x, y});
        CHECK(spectral::reflect_inverse_apply(d, {x, -y}) == Vector{x, -y});
    }
    SUBCASE("diag(2, -3) against a brute-force projection") {
        const auto d = spectral::eigh(SymMatrix::from_rows({{2, 0}, {0, -3}}));
        const Eig2 e = eig2(2, 0, -3);
        // v = A^{-1} g, then keep the positive-eigenvalue part and negate the rest.
        const Vector g{4, 6};
        const double c1 = (e.v1[0] * g[0] + e.v1[1] * g[1]) / e.l1;
        const double c2 = (e.v2[0] * g[0] + e.v2[1] * g[1]) / e.l2;
        const Vector v{c1 * e.v1[0] + c2 * e.v2[0], c1 * e.v1[1] + c2 * e.v2[1]};
        CHECK(v[0] == doctest::Approx(2.0));
        CHECK(v[1] == doctest::Approx(-2.0));
        const Vector w{-c1 * e.v1[0] + c2 * e.v2[0], -c1 * e.v1[1] + c2 * e.v2[1]};
        const Vector got = spectral::reflect_inverse_apply(d, g);
        CHECK(got[0] == doctest::Approx(w[0]));
        CHECK(got[1] == doctest::Approx(w[1]));
        CHECK(got[0] == doctest::Approx(2.0));
        CHECK(got[1] == doctest::Approx(2.0));
    }
    SUBCASE("zero eigenvalue throws") {
        const auto d = spectral::eigh(SymMatrix::from_rows({{0, 0}, {0, 1}}));
        CHECK_THROWS_AS(spectral::reflect_inverse_apply(d, {1, 1}), SingularMatrixError);
        CHECK_THROWS_AS(spectral::inverse_apply(d, {1, 1}), SingularMatrixError);
    }
}

TEST_CASE("min and max absolute eigenvalue") {
    spectral::SpectralDecomposition d;
    d.eigenvalues = {-1, 3};
    CHECK(spectral::min_abs_eigenvalue(d) == 1.0);
    CHECK(spectral::max_abs_eigenvalue(d) == 3.0);
    d.eigenvalues = {0, 2};
    CHECK(spectral::min_abs_eigenvalue(d) == 0.0);
    d.eigenvalues = {-7, -0.25, 4};
    CHECK(spectral::min_abs_eigenvalue(d) == 0.25);
    CHECK(spectral::max_abs_eigenvalue(d) == 7.0);
}
