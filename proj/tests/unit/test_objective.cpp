#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "qnewton/catalog.hpp"
#include "qnewton/error.hpp"
#include "qnewton/objective.hpp"

using namespace qnewton;

namespace {

// Central differences with Richardson extrapolation, independent of the library.
Vector ref_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double step = 1e-4) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = step * std::max(1.0, std::abs(x[i]));
        auto d = [&](double s) {
            Vector p = x, m = x;
            p[i] += s;
            m[i] -= s;
            return (f(p) - f(m)) / (2 * s);
        };
        g[i] = (4 * d(h / 2) - d(h)) / 3;
    }
    return g;
}

double max_rel(const Vector& a, const Vector& b) {
    double d = 0.0, s = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
        s = std::max(s, std::abs(b[i]));
    }
    return d / s;
}

} // namespace

TEST_CASE("fd_gradient") {
    CHECK(fd_gradient([](const Vector& x) { return x[0] * x[0]; }, {3.0}, 1e-5)[0] == doctest::Approx(6.0).epsilon(1e-8));
    const Vector g = fd_gradient([](const Vector& v) { return v[0] * v[0] + v[1] * v[1] + v[0] * v[1]; }, {1.0, 2.0});
    // Symbolic gradient (2x + y, 2y + x) at (1, 2).
    CHECK(std::abs(g[0] - 4.0) <= 1e-6);
    CHECK(std::abs(g[1] - 5.0) <= 1e-6);
    const Vector z = fd_gradient([](const Vector&) { return 3.5; }, {1.0, -2.0, 0.3});
    CHECK(z == Vector{0.0, 0.0, 0.0});
}

TEST_CASE("fd_gradient reports non-finite values as a domain error") {
    CHECK_THROWS_AS(fd_gradient([](const Vector& x) { return std::log(x[0]); }, {0.0}), DomainError);
}

TEST_CASE("fd_hessian") {
    const SymMatrix h12 =
        fd_hessian([](const Vector& v) { return v[0] * v[0] + v[1] * v[1] + 4 * v[0] * v[1]; }, {0.3, -0.7});
    CHECK(std::abs(h12(0, 0) - 2) <= 1e-4);
    CHECK(std::abs(h12(0, 1) - 4) <= 1e-4);
    CHECK(std::abs(h12(1, 1) - 2) <= 1e-4);

    const SymMatrix lin = fd_hessian([](const Vector& v) { return 3 * v[0] - 2 * v[1] + 1; }, {5.0, 1.0});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(lin(i, j)) <= 1e-6);

    // Symbolic second derivatives of (x-1)^2 + 100(y-x^2)^2 at (1, 1).
    auto rosen = [](const Vector& v) { return (v[0] - 1) * (v[0] - 1) + 100 * std::pow(v[1] - v[0] * v[0], 2); };
    const SymMatrix hr = fd_hessian(rosen, {1.0, 1.0});
    CHECK(std::abs(hr(0, 0) - 802) <= 1e-3);
    CHECK(std::abs(hr(0, 1) + 400) <= 1e-3);
    CHECK(std::abs(hr(1, 1) - 200) <= 1e-3);

    const SymMatrix hg = fd_hessian_from_gradient(
        [](const Vector& v) { return Vector{2 * (v[0] - 1) - 400 * v[0] * (v[1] - v[0] * v[0]), 200 * (v[1] - v[0] * v[0])}; },
        {1.0, 1.0});
    CHECK(hg(0, 1) == hg(1, 0));
    CHECK(std::abs(hg(0, 0) - 802) <= 1e-3);
}

TEST_CASE("objective validates dimensions and falls back to differences") {
    const Objective q(2, [](const Vector& v) { return v[0] * v[0] + 3 * v[1] * v[1]; });
    CHECK_FALSE(q.has_analytic_gradient());
    CHECK_THROWS_AS(q.value({1.0}), InvalidInputError);
    const Vector g = q.gradient({1.0, 1.0});
    CHECK(g[0] == doctest::Approx(2.0));
    CHECK(g[1] == doctest::Approx(6.0));
    CHECK(q.hessian({0.0, 0.0})(1, 1) == doctest::Approx(6.0).epsilon(1e-5));

    const Objective quad = make_quadratic(SymMatrix::from_rows({{2, 1}, {1, 3}}));
    CHECK(quad.value({1.0, 1.0}) == doctest::Approx(3.5));
    CHECK(quad.gradient({1.0, 0.0}) == Vector{2.0, 1.0});
}

TEST_CASE("benchmark minima") {
    CHECK(make_benchmark("rosenbrock", 2).value({1.0, 1.0}) == 0.0);
    CHECK(make_benchmark("griewank", 15).value(Vector(15, 0.0)) == doctest::Approx(0.0));
    const double st = make_benchmark("styblinski-tang", 100).value(Vector(100, -2.903534));
    CHECK(st > -3916.617);
    CHECK(st < -3916.616);
    CHECK(make_benchmark("beale").value({3.0, 0.5}) == doctest::Approx(0.0));
    CHECK(make_benchmark("levi13").value({1.0, 1.0}) == doctest::Approx(0.0).scale(1e-12));
    CHECK(make_benchmark("eggholder").value({512.0, 404.2319}) == doctest::Approx(-959.6407).epsilon(1e-6));
    CHECK(make_benchmark("mccormick").value({-0.54719, -1.54719}) == doctest::Approx(-1.9133).epsilon(1e-4));
    CHECK(make_benchmark("schaffer2").value({0.0, 0.0}) == doctest::Approx(0.0));
    // The cosine term carries a fixed factor 0.5, so only D = 2 has value 0 at the origin.
    CHECK(make_benchmark("ackley", 2).value(Vector(2, 0.0)) == doctest::Approx(0.0).scale(1e-12));
    CHECK(make_benchmark("ex16").value(Vector(3, 0.0)) == doctest::Approx(std::numbers::e - std::exp(1.5)));
    CHECK(*known_minimum(find_benchmark("ex16"), 3) == doctest::Approx(make_benchmark("ex16").value(Vector(3, 0.0))));
    CHECK(make_benchmark("rastrigin", 4).value(Vector(4, 0.0)) == doctest::Approx(0.0));
    CHECK(make_benchmark("saddle").value({2.0, 1.0}) == doctest::Approx(1.5));
}

TEST_CASE("benchmark lookup errors") {
    CHECK_THROWS_AS(make_benchmark("no-such-function"), UnknownNameError);
    CHECK_THROWS_AS(make_benchmark("ex07", 3), InvalidInputError);
    CHECK_THROWS_AS(make_benchmark("rosenbrock", 1), InvalidInputError);
    CHECK(find_benchmark("rosenbrock-2").id == "ex07");
}

TEST_CASE("catalog fixtures and listing") {
    CHECK(named_fixture("rosenbrock30").size() == 30);
    CHECK(named_fixture("styblinski100").size() == 100);
    CHECK(named_fixture("ex07") == Vector{0.55134554, 0.75134554});
    CHECK_THROWS_AS(named_fixture("nope"), UnknownNameError);
    for (const auto& info : benchmark_catalog())
        for (const auto& f : info.fixtures) {
            const Vector& x = named_fixture(f);
            CHECK(x.size() >= info.min_dim);
            if (info.max_dim != 0) CHECK(x.size() <= info.max_dim);
        }
    const auto j = nlohmann::json::parse(catalog_json());
    bool found = false;
    for (const auto& e : j)
        if (e.at("id") == "ex19") found = e.at("aliases").at(0) == "beale";
    CHECK(found);
}

TEST_CASE("cosine integral against tabulated values") {
    CHECK(cosine_integral(0.5) == doctest::Approx(-0.177784078806612).epsilon(1e-12));
    CHECK(cosine_integral(1.0) == doctest::Approx(0.337403922900968).epsilon(1e-12));
    CHECK(cosine_integral(5.0) == doctest::Approx(-0.190029749656644).epsilon(1e-12));
    CHECK(cosine_integral(10.0) == doctest::Approx(-0.0454564330044554).epsilon(1e-12));
}

TEST_CASE("analytic catalog derivatives agree with differences") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const char* name : {"ex07", "ex11", "ex19", "ex21", "ex23", "rosenbrock", "griewank", "styblinski-tang"}) {
        const BenchmarkInfo& info = find_benchmark(name);
        const Objective obj = make_benchmark(name);
        const Vector centre = info.fixtures.empty() ? Vector(obj.dim(), 0.5) : named_fixture(info.fixtures[0]);
        if (centre.size() != obj.dim()) continue;
        for (int t = 0; t < 20; ++t) {
            Vector x = centre;
            for (double& v : x) v += 0.5 * u(rng);
            CHECK(max_rel(obj.gradient(x), ref_gradient(obj.value_fn(), x)) <= 1e-5);
        }
    }
}

TEST_CASE("protein energy closed forms") {
    CHECK(protein_energy({0.0}, parse_protein_sequence("AAA")) == doctest::Approx(0.0));
    CHECK(protein_energy({0.0}, parse_protein_sequence("BAB")) == doctest::Approx(2.0));
    // n = 3: Phi = (1 - cos theta)/4 + 4(1 - C(xi_1, xi_3)), C = (1 + a + b + 5ab)/8.
    for (const char* seq : {"AAA", "AAB", "ABA", "ABB", "BAB", "BBB"}) {
        const auto xi = parse_protein_sequence(seq);
        const double c = (1.0 + xi[0] + xi[2] + 5.0 * xi[0] * xi[2]) / 8.0;
        CHECK(protein_energy({std::numbers::pi}, xi) == doctest::Approx(0.5 + 4.0 * (1.0 - c)));
    }
    CHECK(parse_protein_sequence("ABBBA") == std::vector<int>{1, -1, -1, -1, 1});
    CHECK_THROWS_AS(parse_protein_sequence("AB"), InvalidInputError);
    CHECK_THROWS_AS(parse_protein_sequence("ABX"), InvalidInputError);
}

TEST_CASE("protein starting energies match the reported values") {
    const Objective phi = make_protein_objective("ABBBA");
    CHECK(phi.value(named_fixture("abbba-p2")) == doctest::Approx(538.020).epsilon(1e-5));
    CHECK(phi.value(named_fixture("abbba-p3")) == doctest::Approx(6596446021.145492).epsilon(1e-6));
    const Objective phi10 = make_protein_objective("ABBBABABAB");
    CHECK(phi10.value(named_fixture("abbbababab-p1")) == doctest::Approx(4185029.6878152043).epsilon(1e-6));
    CHECK(phi10.value(named_fixture("abbbababab-p4")) == doctest::Approx(579425.218039767).epsilon(1e-6));
}

TEST_CASE("protein derivatives agree with differences") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (const char* seq : {"ABBBA", "ABBBABABAB", "AAAB"}) {
        const Objective phi = make_protein_objective(seq);
        for (int t = 0; t < 20; ++t) {
            Vector x(phi.dim());
            for (double& v : x) v = u(rng);
            try {
                CHECK(max_rel(phi.gradient(x), ref_gradient(phi.value_fn(), x)) <= 1e-5);
                // Whole-matrix scale: individual rows can be O(1) beside O(1e11) entries.
                const SymMatrix h = phi.hessian(x);
                double err = 0.0, scale = 1.0;
                for (std::size_t j = 0; j < x.size(); ++j) {
                    auto gj = [&](const Vector& y) { return phi.gradient(y)[j]; };
                    const Vector row = ref_gradient(gj, x);
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        err = std::max(err, std::abs(h(j, i) - row[i]));
                        scale = std::max(scale, std::abs(row[i]));
                    }
                }
                CHECK(err / scale <= 1e-5);
            } catch (const DomainError&) {
                // Overlapping beads: not a probe.
            }
        }
    }
}

TEST_CASE("stochastic batches") {
    SUBCASE("sigma 0 reduces to the deterministic function") {
        const StochasticObjective s = make_stochastic_griewank(10, 0.0, 1, 42);
        const Objective f0 = sample_batch_objective(s, 3);
        const Vector x(10, 2.5);
        CHECK(f0.value(x) == griewank_value(x));
        CHECK(f0.gradient(x) == griewank_gradient(x));
    }
    SUBCASE("same seed and step give bitwise identical batches") {
        const StochasticObjective s = make_stochastic_griewank(10, std::sqrt(0.1), 50, 7);
        const Vector x(10, 1.7);
        CHECK(sample_batch_objective(s, 4).value(x) == sample_batch_objective(s, 4).value(x));
        CHECK(sample_batch_objective(s, 4).value(x) != sample_batch_objective(s, 5).value(x));
        CHECK(counter_normal(7, 4, 9) == counter_normal(7, 4, 9));
    }
    SUBCASE("origin is a zero of every instance") {
        const StochasticObjective s = make_stochastic_griewank(10, 1.0, 200, 1);
        CHECK(sample_batch_objective(s, 0).value(Vector(10, 0.0)) == 0.0);
    }
    SUBCASE("xi scaling") {
        const Vector x{1.0, 2.0};
        const double xi = 1.3;
        CHECK(griewank_value(x, xi) ==
              doctest::Approx(1 + xi * xi * 5 / 4000 - std::cos(xi * 1) * std::cos(xi * 2 / std::sqrt(2.0))));
    }
    SUBCASE("draws are standard normal") {
        double sum = 0, sq = 0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double z = counter_normal(99, 0, i);
            sum += z;
            sq += z * z;
        }
        CHECK(std::abs(sum / n) < 0.03);
        CHECK(std::abs(sq / n - 1.0) < 0.05);
    }
}
