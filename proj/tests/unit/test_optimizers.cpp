#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qnewton/catalog.hpp"
#include "qnewton/error.hpp"
#include "qnewton/optimizers.hpp"

using namespace qnewton;

namespace {

Objective half_square() {
    return make_quadratic(SymMatrix::from_rows({{1.0}}), "half-square");
}

Objective saddle() { return make_quadratic(SymMatrix::diagonal(Vector{1.0, -1.0}), "saddle"); }

} // namespace

TEST_CASE("delta schedule validation") {
    const DeltaSchedule d;
    CHECK(d.deltas() == Vector{0.0, 1.0, -1.0});
    CHECK(d.alpha() == 1.0);
    CHECK(d.min_gap() == 1.0);
    CHECK(d.h(3.0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(DeltaSchedule(Vector{}, 1.0), InvalidInputError);
    CHECK_THROWS_AS(DeltaSchedule(Vector{0.0, 0.0}, 1.0), InvalidInputError);
    CHECK_THROWS_AS(DeltaSchedule(Vector{0.0}, 0.0), InvalidInputError);
    CHECK_THROWS_AS(DeltaSchedule(Vector{0.0}, 1.0, HMode::Custom), InvalidInputError);
    CHECK(DeltaSchedule::symmetric(5).deltas() == Vector{0.0, 1.0, -1.0, 2.0, -2.0});
    CHECK(DeltaSchedule(Vector{0.0}, 1.0, HMode::Capped).h(10.0) == 1.0);
    DeltaSchedule r;
    CHECK_THROWS_AS(r.with_random_interval(1.0, 1.0), InvalidInputError);
}

TEST_CASE("stop criteria validation") {
    StopCriteria s;
    CHECK_NOTHROW(s.validate());
    s.max_iter = 0;
    CHECK_THROWS_AS(s.validate(), InvalidInputError);
    s = {};
    s.grad_tol = -1.0;
    CHECK_THROWS_AS(s.validate(), InvalidInputError);
}

TEST_CASE("select_delta") {
    const DeltaSchedule sched;
    SUBCASE("invertible Hessian keeps delta 0") {
        const DeltaChoice c = select_delta(SymMatrix::from_rows({{2.0}}), 1.0, sched, SelectMode::Plain);
        CHECK(c.delta == 0.0);
        CHECK(c.a(0, 0) == 2.0);
    }
    SUBCASE("singular Hessian moves to delta 1") {
        const DeltaChoice c = select_delta(SymMatrix::from_rows({{0.0}}), 2.0, sched, SelectMode::Plain);
        CHECK(c.delta == 1.0);
        CHECK(c.a(0, 0) == doctest::Approx(4.0));
    }
    SUBCASE("floor mode rejects a small eigenvalue") {
        // A = diag(0, 5) + delta Id; delta = 0 has min|eig| 0 < 1/2.
        const DeltaChoice c =
            select_delta(SymMatrix::diagonal(Vector{0.0, 5.0}), 1.0, sched, SelectMode::Floor);
        CHECK(c.delta == 1.0);
    }
    SUBCASE("exhausted schedule") {
        CHECK_THROWS_AS(select_delta(SymMatrix::from_rows({{-1.0}}), 1.0, DeltaSchedule(Vector{1.0}, 1.0),
                                     SelectMode::Plain),
                        NoValidDeltaError);
    }
    SUBCASE("random mode draws inside its interval") {
        Rng rng(3);
        DeltaSchedule rs;
        rs.with_selection(Selection::RandomPerIteration).with_random_interval(-0.5, 0.5);
        for (int i = 0; i < 50; ++i) {
            const DeltaChoice c = select_delta(SymMatrix::from_rows({{0.0}}), 1.0, rs, SelectMode::Plain, &rng);
            CHECK(c.delta >= -0.5);
            CHECK(c.delta < 0.5);
        }
    }
}

TEST_CASE("singularity threshold is the rank tolerance") {
    const auto d = spectral::eigh(SymMatrix::diagonal(Vector{1e13, 0.25, -122.0}));
    CHECK(singularity_threshold(d) == doctest::Approx(3.0 * std::numeric_limits<double>::epsilon() * 1e13));
    CHECK(select_delta(SymMatrix::diagonal(Vector{1e13, 0.25, -122.0}), 1e11, DeltaSchedule{}, SelectMode::Plain)
              .delta == 0.0);
}

TEST_CASE("nqn step") {
    const DeltaSchedule sched;
    SUBCASE("quadratic minimum in one step") {
        const StepResult s = nqn_step(half_square(), Vector{1.0}, sched);
        CHECK(s.x_next[0] == doctest::Approx(0.0).scale(1e-15));
        CHECK(*s.record.delta_used == 0.0);
    }
    SUBCASE("saddle: the descent direction is reflected") {
        // x - w with w = (a, -b): x_next = (0, 2b).
        const double a = 0.4, b = -0.3;
        const StepResult s = nqn_step(saddle(), Vector{a, b}, sched);
        CHECK(s.x_next[0] == doctest::Approx(0.0).scale(1e-15));
        CHECK(s.x_next[1] == doctest::Approx(2 * b));
        CHECK(s.record.f < saddle().value({a, b}));
    }
    SUBCASE("the record carries the new point's value") {
        const StepResult s = nqn_step(make_benchmark("ex07"), named_fixture("ex07"), sched);
        CHECK(s.record.f == make_benchmark("ex07").value(s.x_next));
        CHECK(s.record.step_norm == doctest::Approx(norm(axpy(s.x_next, -1.0, named_fixture("ex07")))));
    }
}

TEST_CASE("nqn backtracking step") {
    const DeltaSchedule sched;
    const StepResult s = nqn_backtracking_step(half_square(), Vector{1.0}, sched);
    CHECK(s.x_next[0] == doctest::Approx(0.0).scale(1e-15));
    CHECK(s.record.ls_backtracks == 0);

    const Objective sad = saddle();
    Vector x{0.4, -0.3};
    for (int i = 0; i < 10; ++i) {
        const StepResult t = nqn_backtracking_step(sad, x, sched);
        CHECK(t.record.f <= sad.value(x));
        x = t.x_next;
    }
    CHECK(sad.value(x) < -1.0);

    // The line search never accepts an increase on a nonconvex function.
    const Objective r = make_benchmark("ex07");
    Vector y{-1.2, 1.0};
    for (int i = 0; i < 30; ++i) {
        const StepResult t = nqn_backtracking_step(r, y, sched);
        CHECK(t.record.f <= r.value(y));
        y = t.x_next;
    }
}

TEST_CASE("newton step") {
    CHECK(newton_step(half_square(), Vector{3.0}).x_next[0] == doctest::Approx(0.0).scale(1e-15));
    const Objective q = make_benchmark("ex10");
    const StepResult s1 = newton_step(q, Vector{0.0});
    CHECK(s1.x_next[0] == doctest::Approx(1.0));
    CHECK(newton_step(q, s1.x_next).x_next[0] == doctest::Approx(0.0).scale(1e-15));
    const StepResult fixed = newton_step(make_benchmark("ex07"), Vector{1.0, 1.0});
    CHECK(fixed.x_next == Vector{1.0, 1.0});
    CHECK_THROWS_AS(newton_step(make_quadratic(SymMatrix::diagonal(Vector{0.0, 1.0})), Vector{1.0, 1.0}),
                    SingularMatrixError);
}

TEST_CASE("random damping newton") {
    Rng rng(1);
    CHECK(random_damping_newton_step(half_square(), Vector{2.0}, rng, 1.0).x_next[0] ==
          doctest::Approx(0.0).scale(1e-15));
    CHECK(random_damping_newton_step(half_square(), Vector{1.0}, rng, 0.5).x_next[0] == doctest::Approx(0.5));
    // On the saddle every step scales x by (1 - damping): the iterate stays on its ray.
    Rng r2(9);
    Vector x{0.3, 0.6};
    for (int i = 0; i < 5; ++i) x = random_damping_newton_step(saddle(), x, r2).x_next;
    CHECK(x[1] == doctest::Approx(2.0 * x[0]));
    Rng r3(4);
    for (int i = 0; i < 100; ++i) {
        const double v = random_damping_newton_step(half_square(), Vector{1.0}, r3).x_next[0];
        CHECK(v > -1.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("two-way backtracking gradient descent") {
    double lr = 1.0;
    const StepResult s = backtracking_gd_step(half_square(), Vector{1.0}, lr);
    CHECK(s.x_next[0] == doctest::Approx(0.0).scale(1e-15));
    CHECK(lr == 1.0);

    // A linear slope never fails Armijo, so growth is capped at delta0.
    const Objective slope(1, [](const Vector& x) { return -x[0]; }, [](const Vector&) { return Vector{-1.0}; });
    double lr2 = 0.25;
    const StepResult t = backtracking_gd_step(slope, Vector{0.0}, lr2);
    CHECK(lr2 <= 1.0);
    CHECK(t.x_next[0] == doctest::Approx(lr2));

    // A steep quadratic forces reductions.
    double lr3 = 1.0;
    const Objective steep = make_quadratic(SymMatrix::from_rows({{10.0}}));
    const StepResult u = backtracking_gd_step(steep, Vector{1.0}, lr3);
    CHECK(u.record.ls_backtracks > 0);
    CHECK(u.record.f < steep.value({1.0}));
    CHECK(lr3 < 1.0);
}

TEST_CASE("driver") {
    SUBCASE("rosenbrock from the printed start") {
        const Trace t = run(Method::Nqn, make_benchmark("ex07"), named_fixture("ex07"));
        CHECK(t.termination == Termination::Converged);
        CHECK(t.last().x[0] == doctest::Approx(1.0));
        CHECK(t.last().x[1] == doctest::Approx(1.0));
        CHECK(t.last().grad_norm < 1e-10);
        CHECK(t.records[0].index == 0);
        CHECK_FALSE(t.records[0].delta_used.has_value());
    }
    SUBCASE("|x|^(4/3) diverges") {
        const Trace t = run(Method::Nqn, make_benchmark("ex01"), Vector{1.0});
        CHECK(t.termination == Termination::Diverged);
        CHECK(std::isinf(t.last().grad_norm));
    }
    SUBCASE("a stationary start takes no steps") {
        const Trace t = run(Method::Newton, make_benchmark("rosenbrock", 3), Vector(3, 1.0));
        CHECK(t.termination == Termination::Converged);
        CHECK(t.iterations() == 0);
    }
    SUBCASE("max-iter") {
        StopCriteria stop;
        stop.max_iter = 5;
        const Trace t = run(Method::Newton, make_benchmark("ex10"), Vector{0.0}, {}, stop);
        CHECK(t.termination == Termination::MaxIter);
        CHECK(t.iterations() == 5);
    }
    SUBCASE("newton singular Hessian is a numerical error") {
        const Trace t = run(Method::Newton, make_quadratic(SymMatrix::diagonal(Vector{0.0, 1.0})), Vector{1.0, 1.0});
        CHECK(t.termination == Termination::NumericalError);
        CHECK_FALSE(t.detail.empty());
    }
    SUBCASE("every method reaches the rosenbrock minimum") {
        for (const std::string& id : {"nqn", "rnqn", "gnqn", "nqn-bt", "newton", "rand-newton", "back"}) {
            StopCriteria stop;
            stop.max_iter = 20000;
            const Trace t = run(parse_method(id), make_benchmark("ex07"), named_fixture("ex07"), {}, stop, 17);
            INFO(id);
            CHECK(t.method == id);
            CHECK(t.last().f < 1e-8);
        }
    }
    SUBCASE("seeded runs are reproducible") {
        const Trace a = run(Method::RandomNqn, make_benchmark("griewank", 4), Vector(4, 7.0), {}, {}, 5);
        const Trace b = run(Method::RandomNqn, make_benchmark("griewank", 4), Vector(4, 7.0), {}, {}, 5);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].x == b.records[i].x);
    }
    SUBCASE("stochastic run on the noiseless instance matches the deterministic one") {
        const Vector x0(10, 3.0);
        const Trace s = run(Method::Nqn, make_stochastic_griewank(10, 0.0, 1, 0), x0);
        const Trace d = run(Method::Nqn, make_benchmark("griewank", 10), x0);
        REQUIRE(s.records.size() == d.records.size());
        CHECK(s.last().x == d.last().x);
    }
}

TEST_CASE("method identifiers") {
    CHECK(parse_method("nqn-backtracking") == Method::NqnBacktracking);
    CHECK(method_id(Method::BacktrackingGd) == "back");
    CHECK_THROWS_AS(parse_method("bfgs"), UnknownNameError);
    for (const std::string& id : method_ids()) CHECK(method_id(parse_method(id)) == id);
    CHECK(effective_schedule(Method::RandomNqn, {}).selection() == Selection::RandomPerIteration);
    CHECK(effective_schedule(Method::GeneralizedNqn, {}).h_mode() == HMode::Capped);
}

TEST_CASE("trace serialization") {
    const Trace t = run(Method::Nqn, half_square(), Vector{2.0});
    const std::string csv = trace_csv(t);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == kTraceCsvHeader);
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 6);
    }
    CHECK(rows == static_cast<int>(t.records.size()));

    const auto j = nlohmann::json::parse(trace_json(t));
    CHECK(j.at("method") == "nqn");
    CHECK(j.at("termination") == "converged");
    CHECK(j.at("iterations") == t.iterations());
    CHECK(j.at("final_x").size() == 1);
    CHECK(to_string(Termination::NumericalError) == "numerical-error");
}
