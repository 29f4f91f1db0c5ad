#include <cmath>
#include <numbers>

#include <doctest.h>

#include "geodesica/figures.hpp"
#include "geodesica/metric.hpp"
#include "geodesica/solver.hpp"
#include "oracles.hpp"

using namespace geodesica;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

Polyline from_points(const oracle::Curve& c) {
    Polyline l;
    l.points.assign(c.begin(), c.end());
    return l;
}

oracle::Curve pts(const Polyline& l) { return {l.points.begin(), l.points.end()}; }

Point2 cycloid_at(double t) { return {t - std::sin(t), 1 - std::cos(t)}; }

BoundaryProblem classical(double alpha) {
    BoundaryProblem bp;
    bp.metric = Metric::power_law(alpha);
    if (alpha == 0) {
        bp.p1 = {0, 1};
        bp.p2 = {1, 2};
    } else if (alpha == 1) {
        bp.p1 = {-1, std::cosh(1.0)};
        bp.p2 = {1, std::cosh(1.0)};
    } else if (alpha == -0.5) {
        bp.p1 = cycloid_at(1e-3);
        bp.p2 = cycloid_at(pi - 1e-3);
    } else if (alpha == -1) {
        bp.p1 = {-0.6, 0.8};
        bp.p2 = {0.6, 0.8};
    } else {
        bp.p1 = {-2, 2};
        bp.p2 = {2, 2};
    }
    return bp;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("straight chord") {
    BoundaryProblem bp;
    bp.metric = Metric::power_law(0);
    bp.p1 = {0, 0};
    bp.p2 = {3, 4};
    const auto r = shoot(bp);
    for (const auto& p : r.polyline.points) CHECK(std::abs(4 * p.x() - 3 * p.y()) / 5 < 1e-9);
    CHECK(r.polyline.back().x() == 3.0);
    CHECK(r.miss <= bp.tolerance);
    CHECK(r.C == Approx(0.6));
}

TEST_CASE("semicircle arc") {
    const auto r = shoot(classical(-1));
    const auto mid = y_at(r.polyline, 0.0);
    REQUIRE(mid);
    CHECK(std::abs(*mid - 1.0) < 1e-3);
    CHECK(r.C == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("reversed endpoints are rejected") {
    BoundaryProblem bp = classical(1);
    std::swap(bp.p1, bp.p2);
    bp.p1.x() = 1;
    bp.p2.x() = -1;
    CHECK_THROWS_AS(shoot(bp), Error);
}

TEST_CASE("unreachable target") {
    BoundaryProblem bp;
    bp.metric = Metric::power_law(1);
    bp.p1 = {0, 1};
    bp.p2 = {50, 1};
    bp.ds = 1e-2;
    try {
        shoot(bp);
        FAIL("expected NoBracket");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoBracket);
    }
}

TEST_CASE("path functional") {
    CHECK(path_functional(Metric::power_law(0), from_points({{0, 0}, {3, 4}})).raw == Approx(5.0));
    const auto arc = oracle::sample([](double t) { return oracle::P(std::cos(t), std::sin(t)); }, pi / 4, 3 * pi / 4);
    CHECK(path_functional(Metric::power_law(-1), from_points(arc)).raw ==
          Approx(oracle::hyperbolic_arc(pi / 4, 3 * pi / 4)).epsilon(1e-6));
    CHECK(oracle::hyperbolic_arc(pi / 4, 3 * pi / 4) == Approx(std::log(std::tan(3 * pi / 8) / std::tan(pi / 8))));
    const auto cat = oracle::graph([](double x) { return std::cosh(x); }, -1, 1);
    CHECK(path_functional(Metric::power_law(1), from_points(cat)).raw ==
          Approx(oracle::catenary_energy()).epsilon(1e-6));
    CHECK_THROWS_AS(path_functional(Metric::power_law(-1), from_points({{0, 1}, {1, -1}})), Error);
}

TEST_CASE("physical scaling") {
    const PhysicalConstants k{.gravity = 9.81, .density = 2.0, .prefactor = 1.0};
    const auto cat = from_points(oracle::graph([](double x) { return std::cosh(x); }, -1, 1, 200));
    const auto e = path_functional(Metric::power_law(1), cat, k);
    CHECK(e.physical == Approx(9.81 * 2.0 * e.raw));
    const auto cyc = from_points(oracle::cycloid(1, 0.1, 3, 200));
    const auto t = path_functional(Metric::power_law(-0.5), cyc, k);
    CHECK(t.physical == Approx(t.raw / std::sqrt(2 * 9.81)));
    const auto l = path_functional(Metric::power_law(0), cyc, PhysicalConstants{.prefactor = 3.0});
    CHECK(l.physical == Approx(3.0 * l.raw));
}

TEST_CASE("scale covariance") {
    const auto base = oracle::sample([](double t) { return oracle::P(t, 1.5 + 0.5 * std::sin(3 * t)); }, 0, 2, 500);
    for (double alpha : {0.0, 1.0, -0.5, -1.0, 0.5}) {
        const Metric m = Metric::power_law(alpha);
        const double j = path_functional(m, from_points(base)).raw;
        for (double lambda : {2.0, 0.5}) {
            oracle::Curve scaled = base;
            for (auto& p : scaled) p *= lambda;
            CHECK(path_functional(m, from_points(scaled)).raw == Approx(std::pow(lambda, 1 + alpha) * j).epsilon(1e-12));
        }
    }
}

TEST_CASE("catenoid area") {
    const auto cat = from_points(oracle::graph([](double x) { return std::cosh(x); }, -1, 1));
    CHECK(catenoid_area(cat) == Approx(2 * pi * oracle::catenary_energy()).epsilon(1e-6));
    CHECK(catenoid_area(from_points({{0, 1}, {2, 1}})) == Approx(4 * pi));
    CHECK(catenoid_area(from_points({{0, 1}, {0, 2}})) == Approx(3 * pi));
    CHECK_THROWS_AS(catenoid_area(from_points({{0, 1}, {1, 0}})), Error);
}

TEST_CASE("minimality") {
    BoundaryProblem chord;
    chord.metric = Metric::power_law(0);
    chord.p1 = {0, 0};
    chord.p2 = {3, 4};
    const auto line = minimality_check(chord.metric, shoot(chord), 20, 0.05);
    CHECK(line.all_increased);
    CHECK(line.baseline == Approx(5.0));
    const auto cat = minimality_check(Metric::power_law(1), shoot(classical(1)), 20, 0.02);
    CHECK(cat.all_increased);
    CHECK(cat.baseline == Approx(oracle::catenary_energy()).epsilon(1e-5));
    const auto cyc = minimality_check(Metric::power_law(-0.5), shoot(classical(-0.5)), 20, 0.02, 7);
    CHECK(cyc.all_increased);
    CHECK(cyc.margins.size() == 20);
}

TEST_CASE("refinement") {
    BoundaryProblem bp = classical(-1);
    bp.ds = 2e-3;
    const auto coarse = shoot(bp);
    bp.ds = 1e-3;
    const auto fine = shoot(bp);
    CHECK(fine.miss <= std::max(coarse.miss, bp.tolerance));
    const double a = path_functional(bp.metric, coarse.polyline).raw;
    const double b = path_functional(bp.metric, fine.polyline).raw;
    CHECK(std::abs(a - b) / b < 1e-3);
    bp.engine = Engine::Ray;
    bp.n_layers = 5000;
    const auto r1 = shoot(bp);
    bp.n_layers = 10'000;
    const auto r2 = shoot(bp);
    CHECK(r2.miss <= std::max(r1.miss, bp.tolerance));
    CHECK(oracle::hausdorff(pts(r2.polyline), pts(fine.polyline)) < oracle::hausdorff(pts(r1.polyline), pts(fine.polyline)));
}

TEST_CASE("engine agreement") {
    // the y^-1/2 singularity at the cycloid start costs the midpoint rule
    // O(sqrt(step)), so both engines run at matched fine resolution
    for (double alpha : {0.0, 1.0, -0.5, -1.0, 0.5}) {
        BoundaryProblem bp = classical(alpha);
        bp.ds = 2.5e-4;
        const auto ode = shoot(bp);
        bp.engine = Engine::Ray;
        bp.n_layers = 40'000;
        if (alpha == 0.5) bp.tolerance = 1e-6;
        const auto ray = shoot(bp);
        const double jo = path_functional(bp.metric, ode.polyline).raw;
        const double jr = path_functional(bp.metric, ray.polyline).raw;
        CAPTURE(alpha);
        CHECK(oracle::hausdorff(pts(ode.polyline), pts(ray.polyline)) < 5e-3);
        CHECK(std::abs(jo - jr) / jo < 1e-3);
    }
}

TEST_CASE("figure datasets") {
    for (Engine e : {Engine::Ode, Engine::Ray}) {
        FigureOptions o;
        o.engine = e;
        const auto f4 = figure4(o);
        REQUIRE(f4.size() == 5);
        int highlighted = 0;
        for (const auto& c : f4) {
            highlighted += c.highlight;
            CHECK(c.line.size() > 10);
        }
        CHECK(highlighted == 1);
        const auto f5 = figure5(o);
        REQUIRE(f5.size() == 4);
        for (const auto& c : f5) CHECK(x_reversals(c.line) == (c.parameter == 4.0 ? 1 : 0));
    }
}

}
