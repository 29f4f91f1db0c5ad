#include <cmath>
#include <numbers>

#include <doctest.h>

#include "geodesica/metric.hpp"
#include "geodesica/ode_geodesic.hpp"
#include "geodesica/ray_fermat.hpp"
#include "oracles.hpp"

using namespace geodesica;
using doctest::Approx;

namespace {
oracle::Curve pts(const Polyline& l) { return {l.points.begin(), l.points.end()}; }
}

TEST_SUITE("ray_fermat") {

TEST_CASE("stack velocities") {
    const auto flat = build_stack(Metric::power_law(0), -3, 7, 10);
    for (double v : flat.velocities) CHECK(v == 1.0);
    const auto brach = build_stack(Metric::power_law(-0.5), 0, 1, 2);
    CHECK(brach.velocities[0] == Approx(0.5));
    CHECK(brach.velocities[1] == Approx(std::sqrt(0.75)));
    const auto rs = build_stack(Metric::reciprocal_sine(4), 0, 0.3, 3);
    CHECK(rs.velocities[0] == Approx(std::sin(3.8)));
    CHECK(rs.height() == Approx(0.1));
}

TEST_CASE("stack errors") {
    CHECK_THROWS_AS(build_stack(Metric::power_law(1), 0, 1, 1), Error);
    CHECK_THROWS_AS(build_stack(Metric::power_law(-1), -1, 1, 10), Error);
    const auto s = build_stack(Metric::power_law(0), 0, 1, 4);
    CHECK_THROWS_AS(trace(s, {0, 2}, 0.5, 1), Error);
}

TEST_CASE("snell_step") {
    CHECK(snell_step(0.5, 2) == Approx(1.0));
    CHECK(snell_step(0, 3.7) == 0.0);
    CHECK(snell_step(0.5, -0.5) == Approx(-0.25));
}

TEST_CASE("uniform stack gives a straight ray") {
    const auto s = build_stack(Metric::power_law(0), 0, 5, 50);
    const double sn = 1 / std::sqrt(2.0);
    const RayTrace t = trace(s, {0, 1}, sn, 1);
    CHECK(t.path.meta.termination == Termination::DomainExit);
    for (const auto& p : t.path.points) CHECK(p.x() == Approx(p.y() - 1).epsilon(1e-12));
    for (const auto& st : t.states) CHECK(st.sin_theta == Approx(sn));
    CHECK(t.path.back().y() == Approx(5.0));
}

TEST_CASE("catenary from the vertex") {
    RayOptions opt;
    opt.x_stop = 1.0;
    const auto t = trace_in_metric(Metric::power_law(1), {1, 3}, 10'000, {0, 1}, 1.0, 1, opt);
    double err = 0;
    for (const auto& p : t.path.points) err = std::max(err, std::abs(p.y() - std::cosh(p.x())));
    CHECK(err < 2e-3);
    CHECK(t.path.back().x() == 1.0);
}

TEST_CASE("semicircle from the apex") {
    const auto t = trace_in_metric(Metric::power_law(-1), {0.01, 1.5}, 10'000, {0, 1}, 1.0, -1);
    const auto circle = oracle::sample([](double a) { return oracle::P(std::cos(a), std::sin(a)); }, 0, 1.6);
    CHECK(oracle::max_dist(pts(t.path), circle) < 2e-3);
    CHECK(t.path.meta.termination == Termination::DomainExit);
}

TEST_CASE("invariant and reflection") {
    const Metric m = Metric::power_law(1);
    const auto s = build_stack(m, 0.5, 2, 3000);
    const double ch = std::cosh(1.0);
    const RayTrace t = trace(s, {-1, ch}, 1 / ch, -1);
    CHECK(t.reflections == 1);
    const double S = t.states.front().invariant;
    bool flipped = false;
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        const auto& st = t.states[i];
        CHECK(std::abs(st.sin_theta / s.velocities[st.layer] - S) < 1e-12 * S);
        CHECK(std::abs(st.sin_theta) <= 1.0);
        if (i > 0 && st.vertical_dir != t.states[i - 1].vertical_dir) {
            flipped = true;
            CHECK(st.sin_theta == t.states[i - 1].sin_theta);
        }
    }
    CHECK(flipped);
}

TEST_CASE("poles stop the trace") {
    // infinite weight at the middle layer's midpoint
    const auto s = build_stack(Metric::from_expression(Expression::parse("1/(y-1)")), 0.5, 1.5, 3);
    REQUIRE(s.pole_layers.size() == 1);
    CHECK(s.pole_layers[0] == 1);
    CHECK(trace(s, {0, 0.6}, 0.1, 1).path.meta.termination == Termination::Pole);
}

TEST_CASE("negative layers reverse x") {
    const Metric m = Metric::reciprocal_sine(4);
    RayOptions opt;
    opt.invariant = 0.9;
    const auto s = build_stack(m, 0.001, 0.999, 10'000);
    const RayTrace t = trace(s, {0, 0.999}, 0.0, -1, opt);
    CHECK(x_reversals(t.path) == 1);
}

TEST_CASE("agreement with the ODE engine") {
    struct Case {
        double alpha, C;
        Point2 start;
        double x_stop;
    };
    const Case cases[] = {{1, 1, {0, 1}, 1}, {-0.5, 0.8, {0, 0.5}, 2}, {-1, 1.2, {0, 0.5}, 0.8}};
    for (const auto& c : cases) {
        const Metric m = Metric::power_law(c.alpha);
        const Polyline ode = integrate({.metric = m, .C = c.C, .start = c.start, .vertical_sign = 1, .step = 1e-3,
                                        .max_arclength = 10, .x_stop = c.x_stop});
        RayOptions opt;
        opt.x_stop = c.x_stop;
        auto dist = [&](int n) {
            const auto t = trace_in_metric(m, {0.3, 2.5}, n, c.start, c.C, 1, opt);
            return oracle::hausdorff(pts(ode), pts(t.path));
        };
        const double d1 = dist(10'000), d2 = dist(20'000);
        CAPTURE(c.alpha);
        CHECK(d1 < 5e-3);
        CHECK(d2 < d1);
    }
}

}
