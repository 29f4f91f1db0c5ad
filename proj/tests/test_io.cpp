#include <cmath>
#include <filesystem>

#include <doctest.h>

#include "geodesica/io.hpp"
#include "geodesica/ode_geodesic.hpp"

using namespace geodesica;
using doctest::Approx;

namespace {
Polyline sample_line() {
    return integrate({.metric = Metric::power_law(1), .C = 1.1, .start = {-0.3, 1.7}, .vertical_sign = -1,
                      .step = 1e-2, .max_arclength = 3, .x_stop = std::nullopt});
}
} // namespace

TEST_SUITE("io") {

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");
}

TEST_CASE("csv round trip") {
    const Polyline l = sample_line();
    const Polyline q = quantized(l);
    const Polyline back = parse_csv(to_csv(l));
    REQUIRE(back.size() == l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        CHECK(back.points[i] == q.points[i]);
        CHECK((back.points[i] - l.points[i]).norm() < 1e-11 * (1 + l.points[i].norm()));
    }
    CHECK(to_csv(l).rfind("x,y\n", 0) == 0);
}

TEST_CASE("json round trip") {
    const Polyline l = sample_line();
    const Polyline back = parse_json(to_json(l));
    const Polyline q = quantized(l);
    REQUIRE(back.size() == l.size());
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(back.points[i] == q.points[i]);
    CHECK(back.meta.metric == "power:1");
    CHECK(back.meta.engine == "ode");
    CHECK(back.meta.C == Approx(1.1));
    CHECK(back.meta.termination == l.meta.termination);
}

TEST_CASE("flip axis") {
    const Polyline l = sample_line();
    const Polyline f = parse_csv(to_csv(l, true));
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(f.points[i].y() == Approx(1 - l.points[i].y()).epsilon(1e-11));
    CHECK(to_json(l, true).find("\"flip_axis\":true") != std::string::npos);
}

TEST_CASE("svg") {
    const Polyline a = sample_line();
    const std::string s = to_svg({{"first", &a, false}, {"second", &a, true}}, false, "demo");
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("first") != std::string::npos);
    std::size_t n = 0;
    for (auto p = s.find("<polyline"); p != std::string::npos; p = s.find("<polyline", p + 1)) ++n;
    CHECK(n == 2);
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_csv("x,y\n1,2\n3\n"), Error);
    CHECK_THROWS_AS(parse_csv("x,y\n1,abc\n"), Error);
    CHECK_THROWS_AS(parse_json("{\"points\": [[1]]}"), Error);
    CHECK_THROWS_AS(parse_json("not json"), Error);
    CHECK_THROWS_AS(read_text("/nonexistent/file.csv"), Error);
    CHECK_THROWS_AS(write_text("/nonexistent/dir/file.csv", "x"), Error);
}

TEST_CASE("file round trip") {
    const auto path = (std::filesystem::temp_directory_path() / "geodesica_io_test.csv").string();
    const Polyline l = sample_line();
    write_text(path, to_csv(l));
    CHECK(parse_csv(read_text(path)).size() == l.size());
    std::filesystem::remove(path);
}

}
