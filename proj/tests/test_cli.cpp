#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "geodesica/io.hpp"
#include "oracles.hpp"

using namespace geodesica;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(GEODESICA_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    Run r;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

fs::path scratch() {
    const auto d = fs::temp_directory_path() / "geodesica_cli_test";
    fs::create_directories(d);
    return d;
}

oracle::Curve pts(const Polyline& l) { return {l.points.begin(), l.points.end()}; }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("solve writes csv files") {
    const auto out = (scratch() / "arc.csv").string();
    const Run r = cli("solve --metric power:-1 --from -0.6,0.8 --to 0.6,0.8 --engine ode --out " + out);
    REQUIRE(r.status == 0);
    const Polyline l = parse_csv(read_text(out));
    REQUIRE(l.size() > 100);
    for (const auto& p : l.points) CHECK(std::abs(p.squaredNorm() - 1) < 1e-3);
}

TEST_CASE("solve on stdout") {
    const Run chord = cli("solve --metric power:0 --from 0,0 --to 3,4");
    REQUIRE(chord.status == 0);
    CHECK(parse_csv(chord.out).size() >= 2);
    const Run hyp = cli("solve --metric designed:\"sqrt(1+y^4)\" --from 1,1 --to 2,0.5 --format json");
    REQUIRE(hyp.status == 0);
    const Polyline l = parse_json(hyp.out);
    CHECK(oracle::max_dist(pts(l), oracle::graph([](double x) { return 1 / x; }, 1, 2)) < 1e-3);
    const auto j = nlohmann::json::parse(hyp.out);
    CHECK(j["engine"] == "ode");
    CHECK(j["termination"] == "budget");
}

TEST_CASE("trace examples") {
    // S = 0.0447 / sqrt(0.001): a cycloid of radius 1 / (2 S^2) through the start
    const Run b = cli("trace --metric power:-0.5 --start 0,0.001 --sin 0.0447 --layers 20000");
    REQUIRE(b.status == 0);
    const double S = 0.0447 / std::sqrt(0.001), r = 1 / (2 * S * S);
    const double t0 = std::acos(1 - 0.001 / r), x0 = -r * (t0 - std::sin(t0));
    const auto arch = oracle::sample(
        [&](double t) { return oracle::P(x0 + r * (t - std::sin(t)), r * (1 - std::cos(t))); }, t0, 2 * M_PI - t0);
    const Polyline bl = parse_csv(b.out);
    CHECK(bl.back().y() < 0.01);
    CHECK(oracle::max_dist(pts(bl), arch) < 5e-3);

    const Run s = cli("trace --metric power:0 --start 0,1 --sin 0.7071");
    REQUIRE(s.status == 0);
    for (const auto& p : parse_csv(s.out).points) CHECK(std::abs(p.y() - 1 - p.x() * std::sqrt(1 - 0.7071 * 0.7071) / 0.7071) < 1e-9);

    const Run rs = cli("trace --metric recipsin:4 --start 0,0.9 --sin 0.3 --dir down");
    REQUIRE(rs.status == 0);
    CHECK(x_reversals(parse_csv(rs.out)) == 1);
    const Run ode = cli("trace --metric recipsin:4 --start 0,0.9 --sin 0.3 --dir down --engine ode");
    REQUIRE(ode.status == 0);
    CHECK(x_reversals(parse_csv(ode.out)) == 1);
}

TEST_CASE("verify") {
    const Run v = cli("verify");
    CHECK(v.status == 0);
    CHECK(v.out.find("0.500000") != std::string::npos);
    CHECK(v.out.find("1.000000") != std::string::npos);
    CHECK(v.out.find("0.250000") != std::string::npos);
    CHECK(v.out.find("FAIL") == std::string::npos);
}

TEST_CASE("figures") {
    const auto dir = scratch() / "figs";
    fs::remove_all(dir);
    const Run f = cli("figures all --svg --out " + dir.string());
    REQUIRE(f.status == 0);
    int csv = 0;
    for (const auto& e : fs::directory_iterator(dir)) csv += e.path().extension() == ".csv";
    CHECK(csv == 9);
    CHECK(fs::exists(dir / "fig4.svg"));
    CHECK(fs::exists(dir / "fig5.svg"));
    CHECK(x_reversals(parse_csv(read_text((dir / "fig5_a_4.csv").string()))) == 1);
    CHECK(x_reversals(parse_csv(read_text((dir / "fig5_a_3.csv").string()))) == 0);
    // fig4 is written as 1 - y; the alpha = -1 circle is centred at (sqrt(1 - eps^2), 1 - 0)
    const Polyline circle = parse_csv(read_text((dir / "fig4_alpha_-1.csv").string()));
    const Eigen::Vector2d c(std::sqrt(1 - 1e-6), 1.0);
    for (const auto& p : circle.points) CHECK(std::abs((p - c).squaredNorm() - 1) < 2e-3);
}

TEST_CASE("design feeds a sampled metric") {
    const auto table = (scratch() / "exp_metric.csv").string();
    REQUIRE(cli("design --slope y --C 1 --range 0.5,3.2 --samples 2001 --out " + table).status == 0);
    const Run s = cli("solve --metric sampled:" + table + " --from 0,1 --to 1,2.718281828459045");
    REQUIRE(s.status == 0);
    CHECK(oracle::max_dist(pts(parse_csv(s.out)), oracle::graph([](double x) { return std::exp(x); }, 0, 1)) < 1e-3);
}

TEST_CASE("exit codes") {
    CHECK(cli("").status == 1);
    CHECK(cli("solve --metric power:1 --from 0,1").status == 1);
    CHECK(cli("solve --metric bogus:1 --from 0,1 --to 1,1").status == 1);
    CHECK(cli("solve --metric power:1 --from 0,1 --to nope").status == 1);
    CHECK(cli("solve --metric power:1 --from 0,1 --to 1,1 --format xml").status == 1);
    const Run fail = cli("solve --metric power:1 --from 0,1 --to 50,1");
    CHECK(fail.status == 2);
    const auto j = nlohmann::json::parse(fail.out);
    CHECK(j["error"] == "NoBracket");
    CHECK(cli("--help").status == 0);
}

}
