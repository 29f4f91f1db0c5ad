// geodesica <solve|trace|verify|figures|design>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "geodesica/analytic_curves.hpp"
#include "geodesica/figures.hpp"
#include "geodesica/io.hpp"
#include "geodesica/metric.hpp"
#include "geodesica/ode_geodesic.hpp"
#include "geodesica/ray_fermat.hpp"
#include "geodesica/solver.hpp"

using namespace geodesica;

namespace {

constexpr int kUsage = 1;
constexpr int kFailure = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Point2 parse_point(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError(std::string(flag) + " expects X,Y");
    try {
        std::size_t used = 0;
        const double x = std::stod(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("x");
        const std::string ys = text.substr(comma + 1);
        const double y = std::stod(ys, &used);
        if (used != ys.size()) throw std::invalid_argument("y");
        return Point2(x, y);
    } catch (const std::logic_error&) {
        throw UsageError(std::string(flag) + " expects X,Y, got '" + text + "'");
    }
}

Metric parse_metric_flag(const std::string& spec) {
    try {
        return parse_metric(spec);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

struct Output {
    std::string format = "csv";
    std::string path;
    bool flip_axis = false;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--format", format, "csv | json | svg")->check(CLI::IsMember({"csv", "json", "svg"}));
        cmd->add_option("--out", path, "output file (default: stdout)");
        cmd->add_flag("--flip-axis", flip_axis, "write 1 - y instead of y");
    }

    void emit(const Polyline& line, const std::string& label) const {
        std::string text;
        if (format == "json") text = to_json(line, flip_axis);
        else if (format == "svg") text = to_svg({SvgCurve{label, &line, false}}, flip_axis, label);
        else text = to_csv(line, flip_axis);
        if (path.empty()) std::cout << text;
        else write_text(path, text);
    }
};

int fail(const Error& e, const std::string& metric) {
    nlohmann::ordered_json j;
    j["error"] = std::string(to_string(e.code()));
    j["message"] = e.what();
    if (!metric.empty()) j["metric"] = metric;
    std::cout << j.dump() << "\n";
    return kFailure;
}

Engine parse_engine(const std::string& s) { return s == "ray" ? Engine::Ray : Engine::Ode; }

// verify: the classical table rows plus the parabola
int run_verify() {
    struct Row {
        const char* name;
        double alpha;
        ParametricCurve<double> curve;
        double expected;
    };
    const double pi = std::numbers::pi;
    const double margin = 1e-3;
    const Row rows[] = {
        {"line a=1", 0.0, make_curve<double>(CurveFamily::Line, {1.0, 0.0, 1.0}, -2.0, 2.0), 0.5},
        {"catenary", 1.0, make_curve<double>(CurveFamily::Catenary, {}, -2.0, 2.0), 1.0},
        {"cycloid r=2", -0.5, make_curve<double>(CurveFamily::Cycloid, {0.0, 0.0, 2.0}, margin, 2 * pi - margin), 0.25},
        {"semicircle r=2", -1.0, make_curve<double>(CurveFamily::Semicircle, {0.0, 0.0, 2.0}, margin, pi - margin), 0.25},
        {"parabola", 0.5, make_curve<double>(CurveFamily::Parabola, {}, -2.0, 2.0), 1.0},
    };
    bool ok = true;
    std::printf("%-16s %6s %16s %10s %12s\n", "curve", "alpha", "C^2", "expected", "residual");
    for (const Row& r : rows) {
        const auto check = fit_constant(r.curve, r.alpha, 1000, margin);
        const bool row_ok = check.max_residual < 1e-9;
        ok = ok && row_ok;
        std::printf("%-16s %6g %16.12f %10g %12.3e %s\n", r.name, r.alpha, check.C_squared, r.expected,
                    check.max_residual, row_ok ? "ok" : "FAIL");
    }
    return ok ? 0 : kFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geodesics of vertical metrics g(y) ds: shooting, ray tracing, figure data"};
    app.require_subcommand(1);

    std::string metric_spec;
    std::string from, to, start;
    std::string engine = "ode";
    double ds = 1e-3;
    int layers = 10'000;
    double tol = 1e-9;
    Output out;

    auto* solve = app.add_subcommand("solve", "two-point boundary problem by shooting");
    solve->add_option("--metric", metric_spec, "power:A | recipsin:A | designed:EXPR | sampled:PATH")->required();
    solve->add_option("--from", from, "X,Y")->required();
    solve->add_option("--to", to, "X,Y")->required();
    solve->add_option("--engine", engine)->check(CLI::IsMember({"ode", "ray"}));
    solve->add_option("--ds", ds, "arclength step")->check(CLI::PositiveNumber);
    solve->add_option("--layers", layers, "ray layers")->check(CLI::Range(2, 100'000'000));
    solve->add_option("--tol", tol, "endpoint miss tolerance")->check(CLI::PositiveNumber);
    out.add_flags(solve);

    double sin0 = 0.0;
    std::string dir = "up";
    std::string trace_engine = "ray";
    std::string range_text;
    double max_arclength = 10.0;
    auto* tr = app.add_subcommand("trace", "trace one ray (or geodesic) from a start point");
    tr->add_option("--metric", metric_spec)->required();
    tr->add_option("--start", start, "X,Y")->required();
    tr->add_option("--sin", sin0, "sine of the launch angle to the vertical")->required()->check(CLI::Range(-1.0, 1.0));
    tr->add_option("--dir", dir, "up | down")->check(CLI::IsMember({"up", "down"}));
    tr->add_option("--engine", trace_engine)->check(CLI::IsMember({"ode", "ray"}));
    tr->add_option("--ds", ds)->check(CLI::PositiveNumber);
    tr->add_option("--layers", layers)->check(CLI::Range(2, 100'000'000));
    tr->add_option("--range", range_text, "LO,HI stack extent (default: start y +- 5, clipped to the domain)");
    tr->add_option("--max-arclength", max_arclength)->check(CLI::PositiveNumber);
    out.add_flags(tr);

    app.add_subcommand("verify", "check the classical curves against the first integral");

    std::string which = "all";
    std::string out_dir = ".";
    std::string fig_engine = "ode";
    bool fig_svg = false;
    std::string fig_format = "csv";
    auto* figs = app.add_subcommand("figures", "emit the geodesic-family datasets");
    figs->add_option("which", which, "fig4 | fig5 | all")->check(CLI::IsMember({"fig4", "fig5", "all"}));
    figs->add_option("--out", out_dir, "output directory");
    figs->add_option("--engine", fig_engine)->check(CLI::IsMember({"ode", "ray"}));
    figs->add_option("--ds", ds)->check(CLI::PositiveNumber);
    figs->add_option("--layers", layers)->check(CLI::Range(2, 100'000'000));
    figs->add_option("--format", fig_format)->check(CLI::IsMember({"csv", "json"}));
    figs->add_flag("--svg", fig_svg, "also write one overlay SVG per figure");

    std::string slope;
    double design_C = 1.0;
    std::string design_range = "0.1,2";
    int samples = 201;
    std::string design_out;
    auto* design = app.add_subcommand("design", "tabulate g = C sqrt(1 + h(y)^2) for a slope law y' = h(y)");
    design->add_option("--slope", slope, "h(y) as an expression in y")->required();
    design->add_option("--C", design_C)->check(CLI::PositiveNumber);
    design->add_option("--range", design_range, "LO,HI");
    design->add_option("--samples", samples)->check(CLI::Range(2, 10'000'000));
    design->add_option("--out", design_out, "y,g CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsage;
    }

    try {
        if (*solve) {
            const Metric m = parse_metric_flag(metric_spec);
            BoundaryProblem bp;
            bp.metric = m;
            bp.p1 = parse_point(from, "--from");
            bp.p2 = parse_point(to, "--to");
            bp.engine = parse_engine(engine);
            bp.ds = ds;
            bp.n_layers = layers;
            bp.tolerance = tol;
            try {
                const ShootingResult r = shoot(bp);
                out.emit(r.polyline, m.spec());
                std::cerr << "C = " << format_number(r.C) << ", miss = " << format_number(r.miss)
                          << ", iterations = " << r.iterations << "\n";
            } catch (const Error& e) {
                return fail(e, m.spec());
            }
            return 0;
        }
        if (*tr) {
            const Metric m = parse_metric_flag(metric_spec);
            const Point2 p = parse_point(start, "--start");
            const int vdir = dir == "down" ? -1 : 1;
            try {
                const double S = sin0 / velocity(m, p.y());
                Polyline line;
                if (trace_engine == "ode") {
                    // tangent x-component C / g = sin0; the sign of sin0 sets the x direction
                    GeodesicProblem gp{.metric = m, .C = std::abs(S), .start = p, .vertical_sign = vdir, .step = ds,
                                       .max_arclength = max_arclength, .x_stop = std::nullopt};
                    if (S < 0.0) throw Error(ErrorCode::InvalidParams, "the ode engine traces rightward rays only");
                    line = integrate(gp);
                } else {
                    Interval range{std::max(m.domain().lower, p.y() - 5.0), std::min(m.domain().upper, p.y() + 5.0)};
                    if (!range_text.empty()) {
                        const Point2 r = parse_point(range_text, "--range");
                        range = Interval{r.x(), r.y()};
                    }
                    RayOptions ro;
                    ro.max_segments = 50 * layers;
                    line = trace_in_metric(m, range, layers, p, S, vdir, ro).path;
                }
                out.emit(line, m.spec());
                std::cerr << "S = " << format_number(S) << ", termination = " << to_string(line.meta.termination)
                          << ", x reversals = " << x_reversals(line) << "\n";
            } catch (const Error& e) {
                return fail(e, m.spec());
            }
            return 0;
        }
        if (app.got_subcommand("verify")) return run_verify();
        if (*figs) {
            FigureOptions fo;
            fo.engine = parse_engine(fig_engine);
            fo.ds = ds;
            fo.n_layers = layers;
            std::filesystem::create_directories(out_dir);
            auto emit_figure = [&](const std::string& stem, const std::vector<FigureCurve>& curves, bool flip) {
                std::vector<SvgCurve> svg;
                for (const auto& c : curves) {
                    const std::string path = (std::filesystem::path(out_dir) / (c.name + "." + fig_format)).string();
                    write_text(path, fig_format == "json" ? to_json(c.line, flip) : to_csv(c.line, flip));
                    std::cout << path << "\n";
                    svg.push_back(SvgCurve{c.label, &c.line, c.highlight});
                }
                if (fig_svg) {
                    const std::string path = (std::filesystem::path(out_dir) / (stem + ".svg")).string();
                    write_text(path, to_svg(svg, flip, stem));
                    std::cout << path << "\n";
                }
            };
            if (which != "fig5") emit_figure("fig4", figure4(fo), true);
            if (which != "fig4") emit_figure("fig5", figure5(fo), false);
            return 0;
        }
        if (*design) {
            Expression h;
            try {
                h = Expression::parse(slope);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            const Point2 r = parse_point(design_range, "--range");
            if (!(r.y() > r.x())) throw UsageError("--range needs LO < HI");
            const Metric m = design_metric(SlopeLaw::from_expression(h), design_C);
            std::string text = "y,g\n";
            for (int i = 0; i < samples; ++i) {
                const double y = r.x() + (r.y() - r.x()) * i / (samples - 1);
                text += format_number(y) + "," + format_number(eval_g(m, y)) + "\n";
            }
            if (design_out.empty()) std::cout << text;
            else {
                write_text(design_out, text);
                std::cerr << "metric spec: sampled:" << design_out << "\n";
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        return fail(e, metric_spec);
    }
    return kUsage;
}
