#include "geodesica/figures.hpp"

#include "geodesica/io.hpp"
#include "geodesica/ode_geodesic.hpp"
#include "geodesica/ray_fermat.hpp"

namespace geodesica {

namespace {

Polyline run(const Metric& m, const Point2& start, double C, int dir, const Interval& range, const FigureOptions& o) {
    if (o.engine == Engine::Ode) {
        GeodesicProblem p{.metric = m, .C = C, .start = start, .vertical_sign = dir, .step = o.ds, .max_arclength = 10.0, .x_stop = std::nullopt};
        return integrate(p);
    }
    RayOptions ro;
    ro.max_segments = 50 * o.n_layers;
    return trace_in_metric(m, range, o.n_layers, start, C, dir, ro).path;
}

} // namespace

std::vector<FigureCurve> figure4(const FigureOptions& o) {
    std::vector<FigureCurve> out;
    for (double alpha : {-0.25, -0.5, -1.0, -2.0, -4.0}) {
        const Metric m = Metric::power_law(alpha);
        FigureCurve c;
        c.name = "fig4_alpha_" + format_number(alpha);
        c.label = "alpha = " + format_number(alpha);
        c.parameter = alpha;
        c.line = run(m, Point2(0.0, o.epsilon), kFigure4Invariant, 1, Interval{0.0, 1.25}, o);
        c.highlight = alpha == -1.0;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<FigureCurve> figure5(const FigureOptions& o) {
    std::vector<FigureCurve> out;
    for (int a = 1; a <= 4; ++a) {
        const Metric m = Metric::reciprocal_sine(a);
        FigureCurve c;
        c.name = "fig5_a_" + std::to_string(a);
        c.label = "a = " + std::to_string(a);
        c.parameter = a;
        c.line = run(m, Point2(0.0, 1.0 - o.epsilon), kFigure5Invariant, -1, Interval{0.0, 1.0}, o);
        c.highlight = a == 4;
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace geodesica
