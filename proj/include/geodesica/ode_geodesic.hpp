#ifndef GEODESICA_ODE_GEODESIC_HPP
#define GEODESICA_ODE_GEODESIC_HPP

#include <optional>

#include "geodesica/core.hpp"
#include "geodesica/metric.hpp"
#include "geodesica/polyline.hpp"

namespace geodesica {

/// Initial-value problem for the Beltrami first integral g(y) dx/ds = C.
struct GeodesicProblem {
    Metric metric;
    double C = 1.0;
    Point2 start = Point2::Zero();
    int vertical_sign = 1;
    double step = 1e-3;
    double max_arclength = 10.0;
    /// Stop exactly on the vertical line x = x_stop when the trace crosses it.
    std::optional<double> x_stop;
    bool allow_negative_index = true;
};

/// Radicand below which a vertex counts as a turning point.
inline constexpr double kTurningRadicand = 1e-12;

/// Unit tangent (dx/ds, dy/ds) = (C/g, sign * sqrt(1 - (C/g)^2)).
/// Throws NoRealTangent when |C/g| > 1.
Point2 tangent_from_C(const Metric& metric, double C, double y, int vertical_sign);

/// Fixed-step RK4 in arclength. Steps near a turning point are taken on the
/// equivalent smooth angle form and bisected onto the turning point, where the
/// vertical sign flips.
Polyline integrate(const GeodesicProblem& problem);

} // namespace geodesica

#endif // GEODESICA_ODE_GEODESIC_HPP
