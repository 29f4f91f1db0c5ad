#ifndef GEODESICA_RAY_FERMAT_HPP
#define GEODESICA_RAY_FERMAT_HPP

#include <optional>
#include <vector>

#include "geodesica/core.hpp"
#include "geodesica/metric.hpp"
#include "geodesica/polyline.hpp"

namespace geodesica {

/// Uniform horizontal layers, each with the velocity sampled at its midpoint.
struct LayerStack {
    double y_bottom = 0.0;
    double y_top = 1.0;
    int n_layers = 0;
    std::vector<double> velocities;
    std::vector<int> pole_layers;
    std::string metric;

    double height() const { return (y_top - y_bottom) / n_layers; }
    double boundary(int i) const { return i == n_layers ? y_top : y_bottom + i * height(); }
};

LayerStack build_stack(const Metric& metric, double y_bottom, double y_top, int n_layers);

/// Where a ray of invariant S leaving y_start in direction `dir` first meets
/// |g| = S inside `range`, if it does.
std::optional<double> turning_level(const Metric& metric, double S, double y_start, int dir, const Interval& range);

/// Fraction of the last open layer lying on the open side of the turning
/// level that cancels the leading sqrt(h) layering error at the turn: the root
/// of the Hurwitz zeta function zeta(1/2, phi - 1/2).
inline constexpr double kTurningFraction = 0.802721828598366;

/// Stack from range.lower with the turning level y_turn placed at
/// kTurningFraction of its layer; `open_above` tells which side is reachable.
/// The top may fall short of range.upper by the height adjustment.
LayerStack build_aligned_stack(const Metric& metric, const Interval& range, int n_layers, double y_turn,
                               bool open_above);

/// sin(theta) in a layer of speed v_next for the invariant S. Not clamped.
inline double snell_step(double S, double v_next) { return S * v_next; }

struct RayState {
    Point2 position;
    double sin_theta;
    int vertical_dir;
    double invariant;
    int layer;
};

struct RayTrace {
    Polyline path;
    std::vector<RayState> states; // one per path vertex, describing the outgoing segment
    int reflections = 0;
};

struct RayOptions {
    int max_segments = 1'000'000;
    std::optional<double> x_stop;
    /// Use this Snell invariant instead of sin_theta0 / v(start layer).
    std::optional<double> invariant;
};

/// Straight segments layer by layer; total internal reflection flips the
/// vertical direction. A trace starting on an interface uses the layer it
/// moves into.
RayTrace trace(const LayerStack& stack, const Point2& start, double sin_theta0, int vertical_dir,
               const RayOptions& options = {});

/// Stack over `range` (aligned on the first turning level, if any) traced with
/// the invariant S from `start`.
RayTrace trace_in_metric(const Metric& metric, const Interval& range, int n_layers, const Point2& start, double S,
                         int vertical_dir, RayOptions options = {});

} // namespace geodesica

#endif // GEODESICA_RAY_FERMAT_HPP
