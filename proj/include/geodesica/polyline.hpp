#ifndef GEODESICA_POLYLINE_HPP
#define GEODESICA_POLYLINE_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "geodesica/core.hpp"

namespace geodesica {

struct PolylineMeta {
    std::string metric;
    std::string engine;
    double C = std::numeric_limits<double>::quiet_NaN();
    Termination termination = Termination::Budget;
};

/// Ordered plane points approximating a geodesic or ray. `tangents` is either
/// empty or holds one unit direction per vertex.
struct Polyline {
    std::vector<Point2> points;
    std::vector<Point2> tangents;
    PolylineMeta meta;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    const Point2& front() const { return points.front(); }
    const Point2& back() const { return points.back(); }
};

double arclength(const Polyline& p);

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);

/// Distance from `p` to the nearest point of the polyline.
double distance_to(const Point2& p, const Polyline& line);

/// Symmetric Hausdorff distance between two polylines (vertex-to-segment).
double sup_distance(const Polyline& a, const Polyline& b);

/// Number of sign changes of dx along the polyline (zero-length moves ignored).
int x_reversals(const Polyline& p);

/// y where the polyline first crosses the vertical line at x, if it does.
std::optional<double> y_at(const Polyline& p, double x);

} // namespace geodesica

#endif // GEODESICA_POLYLINE_HPP
