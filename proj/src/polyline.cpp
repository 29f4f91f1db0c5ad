#include "geodesica/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace geodesica {

double arclength(const Polyline& p) {
    double total = 0.0;
    for (std::size_t i = 1; i < p.points.size(); ++i) total += (p.points[i] - p.points[i - 1]).norm();
    return total;
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

namespace {

// Segments sorted by their minimum x so a query only visits segments whose
// x-extent can lie within the current best distance.
class SegmentIndex {
  public:
    explicit SegmentIndex(const Polyline& line) : pts_(line.points) {
        const std::size_t n = pts_.size() < 2 ? 0 : pts_.size() - 1;
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        xmin_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            xmin_[i] = std::min(pts_[i].x(), pts_[i + 1].x());
            max_extent_ = std::max(max_extent_, std::abs(pts_[i + 1].x() - pts_[i].x()));
        }
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return xmin_[a] < xmin_[b]; });
        sorted_xmin_.resize(n);
        for (std::size_t i = 0; i < n; ++i) sorted_xmin_[i] = xmin_[order_[i]];
    }

    double distance(const Point2& p, std::size_t& hint) const {
        if (pts_.size() == 1) return (p - pts_[0]).norm();
        if (order_.empty()) return kInf;
        hint = std::min(hint, order_.size() - 1);
        double best = point_segment_distance(p, pts_[hint], pts_[hint + 1]);
        const double lo_x = p.x() - best - max_extent_;
        auto it = std::lower_bound(sorted_xmin_.begin(), sorted_xmin_.end(), lo_x);
        for (auto k = static_cast<std::size_t>(it - sorted_xmin_.begin()); k < order_.size(); ++k) {
            if (sorted_xmin_[k] > p.x() + best) break;
            const std::size_t seg = order_[k];
            const double d = point_segment_distance(p, pts_[seg], pts_[seg + 1]);
            if (d < best) {
                best = d;
                hint = seg;
            }
        }
        return best;
    }

  private:
    const std::vector<Point2>& pts_;
    std::vector<std::size_t> order_;
    std::vector<double> xmin_;
    std::vector<double> sorted_xmin_;
    double max_extent_ = 0.0;
};

double directed(const Polyline& from, const Polyline& to) {
    SegmentIndex index(to);
    std::size_t hint = 0;
    double worst = 0.0;
    for (const Point2& p : from.points) worst = std::max(worst, index.distance(p, hint));
    return worst;
}

} // namespace

double distance_to(const Point2& p, const Polyline& line) {
    if (line.empty()) return kInf;
    if (line.size() == 1) return (p - line.front()).norm();
    double best = kInf;
    for (std::size_t i = 1; i < line.size(); ++i) {
        best = std::min(best, point_segment_distance(p, line.points[i - 1], line.points[i]));
    }
    return best;
}

double sup_distance(const Polyline& a, const Polyline& b) {
    if (a.empty() || b.empty()) return kInf;
    return std::max(directed(a, b), directed(b, a));
}

int x_reversals(const Polyline& p) {
    int reversals = 0;
    int last = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double dx = p.points[i].x() - p.points[i - 1].x();
        const int sign = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (last != 0 && sign != last) ++reversals;
        last = sign;
    }
    return reversals;
}

std::optional<double> y_at(const Polyline& p, double x) {
    for (std::size_t i = 1; i < p.size(); ++i) {
        const Point2& a = p.points[i - 1];
        const Point2& b = p.points[i];
        if ((a.x() - x) * (b.x() - x) <= 0.0 && a.x() != b.x()) {
            const double t = (x - a.x()) / (b.x() - a.x());
            return a.y() + t * (b.y() - a.y());
        }
    }
    return std::nullopt;
}

} // namespace geodesica
