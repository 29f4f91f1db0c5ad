// Reference values computed independently of the library: closed forms,
// composite Simpson quadrature and brute-force distances.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using P = Eigen::Vector2d;
using Curve = std::vector<P>;

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

inline Curve sample(const std::function<P(double)>& c, double t0, double t1, int n = 20000) {
    Curve out;
    out.reserve(n + 1);
    for (int i = 0; i <= n; ++i) out.push_back(c(t0 + (t1 - t0) * i / n));
    return out;
}

inline double seg_dist(const P& p, const P& a, const P& b) {
    const P d = b - a;
    const double l2 = d.squaredNorm();
    const double t = l2 > 0 ? std::clamp((p - a).dot(d) / l2, 0.0, 1.0) : 0.0;
    return (p - (a + t * d)).norm();
}

inline double dist(const P& p, const Curve& c) {
    double best = INFINITY;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) best = std::min(best, seg_dist(p, c[i], c[i + 1]));
    return best;
}

// one-sided: every vertex of `pts` to the reference curve
inline double max_dist(const Curve& pts, const Curve& ref) {
    double m = 0;
    for (const P& p : pts) m = std::max(m, dist(p, ref));
    return m;
}

inline double hausdorff(const Curve& a, const Curve& b) { return std::max(max_dist(a, b), max_dist(b, a)); }

inline Curve cycloid(double r, double t0, double t1, int n = 20000) {
    return sample([r](double t) { return P(r * (t - std::sin(t)), r * (1 - std::cos(t))); }, t0, t1, n);
}

inline Curve graph(const std::function<double(double)>& f, double x0, double x1, int n = 20000) {
    return sample([&](double x) { return P(x, f(x)); }, x0, x1, n);
}

// hyperbolic length of the unit-circle arc between polar angles a < b: integral of 1 / sin
inline double hyperbolic_arc(double a, double b) {
    return simpson([](double t) { return 1.0 / std::sin(t); }, a, b);
}

// integral of cosh^2 over [-1, 1], the catenary energy and catenoid area / 2 pi
inline double catenary_energy() {
    return simpson([](double x) { return std::cosh(x) * std::cosh(x); }, -1.0, 1.0);
}

} // namespace oracle
