#include "geodesica/ray_fermat.hpp"

#include <algorithm>
#include <cmath>

namespace geodesica {

LayerStack build_stack(const Metric& metric, double y_bottom, double y_top, int n_layers) {
    if (n_layers < 2) throw Error(ErrorCode::InvalidParams, "a stack needs at least two layers");
    if (!(y_top > y_bottom)) throw Error(ErrorCode::InvalidParams, "empty stack extent");
    if (!metric.domain().covers(y_bottom, y_top)) {
        throw Error(ErrorCode::OutOfDomain, "stack extent leaves the metric domain");
    }
    LayerStack st;
    st.y_bottom = y_bottom;
    st.y_top = y_top;
    st.n_layers = n_layers;
    st.metric = metric.spec();
    st.velocities.resize(n_layers);
    const double h = (y_top - y_bottom) / n_layers;
    for (int k = 0; k < n_layers; ++k) {
        const double mid = y_bottom + (k + 0.5) * h;
        double v = 0.0;
        try {
            v = velocity(metric, mid);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ZeroWeight) throw;
            v = kInf;
        }
        if (!std::isfinite(v)) throw Error(ErrorCode::OutOfDomain, "zero weight inside the stack");
        if (v == 0.0) st.pole_layers.push_back(k);
        st.velocities[k] = v;
    }
    return st;
}

std::optional<double> turning_level(const Metric& metric, double S, double y_start, int dir,
                                    const Interval& range) {
    auto open = [&](double y) { return !(std::abs(eval_g_unchecked(metric, y)) < S); };
    if (!open(y_start)) return std::nullopt;
    const double end = dir > 0 ? range.upper : range.lower;
    const int n = 4096;
    const double dy = (end - y_start) / n;
    double a = y_start;
    for (int i = 1; i <= n; ++i) {
        double b = i == n ? end : y_start + i * dy;
        if (!open(b)) {
            for (int k = 0; k < 200; ++k) {
                const double mid = 0.5 * (a + b);
                if (mid == a || mid == b) break;
                (open(mid) ? a : b) = mid;
            }
            return 0.5 * (a + b);
        }
        a = b;
    }
    return std::nullopt;
}

LayerStack build_aligned_stack(const Metric& metric, const Interval& range, int n_layers, double y_turn,
                               bool open_above) {
    if (n_layers < 2) throw Error(ErrorCode::InvalidParams, "a stack needs at least two layers");
    // bottom stays on range.lower; the height is shrunk until y_turn sits at
    // the right place in its layer
    const double f = open_above ? 1.0 - kTurningFraction : kTurningFraction;
    const double rise = y_turn - range.lower;
    if (rise < 0.0 || y_turn >= range.upper) {
        throw Error(ErrorCode::InvalidParams, "turning level outside the stack range");
    }
    const double nominal = range.width() / n_layers;
    if (rise < f * nominal && metric.domain().covers(y_turn - f * nominal, y_turn)) {
        // turn too close to the floor: let the bottom layer reach below it
        const double bottom = y_turn - f * nominal;
        return build_stack(metric, bottom, bottom + n_layers * nominal, n_layers);
    }
    if (rise == 0.0) throw Error(ErrorCode::InvalidParams, "turning level on the stack floor");
    const double k = std::max(0.0, std::ceil(rise / nominal - f));
    const double h = rise / (k + f);
    const double bottom = range.lower;
    return build_stack(metric, bottom, bottom + n_layers * h, n_layers);
}

RayTrace trace(const LayerStack& stack, const Point2& start, double sin_theta0, int vertical_dir,
               const RayOptions& options) {
    if (!(start.y() >= stack.y_bottom && start.y() <= stack.y_top)) {
        throw Error(ErrorCode::StartOutsideStack, "start point outside the layer stack");
    }
    if (std::abs(sin_theta0) > 1.0) throw Error(ErrorCode::InvalidParams, "|sin theta0| > 1");
    if (vertical_dir != 1 && vertical_dir != -1) {
        throw Error(ErrorCode::InvalidParams, "vertical direction must be +1 or -1");
    }

    const int n = stack.n_layers;
    const double h = stack.height();
    int dir = vertical_dir;

    // layer the ray moves into from the start point
    double rel = (start.y() - stack.y_bottom) / h;
    if (std::abs(rel - std::round(rel)) < 1e-9) rel = std::round(rel); // on an interface
    int k = dir > 0 ? static_cast<int>(std::floor(rel)) : static_cast<int>(std::ceil(rel)) - 1;
    if (k < 0 || k >= n) {
        // on the outer boundary, heading out
        k = std::clamp(k, 0, n - 1);
        if (start.y() == (dir > 0 ? stack.y_top : stack.y_bottom)) {
            RayTrace out;
            out.path.points.push_back(start);
            out.path.meta.metric = stack.metric;
            out.path.meta.engine = "ray";
            out.path.meta.termination = Termination::DomainExit;
            return out;
        }
    }

    const double v0 = stack.velocities[k];
    if (v0 == 0.0 && !options.invariant) throw Error(ErrorCode::ZeroWeight, "start layer is a pole");
    const double S = options.invariant ? *options.invariant : sin_theta0 / v0;

    RayTrace out;
    Polyline& path = out.path;
    path.meta.metric = stack.metric;
    path.meta.engine = "ray";
    path.meta.C = S;

    double sn = snell_step(S, v0);
    if (std::abs(sn) > 1.0) throw Error(ErrorCode::NoRealTangent, "|S v| > 1 in the start layer");

    Point2 p = start;
    auto record = [&](const Point2& q) {
        const double c = std::sqrt(std::max(0.0, 1.0 - sn * sn));
        path.points.push_back(q);
        path.tangents.push_back(Point2(sn, dir * c));
        out.states.push_back(RayState{q, sn, dir, stack.velocities[k] != 0.0 ? sn / stack.velocities[k] : S, k});
    };
    record(p);

    for (int seg = 0;; ++seg) {
        if (seg >= options.max_segments) {
            path.meta.termination = Termination::Budget;
            break;
        }
        if (stack.velocities[k] == 0.0) {
            path.meta.termination = Termination::Pole;
            break;
        }
        const double c = std::sqrt(std::max(0.0, 1.0 - sn * sn));
        if (c == 0.0) {
            // grazing: horizontal forever inside this layer
            if (options.x_stop && (*options.x_stop - p.x()) * sn > 0.0) {
                p = Point2(*options.x_stop, p.y());
                record(p);
            }
            path.meta.termination = Termination::Budget;
            break;
        }
        const double y_next = stack.boundary(dir > 0 ? k + 1 : k);
        const double dy = y_next - p.y();
        const double dx = std::abs(dy) * sn / c;
        if (options.x_stop) {
            const double xs = *options.x_stop;
            if ((p.x() < xs && p.x() + dx >= xs) || (p.x() > xs && p.x() + dx <= xs)) {
                const double f = (xs - p.x()) / dx;
                p = Point2(xs, p.y() + f * dy);
                record(p);
                path.meta.termination = Termination::Budget;
                break;
            }
        }
        if (dy != 0.0) {
            p = Point2(p.x() + dx, y_next);
        }
        const int k_next = k + dir;
        if (k_next < 0 || k_next >= n) {
            if (dy != 0.0) record(p);
            path.meta.termination = Termination::DomainExit;
            break;
        }
        const double sn_next = snell_step(S, stack.velocities[k_next]);
        if (std::abs(sn_next) > 1.0) {
            dir = -dir; // total internal reflection, |sin theta| unchanged
            ++out.reflections;
        } else {
            k = k_next;
            sn = sn_next;
        }
        if (dy != 0.0) record(p);
    }
    return out;
}

RayTrace trace_in_metric(const Metric& metric, const Interval& range, int n_layers, const Point2& start, double S,
                         int vertical_dir, RayOptions options) {
    options.invariant = S;
    const double v = velocity(metric, start.y());
    const double sn = std::clamp(S * v, -1.0, 1.0);
    if (std::abs(S * v) >= 1.0 - 1e-12) {
        // launched at a vertex: leave from the interface where the aligned
        // stack reflects, so the trace is half of a symmetric ray
        const bool up = vertical_dir > 0;
        const LayerStack stack = build_aligned_stack(metric, range, n_layers, start.y(), up);
        const int k = static_cast<int>(std::floor((start.y() - stack.y_bottom) / stack.height()));
        const Point2 from(start.x(), stack.boundary(up ? k : k + 1));
        return trace(stack, from, sn, vertical_dir, options);
    }
    const auto turn = turning_level(metric, S, start.y(), vertical_dir, range);
    const LayerStack stack = turn ? build_aligned_stack(metric, range, n_layers, *turn, start.y() > *turn)
                                  : build_stack(metric, range.lower, range.upper, n_layers);
    return trace(stack, start, sn, vertical_dir, options);
}

} // namespace geodesica
