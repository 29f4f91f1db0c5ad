#include "geodesica/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "geodesica/ode_geodesic.hpp"
#include "geodesica/ray_fermat.hpp"

namespace geodesica {

std::string_view to_string(Engine e) { return e == Engine::Ode ? "ode" : "ray"; }

namespace {

constexpr int kScanCount = 64;
constexpr double kScanReach = 16.0; // |asinh(cot theta)| covered by the scan
constexpr int kMaxBisections = 200;

// Launch direction: slope parameter u = asinh(cot theta), so sin theta = sech u
// and the vertical sign is sign(u).
double sin_of(double u) { return 1.0 / std::cosh(u); }
double theta_of(double u) { return std::atan2(sin_of(u), std::tanh(u)); }

struct Trial {
    bool reached = false;
    double miss = 0.0;
    double param = 0.0; // u = asinh(cot theta)
    Polyline line;
};

class Shooter {
  public:
    explicit Shooter(const BoundaryProblem& bp) : bp_(bp) {
        const Interval& dom = bp.metric.domain();
        if (!dom.contains(bp.p1.y()) || !dom.contains(bp.p2.y())) {
            throw Error(ErrorCode::OutOfDomain, "endpoint outside the metric domain");
        }
        if (!(bp.p2.x() > bp.p1.x())) throw Error(ErrorCode::InvalidParams, "endpoints need x1 < x2");
        if (!(bp.tolerance > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be positive");
        g1_ = eval_g(bp.metric, bp.p1.y());
        if (!(g1_ > 0.0)) throw Error(ErrorCode::InvalidParams, "weight at p1 must be positive");
        const double chord = (bp.p2 - bp.p1).norm();
        budget_ = bp.max_arclength > 0.0 ? bp.max_arclength : 10.0 * chord + 1.0;
        if (bp.engine == Engine::Ray) {
            if (bp.n_layers < 2) throw Error(ErrorCode::InvalidParams, "need at least two layers");
            Interval range;
            if (bp.stack_range) {
                range = *bp.stack_range;
            } else {
                const double w = std::max(bp.p2.x() - bp.p1.x(), std::abs(bp.p2.y() - bp.p1.y()));
                range = Interval{std::max(dom.lower, std::min(bp.p1.y(), bp.p2.y()) - w),
                                 std::min(dom.upper, std::max(bp.p1.y(), bp.p2.y()) + w)};
            }
            range_ = range;
        }
    }

    ShootingResult solve();

    void set_range(const Interval& range) { range_ = range; }

  private:
    Trial run_angle(double u) const { return finish(u, trace_with(sin_of(u), u >= 0.0 ? 1 : -1, g1_ * sin_of(u))); }

    std::optional<Polyline> trace_with(double sin_theta, int dir, double C) const {
        try {
            if (bp_.engine == Engine::Ode) {
                GeodesicProblem gp{bp_.metric, C, bp_.p1, dir, bp_.ds, budget_, bp_.p2.x()};
                return integrate(gp);
            }
            // a stack per invariant, aligned on the turning level the ray meets
            const double y1 = bp_.p1.y();
            const auto turn = turning_level(bp_.metric, C, y1, dir, range_);
            const LayerStack stack =
                turn ? build_aligned_stack(bp_.metric, range_, bp_.n_layers, *turn, y1 > *turn)
                     : build_stack(bp_.metric, range_.lower, range_.upper, bp_.n_layers);
            RayOptions opt;
            opt.x_stop = bp_.p2.x();
            opt.invariant = C;
            opt.max_segments = 50 * bp_.n_layers + 1000;
            return trace(stack, bp_.p1, sin_theta, dir, opt).path;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoRealTangent || e.code() == ErrorCode::StartOutsideStack) return std::nullopt;
            throw;
        }
    }

    Trial finish(double param, std::optional<Polyline> line) const {
        Trial t;
        t.param = param;
        if (!line || line->empty()) return t;
        t.reached = line->meta.termination == Termination::Budget && line->back().x() == bp_.p2.x();
        t.miss = t.reached ? line->back().y() - bp_.p2.y() : 0.0;
        t.line = std::move(*line);
        return t;
    }

    double functional(const Polyline& line) const { return path_functional(bp_.metric, line).raw; }

    template <typename Run>
    std::optional<Trial> bisect(Trial a, Trial b, Run run, int& iterations, bool& collapsed) const;

    std::optional<Trial> graze(const Trial& a, Trial m, const Trial& b,
                               std::vector<std::pair<Trial, Trial>>& brackets) const;

    const BoundaryProblem& bp_;
    double g1_ = 1.0;
    double budget_ = 1.0;
    Interval range_;
};

template <typename Run>
std::optional<Trial> Shooter::bisect(Trial a, Trial b, Run run, int& iterations, bool& collapsed) const {
    collapsed = false;
    for (int i = 0; i < kMaxBisections; ++i) {
        if (std::abs(a.miss) <= bp_.tolerance) return a;
        if (std::abs(b.miss) <= bp_.tolerance) return b;
        const double mid = 0.5 * (a.param + b.param);
        if (mid == a.param || mid == b.param) {
            collapsed = true;
            return std::abs(a.miss) < std::abs(b.miss) ? a : b;
        }
        Trial m = run(mid);
        ++iterations;
        if (!m.reached) return std::nullopt;
        if ((m.miss < 0.0) == (a.miss < 0.0)) a = std::move(m);
        else b = std::move(m);
    }
    return std::nullopt;
}

// A target on the envelope of the launch family is a double root: the miss
// touches zero without changing sign. Minimize |miss| between the neighbours of
// a same-signed local minimum; a sign change found on the way becomes a bracket.
std::optional<Trial> Shooter::graze(const Trial& a, Trial m, const Trial& b,
                                    std::vector<std::pair<Trial, Trial>>& brackets) const {
    const double side = m.miss < 0.0 ? -1.0 : 1.0;
    auto value = [&](const Trial& t) { return t.reached ? side * t.miss : kInf; };
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = a.param, hi = b.param;
    Trial x1 = run_angle(hi - ratio * (hi - lo));
    Trial x2 = run_angle(lo + ratio * (hi - lo));
    for (int i = 0; i < kMaxBisections && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++i) {
        for (Trial* t : {&x1, &x2}) {
            if (t->reached && side * t->miss < 0.0) {
                brackets.emplace_back(m, *t);
                return std::nullopt;
            }
            if (value(*t) < value(m)) m = *t;
        }
        if (std::abs(m.miss) <= bp_.tolerance) return m;
        if (value(x1) < value(x2)) {
            hi = x2.param;
            x2 = std::move(x1);
            x1 = run_angle(hi - ratio * (hi - lo));
        } else {
            lo = x1.param;
            x1 = std::move(x2);
            x2 = run_angle(lo + ratio * (hi - lo));
        }
    }
    if (std::abs(m.miss) <= bp_.tolerance) return m;
    return std::nullopt;
}

ShootingResult Shooter::solve() {
    std::vector<Trial> scan;
    scan.reserve(kScanCount);
    for (int i = 0; i < kScanCount; ++i) {
        scan.push_back(run_angle(-kScanReach + 2.0 * kScanReach * i / (kScanCount - 1)));
    }

    // Brackets between neighbouring samples; a reached/unreached pair is first
    // narrowed onto the edge of the reachable set.
    std::vector<std::pair<Trial, Trial>> brackets;
    for (int i = 0; i + 1 < kScanCount; ++i) {
        const Trial& a = scan[i];
        const Trial& b = scan[i + 1];
        if (a.reached && b.reached) {
            if ((a.miss < 0.0) != (b.miss < 0.0)) brackets.emplace_back(a, b);
            continue;
        }
        if (a.reached == b.reached) continue;
        Trial in = a.reached ? a : b;
        double out = a.reached ? b.param : a.param;
        for (int k = 0; k < 60; ++k) {
            const double mid = 0.5 * (in.param + out);
            if (mid == in.param || mid == out) break;
            Trial m = run_angle(mid);
            if (m.reached) {
                if ((m.miss < 0.0) != ((a.reached ? a : b).miss < 0.0)) {
                    brackets.emplace_back(a.reached ? a : std::move(m), a.reached ? std::move(m) : b);
                    break;
                }
                in = std::move(m);
            } else {
                out = mid;
            }
        }
    }

    struct Candidate {
        Trial trial;
        std::pair<double, double> bracket;
        double value;
        int iterations;
    };
    std::vector<Candidate> candidates;
    for (int i = 1; i + 1 < kScanCount; ++i) {
        const Trial& a = scan[i - 1];
        const Trial& m = scan[i];
        const Trial& b = scan[i + 1];
        if (!a.reached || !m.reached || !b.reached) continue;
        if ((a.miss < 0.0) != (m.miss < 0.0) || (b.miss < 0.0) != (m.miss < 0.0)) continue;
        if (std::abs(m.miss) > std::abs(a.miss) || std::abs(m.miss) > std::abs(b.miss)) continue;
        if (auto t = graze(a, m, b, brackets)) {
            const double value = functional(t->line);
            candidates.push_back(Candidate{std::move(*t), {theta_of(a.param), theta_of(b.param)}, value, 0});
        }
    }
    if (brackets.empty() && candidates.empty()) {
        throw Error(ErrorCode::NoBracket, "no launch angle brackets the target");
    }
    int total_iterations = 0;
    for (auto& [a, b] : brackets) {
        const std::pair<double, double> br{theta_of(a.param), theta_of(b.param)};
        int iterations = 0;
        bool collapsed = false;
        auto run = [&](double u) { return run_angle(u); };
        auto r = bisect(a, b, run, iterations, collapsed);
        total_iterations += iterations;
        if (!r) continue;
        if (collapsed) continue; // a jump in the miss, not a root
        const double value = functional(r->line);
        candidates.push_back(Candidate{std::move(*r), br, value, iterations});
    }
    if (candidates.empty()) {
        throw Error(ErrorCode::NonConvergence, "bisection did not reach the endpoint tolerance");
    }
    auto best = std::min_element(candidates.begin(), candidates.end(),
                                 [](const Candidate& x, const Candidate& y) { return x.value < y.value; });

    ShootingResult out;
    out.polyline = std::move(best->trial.line);
    out.C = out.polyline.meta.C;
    out.theta1 = std::asin(std::clamp(out.C / g1_, -1.0, 1.0));
    if (out.polyline.size() >= 2 && (out.polyline.points[1] - out.polyline.points[0]).y() < 0.0) {
        out.theta1 = std::numbers::pi - out.theta1;
    }
    out.miss = std::abs(best->trial.miss);
    out.iterations = total_iterations;
    out.bracket = best->bracket;
    return out;
}

double problem_factor(const Metric& m, const PhysicalConstants& k) {
    if (m.kind() != MetricKind::PowerLaw) return 1.0;
    if (m.alpha() == 1.0) return k.gravity * k.density;
    if (m.alpha() == -0.5) return 1.0 / std::sqrt(2.0 * k.gravity);
    return 1.0;
}

Polyline bump(const Polyline& base, const Metric& metric, double centre, double width, double amplitude) {
    const std::size_t n = base.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) s[i] = s[i - 1] + (base.points[i] - base.points[i - 1]).norm();
    const double total = s.back();
    Polyline out = base;
    out.tangents.clear();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r = (s[i] / total - centre) / width;
        if (std::abs(r) >= 1.0) continue;
        const double shape = std::exp(1.0 - 1.0 / (1.0 - r * r));
        Point2 t = base.points[i + 1] - base.points[i - 1];
        if (t.norm() == 0.0) continue;
        t.normalize();
        out.points[i] = base.points[i] + amplitude * shape * Point2(-t.y(), t.x());
    }
    for (const Point2& p : out.points) {
        if (!metric.domain().contains(p.y())) return {};
    }
    return out;
}

} // namespace

ShootingResult shoot(const BoundaryProblem& bp) {
    Shooter shooter(bp);
    ShootingResult first = shooter.solve();
    if (bp.engine != Engine::Ray || bp.stack_range) return first;

    // second pass on a stack hugging the first solution
    double lo = kInf, hi = -kInf;
    for (const Point2& p : first.polyline.points) {
        lo = std::min(lo, p.y());
        hi = std::max(hi, p.y());
    }
    const double margin = 0.05 * (hi - lo) + 1e-3;
    const Interval& dom = bp.metric.domain();
    shooter.set_range(Interval{std::max(dom.lower, lo - margin), std::min(dom.upper, hi + margin)});
    try {
        ShootingResult second = shooter.solve();
        second.iterations += first.iterations;
        return second;
    } catch (const Error&) {
        return first;
    }
}

FunctionalValue path_functional(const Metric& metric, const Polyline& line, const PhysicalConstants& constants) {
    if (line.size() < 2) throw Error(ErrorCode::InvalidParams, "functional needs at least two points");
    double raw = 0.0;
    for (std::size_t i = 1; i < line.size(); ++i) {
        const Point2& a = line.points[i - 1];
        const Point2& b = line.points[i];
        raw += eval_g(metric, 0.5 * (a.y() + b.y())) * (b - a).norm();
    }
    return FunctionalValue{raw, constants.prefactor * problem_factor(metric, constants) * raw};
}

double catenoid_area(const Polyline& line) {
    if (line.size() < 2) throw Error(ErrorCode::InvalidParams, "area needs at least two points");
    double sum = 0.0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (!(line.points[i].y() > 0.0)) throw Error(ErrorCode::NonPositiveY, "profile touches the axis");
        if (i == 0) continue;
        const Point2& a = line.points[i - 1];
        const Point2& b = line.points[i];
        sum += 0.5 * (a.y() + b.y()) * (b - a).norm();
    }
    return 2.0 * std::numbers::pi * sum;
}

MinimalityReport minimality_check(const Metric& metric, const ShootingResult& result, int n_perturbations,
                                  double amplitude, std::uint64_t seed) {
    MinimalityReport rep;
    const Polyline& base = result.polyline;
    rep.baseline = path_functional(metric, base).raw;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre_dist(0.1, 0.9);
    std::uniform_real_distribution<double> width_dist(0.05, 0.4);
    std::uniform_real_distribution<double> amp_dist(0.3, 1.0);
    std::bernoulli_distribution sign_dist(0.5);

    rep.min_margin = kInf;
    for (int k = 0; k < n_perturbations; ++k) {
        const double c = centre_dist(rng);
        const double w = std::min({width_dist(rng), c, 1.0 - c});
        double a = amplitude * amp_dist(rng) * (sign_dist(rng) ? 1.0 : -1.0);
        Polyline moved;
        for (int shrink = 0; shrink < 30; ++shrink, a *= 0.5) {
            moved = bump(base, metric, c, w, a);
            if (!moved.empty()) break;
        }
        const double margin = moved.empty() ? 0.0 : path_functional(metric, moved).raw - rep.baseline;
        rep.margins.push_back(margin);
        rep.min_margin = std::min(rep.min_margin, margin);
    }
    rep.all_increased = !rep.margins.empty() && rep.min_margin > 0.0;
    return rep;
}

} // namespace geodesica
