#include "geodesica/ode_geodesic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace geodesica {

namespace {

constexpr double kTurningCos = 1e-6; // sqrt(kTurningRadicand)
constexpr int kMaxHalvings = 60;
constexpr double kAngleFormCos = 0.5; // below this |cos theta| the angle form is used

enum class Fault { None, Radicand, Domain, Pole, Negative };

Termination termination_of(Fault f) {
    switch (f) {
    case Fault::Pole: return Termination::Pole;
    case Fault::Negative: return Termination::NegativeIndex;
    default: return Termination::DomainExit;
    }
}

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

class Integrator {
  public:
    explicit Integrator(const GeodesicProblem& pb) : pb_(pb), m_(pb.metric) {}

    Polyline run();

  private:
    struct AngleState {
        Point2 p;
        double theta;
    };

    Fault weight(double y, double& g) const {
        if (!m_.domain().contains(y)) return Fault::Domain;
        g = eval_g_unchecked(m_, y);
        if (!std::isfinite(g) || g == 0.0) return Fault::Pole;
        if (g < 0.0 && !pb_.allow_negative_index) return Fault::Negative;
        return Fault::None;
    }

    Fault first_order_rate(const Point2& p, int sigma, Point2& rate) const {
        double g = 0.0;
        if (Fault f = weight(p.y(), g); f != Fault::None) return f;
        const double q = pb_.C / g;
        const double radicand = 1.0 - q * q;
        if (radicand < 0.0) return Fault::Radicand;
        rate = Point2(q, sigma * std::sqrt(radicand));
        return Fault::None;
    }

    Fault first_order_step(const Point2& p, int sigma, double h, Point2& out) const {
        Point2 k1, k2, k3, k4;
        if (Fault f = first_order_rate(p, sigma, k1); f != Fault::None) return f;
        if (Fault f = first_order_rate(p + 0.5 * h * k1, sigma, k2); f != Fault::None) return f;
        if (Fault f = first_order_rate(p + 0.5 * h * k2, sigma, k3); f != Fault::None) return f;
        if (Fault f = first_order_rate(p + h * k3, sigma, k4); f != Fault::None) return f;
        out = p + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        double g = 0.0;
        if (Fault f = weight(out.y(), g); f != Fault::None) return f;
        const double q = pb_.C / g;
        if (1.0 - q * q < 0.0) return Fault::Radicand;
        return Fault::None;
    }

    // (dx/ds, dy/ds, dtheta/ds) = (sin, cos, -g'/g sin); smooth through turning points.
    Fault angle_rate(const Eigen::Vector3d& s, Eigen::Vector3d& rate) const {
        double g = 0.0;
        if (Fault f = weight(s(1), g); f != Fault::None) return f;
        const double sn = std::sin(s(2));
        rate << sn, std::cos(s(2)), -log_slope(m_, s(1)) * sn;
        return Fault::None;
    }

    Fault angle_step(const AngleState& a, double h, AngleState& out) const {
        const Eigen::Vector3d s(a.p.x(), a.p.y(), a.theta);
        Eigen::Vector3d k1, k2, k3, k4;
        if (Fault f = angle_rate(s, k1); f != Fault::None) return f;
        if (Fault f = angle_rate(s + 0.5 * h * k1, k2); f != Fault::None) return f;
        if (Fault f = angle_rate(s + 0.5 * h * k2, k3); f != Fault::None) return f;
        if (Fault f = angle_rate(s + h * k3, k4); f != Fault::None) return f;
        const Eigen::Vector3d e = s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        double g = 0.0;
        if (Fault f = weight(e(1), g); f != Fault::None) return f;
        out = AngleState{Point2(e(0), e(1)), e(2)};
        return Fault::None;
    }

    Point2 vertex_tangent(double y, int sigma) const {
        const double q = pb_.C / eval_g_unchecked(m_, y);
        const double qc = std::clamp(q, -1.0, 1.0);
        return Point2(qc, sigma * std::sqrt(std::max(0.0, 1.0 - q * q)));
    }

    void push(const Point2& p, int sigma) {
        if (!line_.points.empty() && p == line_.points.back()) return;
        line_.points.push_back(p);
        line_.tangents.push_back(vertex_tangent(p.y(), sigma));
    }

    const GeodesicProblem& pb_;
    const Metric& m_;
    Polyline line_;
};

Polyline Integrator::run() {
    if (!(pb_.step > 0.0)) throw Error(ErrorCode::InvalidParams, "step must be positive");
    if (!(pb_.C >= 0.0)) throw Error(ErrorCode::InvalidParams, "Beltrami constant must be non-negative");
    if (pb_.vertical_sign != 1 && pb_.vertical_sign != -1) {
        throw Error(ErrorCode::InvalidParams, "vertical sign must be +1 or -1");
    }

    const double g_start = eval_g(m_, pb_.start.y());
    const double q_start = pb_.C / g_start;
    if (std::abs(q_start) > 1.0 + kTurningRadicand) {
        throw Error(ErrorCode::NoRealTangent, "|C / g| > 1 at the start point");
    }

    line_.meta.metric = m_.spec();
    line_.meta.engine = "ode";
    line_.meta.C = pb_.C;

    Point2 p = pb_.start;
    int sigma = pb_.vertical_sign;
    double s = 0.0;
    bool at_turning = 1.0 - q_start * q_start <= kTurningRadicand;
    push(p, sigma);

    const double max_vertices = 4.0 * pb_.max_arclength / pb_.step + 1e4;

    for (;;) {
        if (s >= pb_.max_arclength || static_cast<double>(line_.size()) > max_vertices) {
            line_.meta.termination = Termination::Budget;
            break;
        }
        const double h = std::min(pb_.step, pb_.max_arclength - s);

        const double g0 = eval_g_unchecked(m_, p.y());
        const double q0 = pb_.C / g0;
        const double cos0 = std::sqrt(std::max(0.0, 1.0 - q0 * q0));
        const double turn_rate = std::abs(log_slope(m_, p.y()) * q0);
        bool use_angle = at_turning || cos0 < std::max(kAngleFormCos, 4.0 * h * turn_rate + kTurningCos);

        // The step taken from p: a function of its length so that x_stop and
        // domain exits can shorten it.
        enum class Mode { FirstOrder, Angle } mode = Mode::FirstOrder;
        // a turning vertex launches exactly horizontally
        const AngleState a0{p, std::atan2(q0, at_turning ? 0.0 : sigma * cos0)};
        auto advance = [&](double len, Point2& out, double* cos_end) -> Fault {
            if (mode == Mode::FirstOrder) return first_order_step(p, sigma, len, out);
            AngleState e;
            const Fault f = angle_step(a0, len, e);
            if (f == Fault::None) {
                out = e.p;
                if (cos_end) *cos_end = std::cos(e.theta);
            }
            return f;
        };

        Point2 end;
        double h_used = h;
        int next_sigma = sigma;
        bool next_turning = false;
        Fault fault = Fault::None;

        if (!use_angle) {
            fault = advance(h, end, nullptr);
            if (fault == Fault::Radicand) use_angle = true;
        }
        if (use_angle) {
            mode = Mode::Angle;
            double cos_end = 0.0;
            fault = advance(h, end, &cos_end);
            if (fault == Fault::None) {
                const bool established = cos0 > kTurningCos;
                if (established && sign_of(cos_end) != sigma && std::abs(cos_end) > kTurningCos) {
                    // bisect the step length onto the turning point, to full resolution
                    double lo = 0.0, hi = h;
                    double best = kInf;
                    for (int i = 0; i < kMaxHalvings && hi - lo > 1e-15 * h; ++i) {
                        const double mid = 0.5 * (lo + hi);
                        double c = 0.0;
                        Point2 trial;
                        if (advance(mid, trial, &c) != Fault::None) {
                            hi = mid;
                            continue;
                        }
                        if (std::abs(c) < best) {
                            best = std::abs(c);
                            end = trial;
                            h_used = mid;
                        }
                        (sign_of(c) == sigma ? lo : hi) = mid;
                    }
                    const bool found = best <= kTurningCos;
                    if (!found) throw Error(ErrorCode::StepTooLarge, "turning point not located in 60 halvings");
                    next_sigma = -sigma;
                    next_turning = true;
                } else if (std::abs(cos_end) > kTurningCos) {
                    next_sigma = sign_of(cos_end);
                } else {
                    // still (or again) horizontal
                    next_sigma = established ? -sigma : sigma;
                    next_turning = true;
                }
            }
        }

        if (fault != Fault::None) {
            // shorten the step until it stays valid, then stop at the boundary
            double len = h;
            Point2 last = p;
            bool any = false;
            for (int i = 0; i < kMaxHalvings && len > 1e-14 * pb_.step; ++i) {
                len *= 0.5;
                Point2 trial;
                if (advance(len, trial, nullptr) == Fault::None) {
                    last = trial;
                    any = true;
                    break;
                }
            }
            if (any) push(last, sigma);
            line_.meta.termination = termination_of(fault == Fault::Radicand ? Fault::Domain : fault);
            break;
        }

        if (pb_.x_stop) {
            const double xs = *pb_.x_stop;
            const bool crosses = (p.x() < xs && end.x() >= xs) || (p.x() > xs && end.x() <= xs);
            if (crosses) {
                double lo = 0.0, hi = h_used;
                Point2 hit = end;
                const double dir = end.x() > p.x() ? 1.0 : -1.0;
                for (int i = 0; i < 80; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    Point2 trial;
                    if (advance(mid, trial, nullptr) != Fault::None) {
                        hi = mid;
                        continue;
                    }
                    hit = trial;
                    ((trial.x() - xs) * dir < 0.0 ? lo : hi) = mid;
                    if (hi - lo <= 1e-17 * h_used) break;
                }
                hit.x() = xs;
                push(hit, next_sigma);
                line_.meta.termination = Termination::Budget;
                break;
            }
        }

        p = end;
        sigma = next_sigma;
        at_turning = next_turning;
        s += h_used;
        push(p, sigma);
    }
    return line_;
}

} // namespace

Point2 tangent_from_C(const Metric& metric, double C, double y, int vertical_sign) {
    const double g = eval_g(metric, y);
    if (g == 0.0) throw Error(ErrorCode::ZeroWeight, "zero weight");
    const double q = C / g;
    const double radicand = 1.0 - q * q;
    if (radicand < 0.0) throw Error(ErrorCode::NoRealTangent, "|C / g| > 1");
    return Point2(q, (vertical_sign < 0 ? -1.0 : 1.0) * std::sqrt(radicand));
}

Polyline integrate(const GeodesicProblem& problem) {
    Integrator integrator(problem);
    return integrator.run();
}

} // namespace geodesica
