#ifndef GEODESICA_METRIC_HPP
#define GEODESICA_METRIC_HPP

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "geodesica/core.hpp"
#include "geodesica/expression.hpp"

namespace geodesica {

enum class MetricKind { PowerLaw, ReciprocalSine, Designed, Sampled };

/// A slope law y' = h(y). The derivative is optional; when absent a central
/// difference is used wherever dh/dy is needed.
struct SlopeLaw {
    std::function<double(double)> value;
    std::function<double(double)> derivative;

    static SlopeLaw from_expression(const Expression& expr);
};

/// Vertical weight g(y) > 0 multiplying Euclidean arclength.
///
/// Immutable after construction; copies share their (read-only) payload.
class Metric {
  public:
    /// g(y) = y^alpha. The domain is y > 0 unless alpha == 0.
    static Metric power_law(double alpha);
    /// g(y) = 1 / sin(a (1 - y)) on (0, 1). The sign is preserved.
    static Metric reciprocal_sine(double a);
    /// g(y) given directly as an expression in y.
    static Metric from_expression(const Expression& weight, Interval domain = {});
    /// g(y) = scale * sqrt(1 + h(y)^2).
    static Metric designed(SlopeLaw slope, double scale = 1.0, Interval domain = {});
    /// Piecewise-linear interpolation of (y, g) samples; y strictly increasing.
    static Metric sampled(std::vector<double> ys, std::vector<double> gs, std::string source = "");

    MetricKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double frequency() const { return a_; }
    double scale() const { return scale_; }
    const Interval& domain() const { return domain_; }
    /// Spec string in the CLI grammar (`power:ALPHA`, `recipsin:A`, ...).
    const std::string& spec() const { return spec_; }

    /// Slope law for designed metrics built from one; empty otherwise.
    const SlopeLaw* slope() const { return payload_ ? &payload_->slope : nullptr; }

  private:
    friend double eval_g_unchecked(const Metric& m, double y);
    friend double log_slope(const Metric& m, double y);

    struct Payload {
        std::function<double(double)> weight;
        std::function<double(double)> weight_derivative;
        SlopeLaw slope;
        std::vector<double> ys;
        std::vector<double> gs;
    };

    MetricKind kind_ = MetricKind::PowerLaw;
    double alpha_ = 0.0;
    double a_ = 0.0;
    double scale_ = 1.0;
    Interval domain_{};
    std::string spec_;
    std::shared_ptr<const Payload> payload_;
};

struct PhysicalConstants {
    double gravity = 1.0;
    double density = 1.0;
    double prefactor = 1.0;
};

struct WeightSample {
    double value;
    bool non_positive;
};

/// g(y); throws OutOfDomain outside the open domain.
double eval_g(const Metric& m, double y);
/// g(y) together with the NonPositiveWeight flag.
WeightSample eval_g_checked(const Metric& m, double y);
/// g(y) without the domain check.
double eval_g_unchecked(const Metric& m, double y);
/// Propagation speed 1 / g(y); signed. Throws ZeroWeight when g(y) == 0.
double velocity(const Metric& m, double y);
/// g'(y) / g(y).
double log_slope(const Metric& m, double y);

/// Metric whose geodesics include every curve with y' = h(y): g = C sqrt(1 + h^2).
Metric design_metric(SlopeLaw h, double C, Interval domain = {});

/// Heights inside `range` where the weight is infinite (zero velocity).
std::vector<double> poles(const Metric& m, Interval range);

/// Parse `power:ALPHA`, `recipsin:A`, `designed:EXPR` (EXPR is g(y)) or `sampled:PATH`.
Metric parse_metric(std::string_view spec);

/// Load a `y,g` CSV profile into a sampled metric.
Metric load_sampled_metric(const std::string& path);

} // namespace geodesica

#endif // GEODESICA_METRIC_HPP
