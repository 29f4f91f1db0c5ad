#include "geodesica/metric.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace geodesica {

namespace {

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

// Five-point central difference, used only when no analytic derivative is available.
double central_difference(const std::function<double(double)>& f, double y) {
    const double step = 1e-3 * std::max(1.0, std::abs(y));
    return (f(y - 2 * step) - 8 * f(y - step) + 8 * f(y + step) - f(y + 2 * step)) / (12 * step);
}

} // namespace

SlopeLaw SlopeLaw::from_expression(const Expression& expr) {
    return SlopeLaw{[expr](double y) { return expr(y); }, [expr](double y) { return expr.derivative(y); }};
}

Metric Metric::power_law(double alpha) {
    Metric m;
    m.kind_ = MetricKind::PowerLaw;
    m.alpha_ = alpha;
    m.domain_ = alpha == 0.0 ? Interval{} : Interval{0.0, kInf};
    m.spec_ = "power:" + shortest(alpha);
    return m;
}

Metric Metric::reciprocal_sine(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorCode::InvalidParams, "reciprocal-sine frequency must be positive");
    }
    Metric m;
    m.kind_ = MetricKind::ReciprocalSine;
    m.a_ = a;
    m.domain_ = Interval{0.0, 1.0};
    m.spec_ = "recipsin:" + shortest(a);
    return m;
}

Metric Metric::from_expression(const Expression& weight, Interval domain) {
    auto payload = std::make_shared<Payload>();
    payload->weight = [weight](double y) { return weight(y); };
    payload->weight_derivative = [weight](double y) { return weight.derivative(y); };
    Metric m;
    m.kind_ = MetricKind::Designed;
    m.domain_ = domain;
    m.spec_ = "designed:" + weight.text();
    m.payload_ = std::move(payload);
    return m;
}

Metric Metric::designed(SlopeLaw slope, double scale, Interval domain) {
    if (!slope.value) throw Error(ErrorCode::InvalidParams, "designed metric needs a slope law");
    auto payload = std::make_shared<Payload>();
    payload->slope = slope;
    payload->weight = [h = slope.value, scale](double y) {
        const double hy = h(y);
        return scale * std::sqrt(1.0 + hy * hy);
    };
    payload->weight_derivative = [slope, scale](double y) {
        const double hy = slope.value(y);
        const double dh = slope.derivative ? slope.derivative(y) : central_difference(slope.value, y);
        return scale * hy * dh / std::sqrt(1.0 + hy * hy);
    };
    Metric m;
    m.kind_ = MetricKind::Designed;
    m.scale_ = scale;
    m.domain_ = domain;
    m.spec_ = "designed:<slope-law>";
    m.payload_ = std::move(payload);
    return m;
}

Metric Metric::sampled(std::vector<double> ys, std::vector<double> gs, std::string source) {
    if (ys.size() != gs.size() || ys.size() < 2) {
        throw Error(ErrorCode::InvalidParams, "sampled metric needs at least two (y, g) pairs");
    }
    for (std::size_t i = 1; i < ys.size(); ++i) {
        if (!(ys[i] > ys[i - 1])) throw Error(ErrorCode::InvalidParams, "sampled y values must increase strictly");
    }
    auto payload = std::make_shared<Payload>();
    payload->ys = std::move(ys);
    payload->gs = std::move(gs);
    Metric m;
    m.kind_ = MetricKind::Sampled;
    m.domain_ = Interval{payload->ys.front(), payload->ys.back()};
    m.spec_ = "sampled:" + source;
    m.payload_ = std::move(payload);
    return m;
}

double eval_g_unchecked(const Metric& m, double y) {
    switch (m.kind()) {
    case MetricKind::PowerLaw: return m.alpha() == 0.0 ? 1.0 : std::pow(y, m.alpha());
    case MetricKind::ReciprocalSine: return 1.0 / std::sin(m.frequency() * (1.0 - y));
    case MetricKind::Designed: return m.payload_->weight(y);
    case MetricKind::Sampled: {
        const auto& ys = m.payload_->ys;
        const auto& gs = m.payload_->gs;
        auto it = std::upper_bound(ys.begin(), ys.end(), y);
        std::size_t i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - ys.begin(), 1,
                                                                            static_cast<std::ptrdiff_t>(ys.size()) - 1));
        const double t = (y - ys[i - 1]) / (ys[i] - ys[i - 1]);
        return gs[i - 1] + t * (gs[i] - gs[i - 1]);
    }
    }
    return 0.0;
}

double eval_g(const Metric& m, double y) {
    if (!m.domain().contains(y)) {
        throw Error(ErrorCode::OutOfDomain, "y = " + shortest(y) + " outside metric " + m.spec());
    }
    return eval_g_unchecked(m, y);
}

WeightSample eval_g_checked(const Metric& m, double y) {
    const double g = eval_g(m, y);
    return {g, !(g > 0.0)};
}

double velocity(const Metric& m, double y) {
    if (m.kind() == MetricKind::ReciprocalSine) {
        if (!m.domain().contains(y)) {
            throw Error(ErrorCode::OutOfDomain, "y = " + shortest(y) + " outside metric " + m.spec());
        }
        return std::sin(m.frequency() * (1.0 - y));
    }
    const double g = eval_g(m, y);
    if (g == 0.0) throw Error(ErrorCode::ZeroWeight, "zero weight at y = " + shortest(y));
    return 1.0 / g;
}

double log_slope(const Metric& m, double y) {
    switch (m.kind()) {
    case MetricKind::PowerLaw: return m.alpha() == 0.0 ? 0.0 : m.alpha() / y;
    case MetricKind::ReciprocalSine: {
        const double phase = m.frequency() * (1.0 - y);
        return m.frequency() * std::cos(phase) / std::sin(phase);
    }
    case MetricKind::Designed: return m.payload_->weight_derivative(y) / m.payload_->weight(y);
    case MetricKind::Sampled: {
        const auto& ys = m.payload_->ys;
        const auto& gs = m.payload_->gs;
        auto it = std::upper_bound(ys.begin(), ys.end(), y);
        std::size_t i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - ys.begin(), 1,
                                                                            static_cast<std::ptrdiff_t>(ys.size()) - 1));
        return (gs[i] - gs[i - 1]) / (ys[i] - ys[i - 1]) / eval_g_unchecked(m, y);
    }
    }
    return 0.0;
}

Metric design_metric(SlopeLaw h, double C, Interval domain) {
    if (!(C > 0.0)) throw Error(ErrorCode::InvalidParams, "design constant must be positive");
    return Metric::designed(std::move(h), C, domain);
}

std::vector<double> poles(const Metric& m, Interval range) {
    std::vector<double> out;
    if (m.kind() == MetricKind::ReciprocalSine) {
        // sin(a (1 - y)) = 0  <=>  y = 1 - k pi / a
        const double spacing = std::numbers::pi / m.frequency();
        const double k_first = std::ceil((1.0 - range.upper) / spacing);
        const double k_start = std::max(k_first, -1e6);
        for (double k = k_start; k < k_start + 1e6; k += 1.0) {
            const double y = 1.0 - k * spacing;
            if (y <= range.lower) break;
            if (range.contains(y)) out.push_back(y);
        }
        std::sort(out.begin(), out.end());
    } else if (m.kind() == MetricKind::PowerLaw && m.alpha() < 0.0 && range.contains(0.0)) {
        out.push_back(0.0);
    }
    return out;
}

Metric parse_metric(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "metric spec '" + std::string(spec) + "' lacks a ':'");
    }
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view arg = spec.substr(colon + 1);
    if (kind == "power") return Metric::power_law(parse_double(arg, "power-law exponent"));
    if (kind == "recipsin") return Metric::reciprocal_sine(parse_double(arg, "reciprocal-sine frequency"));
    if (kind == "designed") return Metric::from_expression(Expression::parse(arg));
    if (kind == "sampled") return load_sampled_metric(std::string(arg));
    throw Error(ErrorCode::ParseError, "unknown metric kind '" + std::string(kind) + "'");
}

Metric load_sampled_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::vector<double> ys, gs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "expected 'y,g' in '" + line + "'");
        std::string_view ytext(line.data(), comma);
        std::string_view gtext(line.data() + comma + 1, line.size() - comma - 1);
        if (first && !ytext.empty() && std::isalpha(static_cast<unsigned char>(ytext.front()))) {
            first = false; // header
            continue;
        }
        first = false;
        ys.push_back(parse_double(ytext, "sample height"));
        gs.push_back(parse_double(gtext, "sample weight"));
    }
    return Metric::sampled(std::move(ys), std::move(gs), path);
}

} // namespace geodesica
