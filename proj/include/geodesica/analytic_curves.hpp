#ifndef GEODESICA_ANALYTIC_CURVES_HPP
#define GEODESICA_ANALYTIC_CURVES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "geodesica/core.hpp"

namespace geodesica {

enum class CurveFamily { Line, Catenary, Cycloid, Semicircle, Parabola, Exponential, Custom };

std::string_view to_string(CurveFamily family);

/// Family parameters: `a`, `b` for the line y = a t + b, `r` for the cycloid
/// rolling radius and the semicircle radius. Other families are fixed-form.
template <typename Scalar>
struct CurveParams {
    Scalar a = Scalar(0);
    Scalar b = Scalar(0);
    Scalar r = Scalar(1);
};

template <typename Scalar>
struct ParametricCurve {
    using Vec = Eigen::Matrix<Scalar, 2, 1>;

    CurveFamily family = CurveFamily::Custom;
    CurveParams<Scalar> params{};
    Scalar t_lo = Scalar(0);
    Scalar t_hi = Scalar(1);
    std::function<Vec(Scalar)> custom_eval;
    std::function<Vec(Scalar)> custom_deriv;

    Vec eval(Scalar t) const {
        using std::cos;
        using std::cosh;
        using std::exp;
        using std::sin;
        const Scalar r = params.r;
        switch (family) {
        case CurveFamily::Line: return Vec(t, params.a * t + params.b);
        case CurveFamily::Catenary: return Vec(t, cosh(t));
        case CurveFamily::Cycloid: {
            const Scalar half = sin(t / 2);
            return Vec(r * (t - sin(t)), 2 * r * half * half);
        }
        case CurveFamily::Semicircle: return Vec(r * cos(t), r * sin(t));
        case CurveFamily::Parabola: return Vec(t, t * t / 4 + 1);
        case CurveFamily::Exponential: return Vec(t, exp(t));
        case CurveFamily::Custom: return custom_eval(t);
        }
        return Vec::Zero();
    }

    Vec deriv(Scalar t) const {
        using std::cos;
        using std::exp;
        using std::sin;
        using std::sinh;
        const Scalar r = params.r;
        switch (family) {
        case CurveFamily::Line: return Vec(Scalar(1), params.a);
        case CurveFamily::Catenary: return Vec(Scalar(1), sinh(t));
        case CurveFamily::Cycloid: {
            const Scalar half = sin(t / 2);
            return Vec(2 * r * half * half, r * sin(t));
        }
        case CurveFamily::Semicircle: return Vec(-r * sin(t), r * cos(t));
        case CurveFamily::Parabola: return Vec(Scalar(1), t / 2);
        case CurveFamily::Exponential: return Vec(Scalar(1), exp(t));
        case CurveFamily::Custom: return custom_deriv(t);
        }
        return Vec::Zero();
    }
};

template <typename Scalar>
ParametricCurve<Scalar> make_curve(CurveFamily family, CurveParams<Scalar> params, Scalar t_lo, Scalar t_hi) {
    if (family == CurveFamily::Custom) {
        throw Error(ErrorCode::InvalidParams, "custom curves are built with make_custom_curve");
    }
    if ((family == CurveFamily::Cycloid || family == CurveFamily::Semicircle) && !(params.r > Scalar(0))) {
        throw Error(ErrorCode::InvalidParams, "radius must be positive");
    }
    if (!(t_hi > t_lo)) throw Error(ErrorCode::InvalidParams, "empty parameter range");
    ParametricCurve<Scalar> c;
    c.family = family;
    c.params = params;
    c.t_lo = t_lo;
    c.t_hi = t_hi;
    return c;
}

template <typename Scalar>
ParametricCurve<Scalar> make_custom_curve(std::function<typename ParametricCurve<Scalar>::Vec(Scalar)> eval,
                                          std::function<typename ParametricCurve<Scalar>::Vec(Scalar)> deriv,
                                          Scalar t_lo, Scalar t_hi) {
    ParametricCurve<Scalar> c;
    c.family = CurveFamily::Custom;
    c.t_lo = t_lo;
    c.t_hi = t_hi;
    c.custom_eval = std::move(eval);
    c.custom_deriv = std::move(deriv);
    return c;
}

/// y = sin^2 t on (0, pi/2); its slope law is y' = 2 sqrt(y (1 - y)).
template <typename Scalar>
ParametricCurve<Scalar> sine_squared_curve(Scalar t_lo, Scalar t_hi) {
    using Vec = typename ParametricCurve<Scalar>::Vec;
    return make_custom_curve<Scalar>(
        [](Scalar t) {
            using std::sin;
            const Scalar s = sin(t);
            return Vec(t, s * s);
        },
        [](Scalar t) {
            using std::sin;
            return Vec(Scalar(1), sin(2 * t));
        },
        t_lo, t_hi);
}

/// Beltrami constant C^2 (left side of y^{2 alpha} dx^2 / (dx^2 + dy^2) = C^2) at parameter t.
template <typename Scalar>
Scalar beltrami_lhs(const ParametricCurve<Scalar>& c, Scalar alpha, Scalar t) {
    using std::pow;
    const auto p = c.eval(t);
    const auto d = c.deriv(t);
    const Scalar denom = d.squaredNorm();
    if (denom == Scalar(0)) throw Error(ErrorCode::DegenerateTangent, "dx = dy = 0");
    return pow(p.y(), 2 * alpha) * d.x() * d.x() / denom;
}

template <typename Scalar>
Scalar beltrami_residual(const ParametricCurve<Scalar>& c, Scalar alpha, Scalar t, Scalar C_squared) {
    return beltrami_lhs(c, alpha, t) - C_squared;
}

template <typename Scalar>
struct BeltramiCheck {
    Scalar C_squared = Scalar(0);
    Scalar max_residual = Scalar(0);
};

/// Samples `n_samples` evenly spaced parameters on the closed t range. For the
/// cycloid, samples closer than `cusp_margin` to a cusp (t = 2 pi k) are dropped.
template <typename Scalar>
BeltramiCheck<Scalar> fit_constant(const ParametricCurve<Scalar>& c, Scalar alpha, int n_samples,
                                   Scalar cusp_margin = Scalar(1e-3)) {
    using std::abs;
    using std::round;
    if (n_samples < 3) throw Error(ErrorCode::InvalidParams, "need at least 3 samples");
    std::vector<Scalar> lhs;
    lhs.reserve(static_cast<std::size_t>(n_samples));
    const Scalar two_pi = 2 * Scalar(std::numbers::pi);
    for (int i = 0; i < n_samples; ++i) {
        const Scalar t = c.t_lo + (c.t_hi - c.t_lo) * Scalar(i) / Scalar(n_samples - 1);
        if (c.family == CurveFamily::Cycloid && abs(t - two_pi * round(t / two_pi)) < cusp_margin) continue;
        lhs.push_back(beltrami_lhs(c, alpha, t));
    }
    if (lhs.empty()) throw Error(ErrorCode::DegenerateTangent, "every sample falls inside the cusp margin");
    BeltramiCheck<Scalar> out;
    Scalar sum = Scalar(0);
    for (const Scalar& v : lhs) sum += v;
    out.C_squared = sum / Scalar(lhs.size());
    for (const Scalar& v : lhs) out.max_residual = std::max(out.max_residual, Scalar(abs(v - out.C_squared)));
    return out;
}

} // namespace geodesica

#endif // GEODESICA_ANALYTIC_CURVES_HPP
