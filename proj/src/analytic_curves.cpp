#include "geodesica/analytic_curves.hpp"

namespace geodesica {

std::string_view to_string(CurveFamily family) {
    switch (family) {
    case CurveFamily::Line: return "line";
    case CurveFamily::Catenary: return "catenary";
    case CurveFamily::Cycloid: return "cycloid";
    case CurveFamily::Semicircle: return "semicircle";
    case CurveFamily::Parabola: return "parabola";
    case CurveFamily::Exponential: return "exponential";
    case CurveFamily::Custom: return "custom";
    }
    return "custom";
}

} // namespace geodesica
