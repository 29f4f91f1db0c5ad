#ifndef GEODESICA_FIGURES_HPP
#define GEODESICA_FIGURES_HPP

#include <string>
#include <vector>

#include "geodesica/polyline.hpp"
#include "geodesica/solver.hpp"

namespace geodesica {

struct FigureCurve {
    std::string name;  // file stem
    std::string label; // legend text
    double parameter;  // alpha or a
    Polyline line;
    bool highlight = false;
};

struct FigureOptions {
    Engine engine = Engine::Ode;
    double ds = 1e-3;
    int n_layers = 10'000;
    double epsilon = 1e-3;
};

/// Power-law geodesics for alpha in {-0.25, -0.5, -1, -2, -4} from (0, eps)
/// launched upward with C = 1, so each turns at y = 1. Plotted as 1 - y.
std::vector<FigureCurve> figure4(const FigureOptions& options = {});

/// Reciprocal-sine geodesics for a in {1, 2, 3, 4} from (0, 1 - eps) launched
/// downward with C = 0.9. Only a = 4 meets a pole above y = 0.
std::vector<FigureCurve> figure5(const FigureOptions& options = {});

inline constexpr double kFigure4Invariant = 1.0;
inline constexpr double kFigure5Invariant = 0.9;

} // namespace geodesica

#endif // GEODESICA_FIGURES_HPP
