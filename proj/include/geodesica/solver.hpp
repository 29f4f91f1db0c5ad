#ifndef GEODESICA_SOLVER_HPP
#define GEODESICA_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "geodesica/core.hpp"
#include "geodesica/metric.hpp"
#include "geodesica/polyline.hpp"

namespace geodesica {

enum class Engine { Ode, Ray };

std::string_view to_string(Engine e);

struct BoundaryProblem {
    Metric metric;
    Point2 p1 = Point2::Zero();
    Point2 p2 = Point2(1.0, 0.0);
    Engine engine = Engine::Ode;
    double ds = 1e-3;
    int n_layers = 10'000;
    double tolerance = 1e-9;
    /// Arclength budget per trial trace; 0 picks 10 * chord + 1.
    double max_arclength = 0.0;
    /// Ray stack extent; empty picks a window around the endpoints, then
    /// tightens it around the first solution.
    std::optional<Interval> stack_range;
};

struct ShootingResult {
    Polyline polyline;
    double C = 0.0;
    double miss = 0.0;
    int iterations = 0;
    /// Launch-angle bracket (radians from vertical) the root was refined in.
    std::pair<double, double> bracket{0.0, 0.0};
    double theta1 = 0.0;
};

struct FunctionalValue {
    double raw = 0.0;
    double physical = 0.0;
};

/// Shooting over the launch angle at p1. Scans 64 angles spaced evenly in
/// asinh(cot theta), refines every sign change of the endpoint miss by
/// bisection and keeps the candidate with the smallest functional.
ShootingResult shoot(const BoundaryProblem& bp);

/// Midpoint rule for the integral of g(y) ds. `physical` applies the problem
/// constant: g rho for alpha = 1, (2 g)^(-1/2) for alpha = -1/2, else 1; all
/// times the prefactor.
FunctionalValue path_functional(const Metric& metric, const Polyline& line,
                                const PhysicalConstants& constants = {});

/// 2 pi times the integral of y ds (surface of revolution about the x axis).
double catenoid_area(const Polyline& line);

struct MinimalityReport {
    double baseline = 0.0;
    std::vector<double> margins;
    double min_margin = 0.0;
    bool all_increased = false;
};

/// Adds smooth compact bumps along the normal (endpoints fixed) and compares
/// the functional with the unperturbed value.
MinimalityReport minimality_check(const Metric& metric, const ShootingResult& result, int n_perturbations,
                                  double amplitude, std::uint64_t seed = 1);

} // namespace geodesica

#endif // GEODESICA_SOLVER_HPP
