#ifndef GEODESICA_CORE_HPP
#define GEODESICA_CORE_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace geodesica {

using Point2 = Eigen::Vector2d;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
    OutOfDomain,
    ZeroWeight,
    InvalidParams,
    DegenerateTangent,
    NoRealTangent,
    StepTooLarge,
    StartOutsideStack,
    NoBracket,
    NonConvergence,
    NonPositiveY,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Open interval (lower, upper). Infinite bounds are allowed.
struct Interval {
    double lower = -kInf;
    double upper = kInf;

    bool contains(double y) const { return y > lower && y < upper; }
    /// Closed containment of another interval, used for layer stacks that may touch the boundary.
    bool covers(double lo, double hi) const { return lo >= lower && hi <= upper; }
    double width() const { return upper - lower; }
};

/// Why a traced geodesic or ray stopped.
enum class Termination {
    Budget,        // arclength, x-span or segment budget exhausted
    DomainExit,    // left the metric domain or the layer stack
    Pole,          // hit a point where the weight is infinite (zero velocity)
    NegativeIndex, // entered a negative-weight region with negative indices disallowed
};

std::string_view to_string(Termination t);

} // namespace geodesica

#endif // GEODESICA_CORE_HPP
