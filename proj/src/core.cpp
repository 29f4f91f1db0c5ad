#include "geodesica/core.hpp"

namespace geodesica {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::NoRealTangent: return "NoRealTangent";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::StartOutsideStack: return "StartOutsideStack";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonPositiveY: return "NonPositiveY";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

std::string_view to_string(Termination t) {
    switch (t) {
    case Termination::Budget: return "budget";
    case Termination::DomainExit: return "domain-exit";
    case Termination::Pole: return "pole";
    case Termination::NegativeIndex: return "negative-index";
    }
    return "unknown";
}

} // namespace geodesica
