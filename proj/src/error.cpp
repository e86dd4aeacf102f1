#include "cyclelab/error.hpp"

namespace cyclelab {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MixedContext: return "MixedContext";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::VariableClash: return "VariableClash";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::NotMinimalPrime: return "NotMinimalPrime";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::ImproperIntersection: return "ImproperIntersection";
    case ErrorCode::NotFiniteLength: return "NotFiniteLength";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::ImageNotInTarget: return "ImageNotInTarget";
    case ErrorCode::DegreeComputationFailed: return "DegreeComputationFailed";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DivisionByZeroAlmostEverywhere: return "DivisionByZeroAlmostEverywhere";
    case ErrorCode::PrimeTooLarge: return "PrimeTooLarge";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

std::string_view error_module(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MixedContext:
    case ErrorCode::BadPrime:
    case ErrorCode::NotPrime:
    case ErrorCode::DegreeTooLarge:
    case ErrorCode::VariableClash:
    case ErrorCode::ExponentOverflow:
    case ErrorCode::DivisionByZero:
        return "poly_core";
    case ErrorCode::ResourceLimit:
    case ErrorCode::NotHomogeneous:
        return "groebner";
    case ErrorCode::UnsupportedShape:
    case ErrorCode::NotMinimalPrime:
    case ErrorCode::AmbientMismatch:
    case ErrorCode::InvariantViolation:
        return "cycles";
    case ErrorCode::ImproperIntersection:
    case ErrorCode::NotFiniteLength:
        return "koszul";
    case ErrorCode::NotFinite:
    case ErrorCode::NotSurjective:
    case ErrorCode::ImageNotInTarget:
    case ErrorCode::DegreeComputationFailed:
        return "correspondences";
    case ErrorCode::DivisionByZeroAlmostEverywhere:
    case ErrorCode::PrimeTooLarge:
    case ErrorCode::DepthExceeded:
        return "ultraproduct";
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
        return "cli";
    }
    return "unknown";
}

std::string Error::qualified_code() const
{
    return std::string(error_module(code_)) + "." + std::string(error_code_name(code_));
}

}  // namespace cyclelab
