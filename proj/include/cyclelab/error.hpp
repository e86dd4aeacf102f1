#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclelab {

enum class ErrorCode {
    MixedContext,
    BadPrime,
    NotPrime,
    DegreeTooLarge,
    VariableClash,
    ExponentOverflow,
    ResourceLimit,
    NotHomogeneous,
    UnsupportedShape,
    NotMinimalPrime,
    AmbientMismatch,
    ImproperIntersection,
    NotFiniteLength,
    NotFinite,
    NotSurjective,
    ImageNotInTarget,
    DegreeComputationFailed,
    DivisionByZero,
    DivisionByZeroAlmostEverywhere,
    PrimeTooLarge,
    DepthExceeded,
    ParseError,
    ValidationError,
    InvariantViolation,
};

std::string_view error_code_name(ErrorCode code);

/// Module that raised an error; used for the module-qualified codes the CLI prints.
std::string_view error_module(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// e.g. "groebner.ResourceLimit"
    std::string qualified_code() const;

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cyclelab
