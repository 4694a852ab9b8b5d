#pragma once

#include <stdexcept>
#include <string>

namespace qldpc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPrimitivePolynomial : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct ModulusMismatch : Error { using Error::Error; };
struct InvalidCycle : Error { using Error::Error; };
struct RequirementViolation : Error { using Error::Error; };
struct SearchExhausted : Error { using Error::Error; };
struct NoUnitPivot : Error { using Error::Error; };
struct IterationLimitExceeded : Error { using Error::Error; };
struct RankAnomaly : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };

}  // namespace qldpc
