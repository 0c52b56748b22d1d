#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bergman {

enum class ErrorKind {
    TooFewVertices,
    DegenerateVertex,
    NotSimple,
    NonpositiveScale,
    DegenerateFamilyParameter,
    NonpositiveBase,
    AngleOutOfRange,
    ConstraintViolated,
    ApexDegenerate,
    PrecisionTooLow,
    InsufficientMoments,
    GramNotPD,
    AreaNotNormalized,
    NonpositiveParameter,
    NoBracketFound,
    EmptyFeasibleSet,
    TriangulationFailed,
    IllConditioned,
    InvalidInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace bergman
