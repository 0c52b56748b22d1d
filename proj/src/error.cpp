#include "bergman/error.hpp"

namespace bergman {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::TooFewVertices: return "TooFewVertices";
        case ErrorKind::DegenerateVertex: return "DegenerateVertex";
        case ErrorKind::NotSimple: return "NotSimple";
        case ErrorKind::NonpositiveScale: return "NonpositiveScale";
        case ErrorKind::DegenerateFamilyParameter: return "DegenerateFamilyParameter";
        case ErrorKind::NonpositiveBase: return "NonpositiveBase";
        case ErrorKind::AngleOutOfRange: return "AngleOutOfRange";
        case ErrorKind::ConstraintViolated: return "ConstraintViolated";
        case ErrorKind::ApexDegenerate: return "ApexDegenerate";
        case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
        case ErrorKind::InsufficientMoments: return "InsufficientMoments";
        case ErrorKind::GramNotPD: return "GramNotPD";
        case ErrorKind::AreaNotNormalized: return "AreaNotNormalized";
        case ErrorKind::NonpositiveParameter: return "NonpositiveParameter";
        case ErrorKind::NoBracketFound: return "NoBracketFound";
        case ErrorKind::EmptyFeasibleSet: return "EmptyFeasibleSet";
        case ErrorKind::TriangulationFailed: return "TriangulationFailed";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

}  // namespace bergman
