#include "ghrelax/error.hpp"

namespace ghrelax {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::BadTarget: return "BadTarget";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::IncompatibleCardinalities: return "IncompatibleCardinalities";
    case ErrorCode::NotACorrespondence: return "NotACorrespondence";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::BisectionExhausted: return "BisectionExhausted";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::DisconnectedMesh: return "DisconnectedMesh";
    case ErrorCode::TooMany: return "TooMany";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ghrelax
