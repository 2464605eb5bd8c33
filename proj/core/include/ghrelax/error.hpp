#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghrelax {

enum class ErrorCode {
  AsymmetricMatrix,
  NonzeroDiagonal,
  TriangleViolation,
  NonFinite,
  NotSquare,
  DimensionMismatch,
  Empty,
  InvalidK,
  BadTarget,
  BadIndex,
  EmptySupport,
  IncompatibleCardinalities,
  NotACorrespondence,
  NumericalBreakdown,
  BisectionExhausted,
  TooLarge,
  CardinalityMismatch,
  DisconnectedMesh,
  TooMany,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ghrelax
