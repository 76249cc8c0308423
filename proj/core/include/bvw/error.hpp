#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bvw {

enum class ErrorKind {
  IllFormedMap,
  UnsupportedRingPair,
  SizeTooLarge,
  NotAllowable,
  NotComposable,
  NotConfined,
  SquareNotListed,
  SBViolation,
  NotOrientable,
  MissingCertificate,
  NaturalityViolation,
  OrientationViolation,
  NotOAllowable,
  NotInvertible,
  NotCommutative,
  OddDegreeOrientation,
  HypothesisFailure,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bvw
