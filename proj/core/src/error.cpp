#include "bvw/error.hpp"

namespace bvw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IllFormedMap: return "IllFormedMap";
    case ErrorKind::UnsupportedRingPair: return "UnsupportedRingPair";
    case ErrorKind::SizeTooLarge: return "SizeTooLarge";
    case ErrorKind::NotAllowable: return "NotAllowable";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::NotConfined: return "NotConfined";
    case ErrorKind::SquareNotListed: return "SquareNotListed";
    case ErrorKind::SBViolation: return "SBViolation";
    case ErrorKind::NotOrientable: return "NotOrientable";
    case ErrorKind::MissingCertificate: return "MissingCertificate";
    case ErrorKind::NaturalityViolation: return "NaturalityViolation";
    case ErrorKind::OrientationViolation: return "OrientationViolation";
    case ErrorKind::NotOAllowable: return "NotOAllowable";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::OddDegreeOrientation: return "OddDegreeOrientation";
    case ErrorKind::HypothesisFailure: return "HypothesisFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace bvw
