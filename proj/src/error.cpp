#include "dilatest/error.hpp"

namespace dilatest {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::ResolutionExceeded: return "ResolutionExceeded";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NyquistExceeded: return "NyquistExceeded";
    case ErrorKind::MissingLevels: return "MissingLevels";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::ClippingExcessive: return "ClippingExcessive";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace dilatest
