#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dilatest {

enum class ErrorKind {
  EmptyIntersection,
  ResolutionExceeded,
  InvalidExponent,
  OutOfDomain,
  NyquistExceeded,
  MissingLevels,
  NonPositiveValue,
  ClippingExcessive,
  PreconditionFailed,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every library failure; `kind()` tells callers
/// (and the CLI report) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dilatest
