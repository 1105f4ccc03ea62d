#pragma once

#include <stdexcept>
#include <string>

namespace entanglekit {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NotPSD,
  ZeroVector,
  DimensionMismatch,
  InvalidState,
  ParameterOutOfRange,
  MalformedSpectrum,
  MalformedProfile,
  NotApplicable,
  UnknownMeasure,
  MalformedInput,
};

const char* to_string(ErrorKind kind);

// Every library failure surfaces as this exception; kind() is stable API,
// what() carries a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace entanglekit
