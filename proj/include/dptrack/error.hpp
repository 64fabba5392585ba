#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dptrack {

enum class ErrorKind {
  DimensionMismatch,
  ValueOutOfRange,
  LengthMismatch,
  OutOfBounds,
  InvalidArgument,
  EmptySequence,
  NoFeasiblePath,
  RefuseTooLarge,
  InvalidScenario,
  EmptyInput,
  BadThresholds,
  BadMagic,
  TruncatedFile,
  TrailingData,
  MixedDimensions,
  UnsupportedFormat,
  EmptyDirectory,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported through this type; kind() is the
// stable, machine-readable part and what() carries the location details.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dptrack
