#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bgeom {

enum class ErrorKind {
  InvalidArgument,
  StepUnderflow,
  DomainEscape,
  NearBoundary,
  SingularLocus,
  AxisSingular,
  Degenerate,
  ZeroVector,
  Coincident,
  DimensionTooSmall,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All recoverable failures in the library are reported as bgeom::Error.
/// The kind is stable API; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bgeom
