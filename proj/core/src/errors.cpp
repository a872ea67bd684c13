#include "bgeom/errors.hpp"

namespace bgeom {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::DomainEscape: return "DomainEscape";
    case ErrorKind::NearBoundary: return "NearBoundary";
    case ErrorKind::SingularLocus: return "SingularLocus";
    case ErrorKind::AxisSingular: return "AxisSingular";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::Coincident: return "Coincident";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace bgeom
