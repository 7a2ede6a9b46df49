#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyplevel {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input outside the open unit disc, a pole of the map, or a point where a
/// hyperbolic quantity of f(z) would divide by 1-|f(z)|^2 = 0.
struct DomainError : Error {
  using Error::Error;
};

/// Text input rejected by the map parser; `offset` is the byte position in the
/// original string at which parsing failed.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t off)
      : Error(msg + " (byte " + std::to_string(off) + ")"), offset(off) {}
  std::size_t offset;
};

struct SingularGradient : Error {
  using Error::Error;
};

struct SingularTangent : Error {
  using Error::Error;
};

struct OffCurveError : Error {
  using Error::Error;
};

struct MaxStepsError : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct NearSingular : Error {
  using Error::Error;
};

/// Raised by measures when asked to integrate over a curve that exits to the
/// unit circle: the hyperbolic perimeter of such an arc is infinite.
struct OpenCurveError : Error {
  using Error::Error;
};

struct RequirementMismatch : Error {
  using Error::Error;
};

/// A dual-route consistency check failed inside the library itself.
struct InternalCheckError : Error {
  using Error::Error;
};

}  // namespace hyplevel
