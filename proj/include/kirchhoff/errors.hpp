#pragma once

#include <stdexcept>
#include <string>

namespace kirchhoff {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed constructor argument or inconsistent input data.
struct InvalidInput : Error { using Error::Error; };

// The divergence equation has no solution: mass sits where the reference
// measure vanishes.
struct AbsoluteContinuityViolation : Error { using Error::Error; };

// A vertex with zero measure (isolated vertex).
struct DegenerateVertex : Error { using Error::Error; };

struct InvalidTimes : Error { using Error::Error; };
struct NotRegular : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// Kernel coefficients produce a negative kernel value.
struct NegativeKernel : Error { using Error::Error; };

struct ScaleOutOfRange : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct AsymmetricGrid : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace kirchhoff
