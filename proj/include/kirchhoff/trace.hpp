#pragma once

#include <optional>

#include "kirchhoff/matrix.hpp"

namespace kirchhoff {

// Time-stamped snapshots of a diffusion u(.,t). One row per time; the
// first row is always the initial condition at t = 0.
struct DiffusionTrace {
  Vector times;
  Matrix snapshots;  // times.size() x n
  std::optional<Vector> steady;
  double residual = 0.0;
  int truncation_level = 0;
};

// Validates an ascending nonnegative time grid and prepends t = 0 when
// missing, so every trace starts at the initial condition. Throws
// InvalidTimes otherwise.
Vector normalize_times(const Vector& times);

}  // namespace kirchhoff
