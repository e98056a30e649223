#include "kirchhoff/trace.hpp"

#include <cmath>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

Vector normalize_times(const Vector& times) {
  if (times.empty()) throw InvalidTimes("at least one time is required");
  for (double t : times)
    if (!std::isfinite(t) || t < 0.0) throw InvalidTimes("times must be finite and nonnegative");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidTimes("times must be strictly increasing");

  Vector out;
  out.reserve(times.size() + 1);
  if (times.front() != 0.0) out.push_back(0.0);
  out.insert(out.end(), times.begin(), times.end());
  return out;
}

}  // namespace kirchhoff
