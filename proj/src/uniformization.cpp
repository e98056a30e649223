#include "kirchhoff/uniformization.hpp"

#include <cmath>
#include <cstddef>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

std::vector<double> poisson_weights(double t, double epsilon) {
  if (!std::isfinite(t) || t < 0.0) throw InvalidTimes("time must be finite and nonnegative");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (t == 0.0) return {1.0};

  // Forward recurrence from e^{-t}; for large t that start underflows, so
  // each weight is then taken from the log form instead.
  const bool log_form = t > 500.0;
  const double log_t = std::log(t);
  double term = log_form ? 0.0 : std::exp(-t);
  const std::size_t cap = static_cast<std::size_t>(10.0 * t) + 200;

  std::vector<double> weights;
  double cumulative = 0.0;
  for (std::size_t l = 0; l <= cap; ++l) {
    const double w =
        log_form ? std::exp(static_cast<double>(l) * log_t - t - std::lgamma(static_cast<double>(l) + 1.0))
                 : term;
    weights.push_back(w);
    cumulative += w;
    if (cumulative >= 1.0 - epsilon) return weights;
    if (!log_form) term *= t / static_cast<double>(l + 1);
  }
  throw NoConvergence("Poisson tail failed to reach 1 - epsilon");
}

}  // namespace kirchhoff
