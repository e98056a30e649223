#pragma once

#include <cstdint>

#include "kirchhoff/matrix.hpp"

namespace kirchhoff {

// Probability mass must balance to 1 within this slack.
inline constexpr double mass_tolerance = 1e-12;
// Point mass below this counts as zero when dividing by the reference
// measure; above the numerator threshold the division is refused instead
// of producing garbage from denormal mass.
inline constexpr double zero_mass_threshold = 1e-15;
inline constexpr double numerator_threshold = 1e-12;
// Seed for the reproducible test-function generator ("kirchhof").
inline constexpr std::uint64_t default_seed = 0x6b69726368686f66ULL;

// Finite-support nonnegative measure. Normalized (total mass 1) unless
// built through unnormalized(), which is only meant for intermediates.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(Vector weights);
  static DiscreteMeasure unnormalized(Vector weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const Vector& weights() const { return weights_; }
  double total() const;

 private:
  DiscreteMeasure(Vector weights, bool normalized_check);
  Vector weights_;
};

// Joint probability mass on a finite product space. Row sums give the
// first marginal, column sums the second.
class DiscreteCoupling {
 public:
  explicit DiscreteCoupling(Matrix mass);

  std::size_t size() const { return mass_.rows(); }
  const Matrix& mass() const { return mass_; }

 private:
  Matrix mass_;
};

// Functions on edges (point pairs) and points; kept as plain containers.
using EdgeFunction = Matrix;
using PointFunction = Vector;

enum class MarginalSide { first, second };

DiscreteMeasure marginal(const DiscreteCoupling& pi, MarginalSide side);

// Entrywise product phi(i,j) * pi(i,j); a signed measure in general.
Matrix phi_measure(const DiscreteCoupling& pi, const EdgeFunction& phi);

// psi(i) = sum_j phi(i,j) pi(i,j) / mu(i), the discrete Radon-Nikodym
// derivative of the first marginal of phi*dpi with respect to mu.
// Points with mu(i) = 0 and a vanishing numerator get psi(i) = 0; a
// non-vanishing numerator there throws AbsoluteContinuityViolation.
PointFunction kirchhoff_divergence(const DiscreteCoupling& pi, const EdgeFunction& phi,
                                   const DiscreteMeasure& mu);

// Same with mu taken as the first marginal of pi, where a solution always
// exists.
PointFunction kirchhoff_divergence(const DiscreteCoupling& pi, const EdgeFunction& phi);

// Checks sum_i t(i) psi(i) mu(i) == sum_{i,j} t(i) phi(i,j) pi(i,j) for
// `trials` seeded pseudo-random test functions t, mu = first marginal.
bool verify_defining_equation(const DiscreteCoupling& pi, const EdgeFunction& phi,
                              const PointFunction& psi, int trials, double tolerance,
                              std::uint64_t seed = default_seed);

// Divergence of the difference function F(i,j) = f(j) - f(i).
PointFunction laplacian_from_coupling(const DiscreteCoupling& pi, const PointFunction& f);

// True iff the divergence respects the sup bound ||psi|| <= ||phi||.
bool sup_bound_check(const DiscreteCoupling& pi, const EdgeFunction& phi);

namespace detail {
// Deterministic double in [-1, 1) from raw 64-bit generator output;
// avoids distribution classes so results are identical across platforms.
inline double signed_unit(std::uint64_t bits) {
  return 2.0 * (static_cast<double>(bits >> 11) * 0x1.0p-53) - 1.0;
}
}  // namespace detail

}  // namespace kirchhoff
