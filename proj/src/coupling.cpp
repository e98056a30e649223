#include "kirchhoff/coupling.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

void require_nonnegative(const Vector& v, const char* what) {
  for (double x : v)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput(std::string(what) + " must be nonnegative and finite");
}

double sum(const Vector& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(Vector weights, bool normalized_check)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidInput("measure needs at least one point");
  require_nonnegative(weights_, "measure weights");
  if (normalized_check && std::abs(sum(weights_) - 1.0) > mass_tolerance)
    throw InvalidInput("measure weights must sum to 1");
}

DiscreteMeasure::DiscreteMeasure(Vector weights) : DiscreteMeasure(std::move(weights), true) {}

DiscreteMeasure DiscreteMeasure::unnormalized(Vector weights) {
  return DiscreteMeasure(std::move(weights), false);
}

double DiscreteMeasure::total() const { return sum(weights_); }

DiscreteCoupling::DiscreteCoupling(Matrix mass) : mass_(std::move(mass)) {
  if (!mass_.square() || mass_.rows() == 0) throw InvalidInput("coupling mass must be a nonempty square matrix");
  require_nonnegative(mass_.data(), "coupling mass");
  if (std::abs(sum(mass_.data()) - 1.0) > mass_tolerance)
    throw InvalidInput("coupling mass must sum to 1");
}

DiscreteMeasure marginal(const DiscreteCoupling& pi, MarginalSide side) {
  const std::size_t n = pi.size();
  Vector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[side == MarginalSide::first ? i : j] += pi.mass()(i, j);
  // Sums to 1 by the coupling invariant; skip the re-check to avoid
  // rejecting rounding at the tolerance edge.
  return DiscreteMeasure::unnormalized(std::move(out));
}

Matrix phi_measure(const DiscreteCoupling& pi, const EdgeFunction& phi) {
  const std::size_t n = pi.size();
  if (phi.rows() != n || phi.cols() != n) throw ShapeMismatch("phi shape does not match coupling");
  if (!all_finite(phi)) throw InvalidInput("phi entries must be finite");
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = phi(i, j) * pi.mass()(i, j);
  return out;
}

PointFunction kirchhoff_divergence(const DiscreteCoupling& pi, const EdgeFunction& phi,
                                   const DiscreteMeasure& mu) {
  const std::size_t n = pi.size();
  if (mu.size() != n) throw ShapeMismatch("measure size does not match coupling");
  const Matrix weighted = phi_measure(pi, phi);
  PointFunction psi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double numerator = 0.0;
    for (std::size_t j = 0; j < n; ++j) numerator += weighted(i, j);
    if (mu[i] < zero_mass_threshold) {
      if (std::abs(numerator) > numerator_threshold)
        throw AbsoluteContinuityViolation("phi*pi carries mass at point " + std::to_string(i) +
                                          " where the reference measure vanishes");
      psi[i] = 0.0;  // any value solves the equation here; 0 is canonical
    } else {
      psi[i] = numerator / mu[i];
    }
  }
  return psi;
}

PointFunction kirchhoff_divergence(const DiscreteCoupling& pi, const EdgeFunction& phi) {
  return kirchhoff_divergence(pi, phi, marginal(pi, MarginalSide::first));
}

bool verify_defining_equation(const DiscreteCoupling& pi, const EdgeFunction& phi,
                              const PointFunction& psi, int trials, double tolerance,
                              std::uint64_t seed) {
  const std::size_t n = pi.size();
  if (phi.rows() != n || phi.cols() != n) throw ShapeMismatch("phi shape does not match coupling");
  if (psi.size() != n) throw ShapeMismatch("psi size does not match coupling");
  if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");

  const DiscreteMeasure mu = marginal(pi, MarginalSide::first);
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Vector test(n);
    for (std::size_t i = 0; i < n; ++i) test[i] = detail::signed_unit(rng());

    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) lhs += test[i] * psi[i] * mu[i];
    double rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += phi(i, j) * pi.mass()(i, j);
      rhs += test[i] * row;
    }
    if (std::abs(lhs - rhs) > tolerance) return false;
  }
  return true;
}

PointFunction laplacian_from_coupling(const DiscreteCoupling& pi, const PointFunction& f) {
  const std::size_t n = pi.size();
  if (f.size() != n) throw ShapeMismatch("f size does not match coupling");
  if (!all_finite(f)) throw InvalidInput("f entries must be finite");
  Matrix difference(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) difference(i, j) = f[j] - f[i];
  return kirchhoff_divergence(pi, difference);
}

bool sup_bound_check(const DiscreteCoupling& pi, const EdgeFunction& phi) {
  const PointFunction psi = kirchhoff_divergence(pi, phi);
  return max_abs(psi) <= max_abs(phi) + 1e-12;
}

}  // namespace kirchhoff
