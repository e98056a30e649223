#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "kirchhoff/matrix.hpp"
#include "kirchhoff/trace.hpp"

namespace kirchhoff {

enum class MapKind { negation, identity, cantor, tabulated };

// Self-map of a closed interval. Built-ins: negation on [-1/2,1/2],
// identity, the Cantor function on [0,1]; arbitrary maps come in as
// piecewise-linear tables. Construction checks the self-map property on a
// seeded sample of 10^4 points.
class TransportMap {
 public:
  static TransportMap negation();
  static TransportMap identity(double lo = 0.0, double hi = 1.0);
  static TransportMap cantor();
  static TransportMap tabulated(Vector xs, Vector txs);

  MapKind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool contains(double x) const;

  // Applies the map; throws DomainError outside the domain.
  double operator()(double x) const;

 private:
  TransportMap(MapKind kind, double lo, double hi);

  MapKind kind_;
  double lo_;
  double hi_;
  Vector xs_;   // tabulated breakpoints
  Vector txs_;  // tabulated values
};

inline double apply_map(const TransportMap& t, double x) { return t(x); }

// Cantor function ("devil's staircase") by the ternary digit algorithm:
// digits 0/2 emit binary digits 0/1, the first digit 1 terminates with a
// final binary 1. 64 digits are extracted.
//
// The double overload works on the exact binary rational the argument
// represents, so its accuracy is limited by the 2^-52 input precision;
// the num/den overload is exact for rational inputs.
double cantor_value(double x);
double cantor_value(std::int64_t num, std::int64_t den);

// Function of one variable evaluable anywhere in a map's domain: one of
// the closed-form expressions x, x^2, x + x^2, or a piecewise-linear
// table. Expression kinds evaluate exactly; tables interpolate.
class ScalarFunction {
 public:
  static ScalarFunction expression(const std::string& name);
  static ScalarFunction tabulated(Vector xs, Vector values);

  double operator()(double x) const;

 private:
  enum class Kind { linear, square, linear_plus_square, table };
  explicit ScalarFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  Vector xs_;
  Vector values_;
};

// Values of a function on a finite sample grid.
struct SampledFunction {
  Vector points;
  Vector values;
};

ScalarFunction to_scalar_function(const SampledFunction& f);

// psi(x) = phi(x, T(x)) on the sample points.
SampledFunction det_kirchhoff(const TransportMap& t,
                              const std::function<double(double, double)>& phi, const Vector& xs);

// (f o T - f) on the sample points.
SampledFunction det_laplacian(const TransportMap& t, const ScalarFunction& f, const Vector& xs);
SampledFunction det_laplacian(const TransportMap& t, const SampledFunction& f);

// Binomial expansion sum_l C(k,l) (-1)^{k-l} f(T^l x) of the k-th
// Laplacian power.
SampledFunction laplacian_power(const TransportMap& t, const ScalarFunction& f, int k,
                                const Vector& xs);
SampledFunction laplacian_power(const TransportMap& t, const SampledFunction& f, int k);

// u(x,t) = e^{-t} sum_l t^l/l! f(T^l x) with Poisson truncation as in the
// graph semigroup. Orbits are iterated once per abscissa and reused
// across times.
DiffusionTrace det_heat_evolve(const TransportMap& t, const ScalarFunction& f, const Vector& xs,
                               const Vector& times, double epsilon);
DiffusionTrace det_heat_evolve(const TransportMap& t, const SampledFunction& f,
                               const Vector& times, double epsilon);

// Exact negation semigroup f_e + e^{-2t} f_o on a grid symmetric about 0.
SampledFunction closed_form_negation(const ScalarFunction& f, double t, const Vector& xs);
SampledFunction closed_form_negation(const SampledFunction& f, double t);

// Iterates T until successive points differ by at most tolerance; returns
// the stabilized point or throws NoConvergence.
double orbit_limit(const TransportMap& t, double x, int max_iter, double tolerance);

}  // namespace kirchhoff
