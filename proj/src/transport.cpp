#include "kirchhoff/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "kirchhoff/coupling.hpp"
#include "kirchhoff/errors.hpp"
#include "kirchhoff/uniformization.hpp"

namespace kirchhoff {

namespace {

constexpr double domain_slack = 1e-12;
constexpr int cantor_digits = 64;

double interpolate(const Vector& xs, const Vector& values, double x) {
  const std::size_t n = xs.size();
  if (x <= xs.front()) return values.front();
  if (x >= xs.back()) return values.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t p = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double x0 = xs[p];
  const double x1 = xs[std::min(p + 1, n - 1)];
  const double r = (x - x0) / (x1 - x0);
  return values[p] + r * (values[p + 1] - values[p]);
}

// 64 ternary digits of num/den in (0,1), turned into binary digits of the
// Cantor value: digit 0 or 2 emits bit 0 or 1; the first digit 1 emits a
// final bit 1 and stops. Exact integer arithmetic throughout; the two
// 32-bit halves are combined with a single rounding.
double cantor_from_ratio(unsigned __int128 num, unsigned __int128 den) {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  for (int i = 1; i <= cantor_digits; ++i) {
    num *= 3;
    const unsigned digit = static_cast<unsigned>(num / den);
    num %= den;
    const bool bit = digit >= 1;
    if (bit) {
      if (i <= 32)
        hi |= std::uint64_t{1} << (32 - i);
      else
        lo |= std::uint64_t{1} << (64 - i);
    }
    if (digit == 1) break;
  }
  return static_cast<double>(hi) * 0x1.0p-32 + static_cast<double>(lo) * 0x1.0p-64;
}

}  // namespace

double cantor_value(double x) {
  if (!(x >= 0.0) || !(x <= 1.0)) throw DomainError("cantor_value argument must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  // The double is itself a binary rational mant / 2^k; extract digits from
  // that exact value. Inputs below the 64-digit resolution collapse to 0.
  int exp = 0;
  const double fraction = std::frexp(x, &exp);
  std::uint64_t mant = static_cast<std::uint64_t>(std::ldexp(fraction, 53));
  int k = 53 - exp;
  while ((mant & 1u) == 0) {
    mant >>= 1;
    --k;
  }
  if (k > 126) {
    const int shift = k - 126;
    mant = shift >= 64 ? 0 : mant >> shift;
    k = 126;
    if (mant == 0) return 0.0;
  }
  return cantor_from_ratio(mant, static_cast<unsigned __int128>(1) << k);
}

double cantor_value(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0 || num > den)
    throw DomainError("cantor_value fraction must satisfy 0 <= num/den <= 1");
  if (num == 0) return 0.0;
  if (num == den) return 1.0;
  return cantor_from_ratio(static_cast<unsigned __int128>(num),
                           static_cast<unsigned __int128>(den));
}

TransportMap::TransportMap(MapKind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

bool TransportMap::contains(double x) const {
  return std::isfinite(x) && x >= lo_ - domain_slack && x <= hi_ + domain_slack;
}

double TransportMap::operator()(double x) const {
  if (!contains(x)) throw DomainError("point outside the map domain");
  x = std::clamp(x, lo_, hi_);
  switch (kind_) {
    case MapKind::negation:
      return -x;
    case MapKind::identity:
      return x;
    case MapKind::cantor:
      return cantor_value(x);
    case MapKind::tabulated:
      return interpolate(xs_, txs_, x);
  }
  throw Error("unreachable map kind");
}

namespace {

void verify_self_map(const TransportMap& t) {
  std::mt19937_64 rng(default_seed);
  const double lo = t.lo();
  const double span = t.hi() - t.lo();
  for (int i = 0; i < 10000; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double x = lo + span * u;
    if (!t.contains(t(x)))
      throw InvalidInput("map does not send its domain into itself");
  }
}

}  // namespace

TransportMap TransportMap::negation() {
  TransportMap t(MapKind::negation, -0.5, 0.5);
  verify_self_map(t);
  return t;
}

TransportMap TransportMap::identity(double lo, double hi) {
  if (!(lo < hi)) throw InvalidInput("domain must be a nonempty interval");
  TransportMap t(MapKind::identity, lo, hi);
  verify_self_map(t);
  return t;
}

TransportMap TransportMap::cantor() {
  TransportMap t(MapKind::cantor, 0.0, 1.0);
  verify_self_map(t);
  return t;
}

TransportMap TransportMap::tabulated(Vector xs, Vector txs) {
  if (xs.size() != txs.size() || xs.size() < 2)
    throw InvalidInput("tabulated map needs matching breakpoint/value lists, length >= 2");
  if (!all_finite(xs) || !all_finite(txs)) throw InvalidInput("tabulated map entries must be finite");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw InvalidInput("breakpoints must be strictly increasing");
  TransportMap t(MapKind::tabulated, xs.front(), xs.back());
  t.xs_ = std::move(xs);
  t.txs_ = std::move(txs);
  verify_self_map(t);
  return t;
}

ScalarFunction ScalarFunction::expression(const std::string& name) {
  if (name == "x") return ScalarFunction(Kind::linear);
  if (name == "x^2") return ScalarFunction(Kind::square);
  if (name == "x+x^2") return ScalarFunction(Kind::linear_plus_square);
  throw InvalidInput("unknown expression '" + name + "' (expected x, x^2 or x+x^2)");
}

ScalarFunction ScalarFunction::tabulated(Vector xs, Vector values) {
  if (xs.size() != values.size() || xs.empty())
    throw InvalidInput("tabulated function needs matching point/value lists");
  if (!all_finite(xs) || !all_finite(values))
    throw InvalidInput("tabulated function entries must be finite");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw InvalidInput("sample points must be strictly increasing");
  ScalarFunction f(Kind::table);
  f.xs_ = std::move(xs);
  f.values_ = std::move(values);
  return f;
}

double ScalarFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::linear:
      return x;
    case Kind::square:
      return x * x;
    case Kind::linear_plus_square:
      return x + x * x;
    case Kind::table:
      return xs_.size() == 1 ? values_.front() : interpolate(xs_, values_, x);
  }
  throw Error("unreachable function kind");
}

ScalarFunction to_scalar_function(const SampledFunction& f) {
  return ScalarFunction::tabulated(f.points, f.values);
}

SampledFunction det_kirchhoff(const TransportMap& t,
                              const std::function<double(double, double)>& phi, const Vector& xs) {
  SampledFunction out{xs, Vector(xs.size(), 0.0)};
  for (std::size_t i = 0; i < xs.size(); ++i) out.values[i] = phi(xs[i], t(xs[i]));
  return out;
}

SampledFunction det_laplacian(const TransportMap& t, const ScalarFunction& f, const Vector& xs) {
  SampledFunction out{xs, Vector(xs.size(), 0.0)};
  for (std::size_t i = 0; i < xs.size(); ++i) out.values[i] = f(t(xs[i])) - f(xs[i]);
  return out;
}

SampledFunction det_laplacian(const TransportMap& t, const SampledFunction& f) {
  return det_laplacian(t, to_scalar_function(f), f.points);
}

SampledFunction laplacian_power(const TransportMap& t, const ScalarFunction& f, int k,
                                const Vector& xs) {
  if (k < 0) throw InvalidInput("power must be nonnegative");
  SampledFunction out{xs, Vector(xs.size(), 0.0)};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // f along the orbit x, Tx, ..., T^k x
    Vector orbit_values(static_cast<std::size_t>(k) + 1);
    double y = xs[i];
    for (int l = 0; l <= k; ++l) {
      orbit_values[static_cast<std::size_t>(l)] = f(y);
      if (l < k) y = t(y);
    }
    double acc = 0.0;
    double binom = 1.0;  // C(k, l)
    for (int l = 0; l <= k; ++l) {
      const double sign = ((k - l) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom * orbit_values[static_cast<std::size_t>(l)];
      binom = binom * static_cast<double>(k - l) / static_cast<double>(l + 1);
    }
    out.values[i] = acc;
  }
  return out;
}

SampledFunction laplacian_power(const TransportMap& t, const SampledFunction& f, int k) {
  return laplacian_power(t, to_scalar_function(f), k, f.points);
}

DiffusionTrace det_heat_evolve(const TransportMap& t, const ScalarFunction& f, const Vector& xs,
                               const Vector& times, double epsilon) {
  if (xs.empty()) throw InvalidInput("sample grid must be nonempty");
  const Vector ts = normalize_times(times);

  std::vector<std::vector<double>> weights;
  weights.reserve(ts.size());
  std::size_t depth = 0;
  for (double time : ts) {
    weights.push_back(poisson_weights(time, epsilon));
    depth = std::max(depth, weights.back().size());
  }

  Matrix snapshots(ts.size(), xs.size(), 0.0);
  Vector orbit_values(depth);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // One orbit per abscissa, reused by every time point.
    double y = xs[i];
    for (std::size_t l = 0; l < depth; ++l) {
      orbit_values[l] = f(y);
      if (l + 1 < depth) y = t(y);
    }
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      double acc = 0.0;
      for (std::size_t l = 0; l < weights[ti].size(); ++l) acc += weights[ti][l] * orbit_values[l];
      snapshots(ti, i) = acc;
    }
  }

  DiffusionTrace trace;
  trace.times = ts;
  trace.snapshots = std::move(snapshots);
  trace.truncation_level = static_cast<int>(depth) - 1;
  if (ts.size() >= 2) {
    double r = 0.0;
    const std::size_t last = ts.size() - 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
      r = std::max(r, std::abs(trace.snapshots(last, i) - trace.snapshots(last - 1, i)));
    trace.residual = r;
  }
  return trace;
}

DiffusionTrace det_heat_evolve(const TransportMap& t, const SampledFunction& f,
                               const Vector& times, double epsilon) {
  return det_heat_evolve(t, to_scalar_function(f), f.points, times, epsilon);
}

SampledFunction closed_form_negation(const ScalarFunction& f, double t, const Vector& xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw InvalidInput("sample grid must be nonempty");
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(xs[i] + xs[n - 1 - i]) > domain_slack)
      throw AsymmetricGrid("sample grid must be symmetric about 0");
  if (!(t >= 0.0)) throw InvalidTimes("time must be nonnegative");

  const double damping = std::exp(-2.0 * t);
  SampledFunction out{xs, Vector(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    const double fx = f(xs[i]);
    const double fmx = f(-xs[i]);
    const double even = 0.5 * (fx + fmx);
    const double odd = 0.5 * (fx - fmx);
    out.values[i] = even + damping * odd;
  }
  return out;
}

SampledFunction closed_form_negation(const SampledFunction& f, double t) {
  return closed_form_negation(to_scalar_function(f), t, f.points);
}

double orbit_limit(const TransportMap& t, double x, int max_iter, double tolerance) {
  if (max_iter <= 0) throw InvalidInput("max_iter must be positive");
  if (!(tolerance >= 0.0)) throw InvalidInput("tolerance must be nonnegative");
  double y = x;
  for (int i = 0; i < max_iter; ++i) {
    const double next = t(y);
    if (std::abs(next - y) <= tolerance) return next;
    y = next;
  }
  throw NoConvergence("orbit did not stabilize within max_iter iterations");
}

}  // namespace kirchhoff
