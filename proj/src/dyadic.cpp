#include "kirchhoff/dyadic.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

constexpr double kernel_negative_slack = 1e-12;
constexpr double markov_sum_tolerance = 1e-10;

std::size_t cells_at(int resolution) { return std::size_t{1} << resolution; }

// Partial sum sum_{l <= j} alpha_l 2^l (full sum once j passes the stored
// range).
double prefix_pow2_sum(const Vector& alpha, int j) {
  double acc = 0.0;
  double pow2 = 1.0;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    if (static_cast<int>(l) > j) break;
    acc += alpha[l] * pow2;
    pow2 *= 2.0;
  }
  return acc;
}

}  // namespace

double dyadic_delta(double x, double y) {
  if (!(x >= 0.0) || !(x < 1.0) || !(y >= 0.0) || !(y < 1.0))
    throw DomainError("dyadic_delta arguments must lie in [0,1)");
  if (x == y) return 0.0;
  // Rescale both points onto their common dyadic cell until they split;
  // doubling and subtracting the half are exact in binary floating point,
  // and two distinct doubles split after finitely many steps.
  double length = 1.0;
  for (;;) {
    const bool x_left = x < 0.5;
    const bool y_left = y < 0.5;
    if (x_left != y_left) return length;
    length *= 0.5;
    x = 2.0 * x - (x_left ? 0.0 : 1.0);
    y = 2.0 * y - (y_left ? 0.0 : 1.0);
  }
}

DyadicKernelSpec::DyadicKernelSpec(Vector alpha, int resolution)
    : alpha_(std::move(alpha)), resolution_(resolution) {
  if (alpha_.empty()) throw InvalidInput("kernel coefficients must be nonempty");
  if (!all_finite(alpha_)) throw InvalidInput("kernel coefficients must be finite");
  if (resolution_ < 0) throw InvalidInput("resolution must be nonnegative");
  if (resolution_ > 30) throw InvalidInput("resolution too large for dense cell grids");
  if (max_scale() > resolution_)
    throw InvalidInput("coefficient scales exceed the grid resolution; refusing to truncate");
  double total = 0.0;
  for (double a : alpha_) total += a;
  if (std::abs(total - 1.0) > mass_tolerance)
    throw InvalidInput("kernel coefficients must sum to 1");
  for (int j = 0; j <= max_scale(); ++j)
    if (prefix_pow2_sum(alpha_, j) < -kernel_negative_slack)
      throw NegativeKernel("negative kernel value at scale " + std::to_string(j));
}

double DyadicKernelSpec::coefficient(int j) const {
  if (j < 0 || j > max_scale()) return 0.0;
  return alpha_[static_cast<std::size_t>(j)];
}

DiscreteKernel::DiscreteKernel(Matrix values, int resolution)
    : values_(std::move(values)), resolution_(resolution) {
  if (resolution_ < 0 || resolution_ > 30) throw InvalidInput("bad kernel resolution");
  const std::size_t n = cells_at(resolution_);
  if (values_.rows() != n || values_.cols() != n)
    throw InvalidInput("kernel matrix shape does not match resolution");
  if (!markov_kernel_check(values_, resolution_))
    throw InvalidInput("kernel matrix is not a Markov kernel");
}

double DiscreteKernel::cell_weight() const { return std::ldexp(1.0, -resolution_); }

DiscreteKernel kernel_matrix(const DyadicKernelSpec& spec) {
  const int res = spec.resolution();
  const std::size_t n = cells_at(res);

  // Partial sums per shared-prefix depth; depth res means same cell.
  Vector by_depth(static_cast<std::size_t>(res) + 1, 0.0);
  for (int m = 0; m <= res; ++m) {
    by_depth[static_cast<std::size_t>(m)] = prefix_pow2_sum(spec.alpha(), m);
    if (by_depth[static_cast<std::size_t>(m)] < -kernel_negative_slack)
      throw NegativeKernel("negative kernel value at depth " + std::to_string(m));
  }

  Matrix k(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    k(a, a) = by_depth[static_cast<std::size_t>(res)];
    for (std::size_t b = a + 1; b < n; ++b) {
      // Shared prefix length of the res-bit cell indices.
      const int highest = std::bit_width(a ^ b) - 1;
      const int depth = res - 1 - highest;
      const double v = by_depth[static_cast<std::size_t>(depth)];
      k(a, b) = v;
      k(b, a) = v;
    }
  }
  return DiscreteKernel(std::move(k), res);
}

bool markov_kernel_check(const Matrix& values, int resolution) {
  const std::size_t n = cells_at(resolution);
  if (values.rows() != n || values.cols() != n) return false;
  const double cell = std::ldexp(1.0, -resolution);
  for (double v : values.data())
    if (!(v >= -kernel_negative_slack) || !std::isfinite(v)) return false;
  for (std::size_t a = 0; a < n; ++a) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      row += values(a, b);
      col += values(b, a);
    }
    if (std::abs(row * cell - 1.0) > markov_sum_tolerance) return false;
    if (std::abs(col * cell - 1.0) > markov_sum_tolerance) return false;
  }
  return true;
}

bool markov_kernel_check(const DiscreteKernel& k) {
  return markov_kernel_check(k.values(), k.resolution());
}

HaarSpectrum haar_forward(const DyadicGridFunction& f) {
  const int res = f.resolution;
  if (res < 0 || f.values.size() != cells_at(res))
    throw ShapeMismatch("grid function length must be 2^resolution");

  HaarSpectrum s;
  s.resolution = res;
  s.detail.resize(static_cast<std::size_t>(res));
  Vector averages = f.values;
  for (int j = res - 1; j >= 0; --j) {
    const std::size_t m = cells_at(j);
    // <f, h_I> = 2^{-j/2-1} (left average - right average)
    const double coeff_scale = 0.5 * std::sqrt(std::ldexp(1.0, -j));
    Vector next(m);
    Vector& details = s.detail[static_cast<std::size_t>(j)];
    details.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double left = averages[2 * k];
      const double right = averages[2 * k + 1];
      next[k] = 0.5 * (left + right);
      details[k] = coeff_scale * (left - right);
    }
    averages = std::move(next);
  }
  s.mean = averages[0];
  return s;
}

DyadicGridFunction haar_inverse(const HaarSpectrum& s) {
  const int res = s.resolution;
  if (res < 0 || s.detail.size() != static_cast<std::size_t>(res))
    throw ShapeMismatch("spectrum scales must match resolution");

  Vector averages{s.mean};
  for (int j = 0; j < res; ++j) {
    const std::size_t m = cells_at(j);
    const Vector& details = s.detail[static_cast<std::size_t>(j)];
    if (details.size() != m) throw ShapeMismatch("detail length must be 2^scale");
    const double amplitude = std::sqrt(std::ldexp(1.0, j));  // h_I height
    Vector next(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      const double bump = details[k] * amplitude;
      next[2 * k] = averages[k] + bump;
      next[2 * k + 1] = averages[k] - bump;
    }
    averages = std::move(next);
  }
  return DyadicGridFunction{res, std::move(averages)};
}

double haar_eigenvalue(const DyadicKernelSpec& spec, int support_scale) {
  if (support_scale < 0 || support_scale >= spec.resolution())
    throw ScaleOutOfRange("support scale must lie in [0, resolution)");
  double acc = 0.0;
  for (int j = support_scale + 1; j <= spec.max_scale(); ++j) acc += spec.coefficient(j);
  return acc;
}

DyadicGridFunction kernel_apply(const DiscreteKernel& k, const DyadicGridFunction& f) {
  if (f.resolution != k.resolution() || f.values.size() != k.cells())
    throw ShapeMismatch("grid function resolution does not match kernel");
  const double cell = k.cell_weight();
  Vector out = matvec(k.values(), f.values);
  for (double& v : out) v *= cell;
  return DyadicGridFunction{k.resolution(), std::move(out)};
}

DyadicGridFunction kirchhoff_markov(const DiscreteKernel& k, const EdgeFunction& phi) {
  const std::size_t n = k.cells();
  if (phi.rows() != n || phi.cols() != n) throw ShapeMismatch("phi shape does not match kernel");
  if (!all_finite(phi)) throw InvalidInput("phi entries must be finite");
  const double cell = k.cell_weight();
  Vector out(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    double acc = 0.0;
    for (std::size_t b = 0; b < n; ++b) acc += k.values()(a, b) * phi(a, b);
    out[a] = acc * cell;
  }
  return DyadicGridFunction{k.resolution(), std::move(out)};
}

DiffusionTrace spectral_heat_solve(const DyadicKernelSpec& spec, const DyadicGridFunction& f,
                                   const Vector& times) {
  const int res = spec.resolution();
  if (f.resolution != res || f.values.size() != cells_at(res))
    throw ShapeMismatch("grid function resolution does not match kernel spec");
  if (!all_finite(f.values)) throw InvalidInput("f entries must be finite");
  const Vector ts = normalize_times(times);

  const HaarSpectrum spectrum = haar_forward(f);
  Vector decay_rate(static_cast<std::size_t>(res), 0.0);  // lambda_j - 1
  for (int j = 0; j < res; ++j)
    decay_rate[static_cast<std::size_t>(j)] = haar_eigenvalue(spec, j) - 1.0;

  Matrix snapshots(ts.size(), f.values.size());
  for (std::size_t ti = 0; ti < ts.size(); ++ti) {
    const double t = ts[ti];
    if (t == 0.0) {
      for (std::size_t i = 0; i < f.values.size(); ++i) snapshots(ti, i) = f.values[i];
      continue;
    }
    HaarSpectrum damped = spectrum;
    for (int j = 0; j < res; ++j) {
      const double factor = std::exp(t * decay_rate[static_cast<std::size_t>(j)]);
      for (double& d : damped.detail[static_cast<std::size_t>(j)]) d *= factor;
    }
    const DyadicGridFunction u = haar_inverse(damped);
    for (std::size_t i = 0; i < u.values.size(); ++i) snapshots(ti, i) = u.values[i];
  }

  DiffusionTrace trace;
  trace.times = ts;
  trace.snapshots = std::move(snapshots);
  trace.truncation_level = 0;  // spectral evaluation, no series cut

  bool strictly_decaying = true;
  for (double r : decay_rate)
    if (!(r < 0.0)) strictly_decaying = false;
  if (res == 0) strictly_decaying = true;
  if (strictly_decaying) {
    trace.steady = Vector(f.values.size(), spectrum.mean);
    double r = 0.0;
    const std::size_t last = ts.size() - 1;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      r = std::max(r, std::abs(trace.snapshots(last, i) - spectrum.mean));
    trace.residual = r;
  } else if (ts.size() >= 2) {
    double r = 0.0;
    const std::size_t last = ts.size() - 1;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      r = std::max(r, std::abs(trace.snapshots(last, i) - trace.snapshots(last - 1, i)));
    trace.residual = r;
  }
  return trace;
}

}  // namespace kirchhoff
