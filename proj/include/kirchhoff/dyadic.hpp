#pragma once

#include "kirchhoff/coupling.hpp"
#include "kirchhoff/matrix.hpp"
#include "kirchhoff/trace.hpp"

namespace kirchhoff {

// Dyadic ultrametric on [0,1): the length of the smallest standard dyadic
// interval containing both points (0 when x == y). Throws DomainError for
// arguments outside [0,1).
double dyadic_delta(double x, double y);

// Coefficients (alpha_0 .. alpha_Ja) of a kernel K(x,y) = sum_j alpha_j 2^j
// on the ball delta(x,y) <= 2^{-j}, held together with the grid resolution
// (cell width 2^{-resolution}). Construction enforces
//   - sum_j alpha_j = 1 (unit row integrals),
//   - partial sums sum_{l<=j} alpha_l 2^l >= 0 (kernel nonnegativity),
//   - Ja <= resolution (coefficients are never silently truncated).
class DyadicKernelSpec {
 public:
  DyadicKernelSpec(Vector alpha, int resolution);

  const Vector& alpha() const { return alpha_; }
  int resolution() const { return resolution_; }
  int max_scale() const { return static_cast<int>(alpha_.size()) - 1; }

  // alpha_j, zero beyond the stored range.
  double coefficient(int j) const;

 private:
  Vector alpha_;
  int resolution_;
};

// Cell averages of a function on the 2^J standard dyadic cells.
struct DyadicGridFunction {
  int resolution = 0;
  Vector values;
};

// Haar coefficients: the global mean plus one detail per dyadic interval
// of scale j < J (detail[j] has 2^j entries).
struct HaarSpectrum {
  int resolution = 0;
  double mean = 0.0;
  std::vector<Vector> detail;
};

// Kernel values per cell pair at a fixed resolution; cell integrals carry
// the weight 2^{-J}. Construction verifies the Markov property.
class DiscreteKernel {
 public:
  DiscreteKernel(Matrix values, int resolution);

  int resolution() const { return resolution_; }
  std::size_t cells() const { return values_.rows(); }
  double cell_weight() const;
  const Matrix& values() const { return values_; }

 private:
  Matrix values_;
  int resolution_;
};

// Evaluates the kernel on the cell grid. Distances between distinct cells
// come from the shared prefix of the J-bit cell indices (exact integer
// arithmetic); the diagonal uses the full coefficient sum.
DiscreteKernel kernel_matrix(const DyadicKernelSpec& spec);

// Both weighted row and column sums equal 1 within 1e-10 and entries are
// nonnegative (within rounding slack).
bool markov_kernel_check(const Matrix& values, int resolution);
bool markov_kernel_check(const DiscreteKernel& k);

HaarSpectrum haar_forward(const DyadicGridFunction& f);
DyadicGridFunction haar_inverse(const HaarSpectrum& s);

// Eigenvalue of the kernel operator on Haar functions whose supporting
// interval has length 2^{-support_scale}: sum of alpha_j for
// j >= support_scale + 1. The constant function has eigenvalue 1.
double haar_eigenvalue(const DyadicKernelSpec& spec, int support_scale);

// (K f)(a) = sum_b k(a,b) f(b) 2^{-J}
DyadicGridFunction kernel_apply(const DiscreteKernel& k, const DyadicGridFunction& f);

// psi(a) = sum_b k(a,b) phi(a,b) 2^{-J}
DyadicGridFunction kirchhoff_markov(const DiscreteKernel& k, const EdgeFunction& phi);

// Heat solution through the Haar resolution of the kernel operator: the
// mean is preserved and each detail at scale j decays by
// e^{t(lambda_j - 1)}. Exact up to rounding; no series truncation.
DiffusionTrace spectral_heat_solve(const DyadicKernelSpec& spec, const DyadicGridFunction& f,
                                   const Vector& times);

}  // namespace kirchhoff
