#pragma once

#include "kirchhoff/coupling.hpp"
#include "kirchhoff/matrix.hpp"
#include "kirchhoff/trace.hpp"

namespace kirchhoff {

// Weighted graph on n >= 2 vertices: symmetric nonnegative weights with
// zero diagonal and total mass 1. The weight matrix doubles as the
// coupling pi(i,j) = w(i,j).
class WeightedGraph {
 public:
  // With normalize = true a positive total weight is rescaled to 1;
  // otherwise a total off by more than mass_tolerance is rejected.
  explicit WeightedGraph(Matrix w, bool normalize = false);

  std::size_t size() const { return w_.rows(); }
  const Matrix& weights() const { return w_; }

 private:
  Matrix w_;
};

// Row-stochastic matrix.
class MarkovMatrix {
 public:
  explicit MarkovMatrix(Matrix p);

  std::size_t size() const { return p_.rows(); }
  const Matrix& values() const { return p_; }

 private:
  Matrix p_;
};

// mu_i = sum_j w(i,j). Throws DegenerateVertex on an isolated vertex.
DiscreteMeasure vertex_measure(const WeightedGraph& g);

// psi_i = (1/mu_i) sum_j w(i,j) phi(i,j)
PointFunction graph_kirchhoff(const WeightedGraph& g, const EdgeFunction& phi);

// (D^{-1} W - I) f, evaluated as (1/mu_i) sum_j w(i,j) (f_j - f_i).
PointFunction graph_laplacian_apply(const WeightedGraph& g, const PointFunction& f);

// p(i,j) = w(i,j) / mu_i
MarkovMatrix transition_matrix(const WeightedGraph& g);

// Heat semigroup e^{t(P-I)} f by uniformization: Poisson-weighted powers
// of the transition matrix, truncated so the neglected tail mass is at
// most epsilon. Each requested time is an independent series evaluation.
DiffusionTrace heat_evolve(const WeightedGraph& g, const PointFunction& f, const Vector& times,
                           double epsilon);

// Stationary row m of the transition matrix, by power iteration on the
// left action, iterated until ||m P - m||_1 <= tolerance. Requires the
// chain to be regular (certified by positive off-diagonal weights with
// n >= 3, or by is_regular_chain); throws NotRegular otherwise and
// NoConvergence past max_iter.
PointFunction steady_state(const WeightedGraph& g, double tolerance, int max_iter);

// True iff some power p^k, k <= (n-1)^2 + 1, is entrywise positive.
// Decided on the boolean support matrix.
bool is_regular_chain(const MarkovMatrix& p);

// True iff ||Delta f||_inf <= tolerance (mean value identity).
bool is_harmonic(const WeightedGraph& g, const PointFunction& f, double tolerance);

}  // namespace kirchhoff
