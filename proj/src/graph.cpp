#include "kirchhoff/graph.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/uniformization.hpp"

namespace kirchhoff {

WeightedGraph::WeightedGraph(Matrix w, bool normalize) : w_(std::move(w)) {
  if (!w_.square() || w_.rows() < 2) throw InvalidInput("graph needs a square weight matrix, n >= 2");
  const std::size_t n = w_.rows();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (w_(i, i) != 0.0) throw InvalidInput("diagonal weights must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = w_(i, j);
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("edge weights must be nonnegative and finite");
      if (v != w_(j, i)) throw InvalidInput("edge weights must be symmetric");
      total += v;
    }
  }
  if (std::abs(total - 1.0) > mass_tolerance) {
    if (!normalize) throw InvalidInput("total edge weight must be 1 (pass normalize to rescale)");
    if (!(total > 0.0)) throw InvalidInput("cannot normalize a zero-weight graph");
    for (double& v : w_.data()) v /= total;
  }
}

MarkovMatrix::MarkovMatrix(Matrix p) : p_(std::move(p)) {
  if (!p_.square() || p_.rows() == 0) throw InvalidInput("transition matrix must be square");
  for (std::size_t i = 0; i < p_.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p_.cols(); ++j) {
      if (!(p_(i, j) >= 0.0) || !std::isfinite(p_(i, j)))
        throw InvalidInput("transition probabilities must be nonnegative and finite");
      row += p_(i, j);
    }
    if (std::abs(row - 1.0) > mass_tolerance) throw InvalidInput("transition rows must sum to 1");
  }
}

DiscreteMeasure vertex_measure(const WeightedGraph& g) {
  const std::size_t n = g.size();
  Vector mu(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mu[i] += g.weights()(i, j);
    if (mu[i] <= 0.0) throw DegenerateVertex("vertex " + std::to_string(i) + " has zero measure");
  }
  return DiscreteMeasure::unnormalized(std::move(mu));
}

PointFunction graph_kirchhoff(const WeightedGraph& g, const EdgeFunction& phi) {
  const std::size_t n = g.size();
  if (phi.rows() != n || phi.cols() != n) throw ShapeMismatch("phi shape does not match graph");
  if (!all_finite(phi)) throw InvalidInput("phi entries must be finite");
  const DiscreteMeasure mu = vertex_measure(g);
  PointFunction psi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += g.weights()(i, j) * phi(i, j);
    psi[i] = acc / mu[i];
  }
  return psi;
}

PointFunction graph_laplacian_apply(const WeightedGraph& g, const PointFunction& f) {
  const std::size_t n = g.size();
  if (f.size() != n) throw ShapeMismatch("f size does not match graph");
  if (!all_finite(f)) throw InvalidInput("f entries must be finite");
  const DiscreteMeasure mu = vertex_measure(g);
  PointFunction out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += g.weights()(i, j) * (f[j] - f[i]);
    out[i] = acc / mu[i];
  }
  return out;
}

MarkovMatrix transition_matrix(const WeightedGraph& g) {
  const std::size_t n = g.size();
  const DiscreteMeasure mu = vertex_measure(g);
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = g.weights()(i, j) / mu[i];
  return MarkovMatrix(std::move(p));
}

DiffusionTrace heat_evolve(const WeightedGraph& g, const PointFunction& f, const Vector& times,
                           double epsilon) {
  const std::size_t n = g.size();
  if (f.size() != n) throw ShapeMismatch("f size does not match graph");
  if (!all_finite(f)) throw InvalidInput("f entries must be finite");
  const Vector ts = normalize_times(times);
  const MarkovMatrix p = transition_matrix(g);

  // One truncated Poisson series per time; the powers P^l f are shared
  // across times in a single sweep.
  std::vector<std::vector<double>> weights;
  weights.reserve(ts.size());
  std::size_t depth = 0;
  for (double t : ts) {
    weights.push_back(poisson_weights(t, epsilon));
    depth = std::max(depth, weights.back().size());
  }

  Matrix snapshots(ts.size(), n, 0.0);
  Vector power = f;  // P^l f
  for (std::size_t l = 0; l < depth; ++l) {
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      if (l >= weights[ti].size()) continue;
      const double w = weights[ti][l];
      for (std::size_t i = 0; i < n; ++i) snapshots(ti, i) += w * power[i];
    }
    if (l + 1 < depth) power = matvec(p.values(), power);
  }

  DiffusionTrace trace;
  trace.times = ts;
  trace.snapshots = std::move(snapshots);
  trace.truncation_level = static_cast<int>(depth) - 1;
  if (ts.size() >= 2) {
    double r = 0.0;
    const std::size_t last = ts.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
      r = std::max(r, std::abs(trace.snapshots(last, i) - trace.snapshots(last - 1, i)));
    trace.residual = r;
  }
  return trace;
}

bool is_regular_chain(const MarkovMatrix& p) {
  const std::size_t n = p.size();
  using BoolMatrix = std::vector<std::vector<char>>;
  BoolMatrix support(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) support[i][j] = p.values()(i, j) > 0.0;

  auto multiply = [n](const BoolMatrix& a, const BoolMatrix& b) {
    BoolMatrix c(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (b[k][j]) c[i][j] = 1;
    return c;
  };
  auto all_positive = [n](const BoolMatrix& a) {
    for (const auto& row : a)
      for (char v : row)
        if (!v) return false;
    return true;
  };

  // Positivity of powers is monotone for stochastic matrices, so squaring
  // up past the Wielandt bound (n-1)^2 + 1 decides primitivity.
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  BoolMatrix acc = support;
  for (std::size_t k = 1; k < 2 * bound; k *= 2) {
    if (all_positive(acc)) return true;
    acc = multiply(acc, acc);
  }
  return all_positive(acc);
}

PointFunction steady_state(const WeightedGraph& g, double tolerance, int max_iter) {
  if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (max_iter <= 0) throw InvalidInput("max_iter must be positive");
  const std::size_t n = g.size();
  const MarkovMatrix p = transition_matrix(g);

  bool positive_off_diagonal = n >= 3;
  for (std::size_t i = 0; i < n && positive_off_diagonal; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !(g.weights()(i, j) > 0.0)) {
        positive_off_diagonal = false;
        break;
      }
  if (!positive_off_diagonal && !is_regular_chain(p))
    throw NotRegular("the induced Markov chain is not regular; no limit matrix exists");

  Vector m(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < max_iter; ++iter) {
    Vector next = vecmat(m, p.values());
    double total = 0.0;
    for (double v : next) total += v;
    for (double& v : next) v /= total;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += std::abs(next[i] - m[i]);
    m = std::move(next);
    if (diff <= tolerance) return m;
  }
  throw NoConvergence("power iteration did not reach tolerance within max_iter steps");
}

bool is_harmonic(const WeightedGraph& g, const PointFunction& f, double tolerance) {
  return max_abs(graph_laplacian_apply(g, f)) <= tolerance;
}

}  // namespace kirchhoff
