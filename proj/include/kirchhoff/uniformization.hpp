#pragma once

#include <vector>

namespace kirchhoff {

// Poisson(t) weights e^{-t} t^l / l!, truncated once the cumulative mass
// reaches 1 - epsilon. Evaluating e^{t(P-I)}f as the weighted sum of
// P^l f then carries an error of at most epsilon * ||f||_inf for any
// stochastic P.
std::vector<double> poisson_weights(double t, double epsilon);

}  // namespace kirchhoff
