// Cell frequency estimators for multinomial count data: maximum likelihood,
// Dirichlet-Bayes posterior means, the James-Stein style shrinkage estimate
// toward a target distribution, and Good-Turing coverage weights.
#pragma once

#include "ent/types.hpp"

#include <vector>

namespace ent {

FrequencyVector estimate_ml(const CountVector& counts);

// Posterior mean under a Dirichlet prior, (y_k + a_k) / (n + A).
FrequencyVector estimate_bayes(const CountVector& counts, const PriorSpec& prior);

// Unbiased variance of the ML frequencies, t_k (1 - t_k) / (n - 1).
std::vector<double> ml_variance(const CountVector& counts);

// Estimated optimal shrinkage intensity toward `target`, truncated at 1.
// A zero denominator (ML already sits on the target) also yields 1.
double shrinkage_lambda(const CountVector& counts, const FrequencyVector& target);

// Shrinkage frequencies lambda * target + (1 - lambda) * ml. The first two
// overloads estimate lambda from the data; the third uses the given
// intensity, which must lie in [0, 1].
ShrinkageEstimate estimate_shrink(const CountVector& counts);
ShrinkageEstimate estimate_shrink(const CountVector& counts, const FrequencyVector& target);
ShrinkageEstimate estimate_shrink(const CountVector& counts, const FrequencyVector& target,
                                  double lambda);

// Dirichlet prior mass A that reproduces a given shrinkage intensity
// exactly, A = n lambda / (1 - lambda), and its first-order approximation
// A = n lambda. The exact form has no finite value at lambda = 1.
double equivalent_prior_mass(const CountVector& counts, double lambda);
double pseudo_prior_mass(const CountVector& counts, double lambda);

// Good-Turing coverage-adjusted frequencies (1 - m1/n) * y_k / n. Not a
// probability vector: the entries do not sum to 1, and when every
// observation is a singleton they are all zero.
std::vector<double> good_turing(const CountVector& counts);

}  // namespace ent
