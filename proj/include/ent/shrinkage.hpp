// Classic James-Stein estimators for a vector of normal means, and the
// general variance/covariance/bias form of the optimal shrinkage intensity
// that the frequency shrinkage specializes.
#pragma once

#include <vector>

namespace ent {

// x shrunk toward the origin by 1 - (p - 2) / ||x||^2. The intensity is kept
// as is (no positive-part rule), so components can flip sign. Needs p >= 3
// and a nonzero x.
std::vector<double> js_zero_target(const std::vector<double>& x);

struct MeanTargetShrink {
    std::vector<double> values;
    double lambda = 0.0;
};

// Shrinkage toward the common mean with intensity (p - 3) / sum (x_k - xbar)^2,
// truncated to [0, 1]. A zero spread yields lambda = 1. Needs p >= 4.
MeanTargetShrink js_mean_target(const std::vector<double>& x);

// Inputs for the general optimal intensity: per-component estimates, targets,
// variances of the estimates, covariances between estimate and target, and
// biases of the estimates.
struct GeneralShrinkageInputs {
    std::vector<double> estimates;
    std::vector<double> targets;
    std::vector<double> variances;
    std::vector<double> covariances;
    std::vector<double> biases;
};

// sum (var_k - cov_k + bias_k * gap_k) / sum gap_k^2 with gap_k =
// estimate_k - target_k, clamped to [0, 1]. A zero denominator yields 1.
double general_lambda(const GeneralShrinkageInputs& in);

}  // namespace ent
