#include "ent/shrinkage.hpp"

#include <cmath>
#include <stdexcept>

namespace ent {

namespace {

void require_finite(const std::vector<double>& x, const char* what) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) + " must be finite");
        }
    }
}

}  // namespace

std::vector<double> js_zero_target(const std::vector<double>& x) {
    if (x.size() < 3) {
        throw std::domain_error("zero-target james-stein needs p >= 3");
    }
    require_finite(x, "components");
    double sum_sq = 0.0;
    for (double v : x) sum_sq += v * v;
    if (sum_sq == 0.0) {
        throw std::domain_error("zero-target james-stein undefined for the zero vector");
    }
    const double factor = 1.0 - (static_cast<double>(x.size()) - 2.0) / sum_sq;
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        out[k] = factor * x[k];
    }
    return out;
}

MeanTargetShrink js_mean_target(const std::vector<double>& x) {
    if (x.size() < 4) {
        throw std::domain_error("mean-target james-stein needs p >= 4");
    }
    require_finite(x, "components");
    const double p = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= p;
    double spread = 0.0;
    for (double v : x) {
        const double d = v - mean;
        spread += d * d;
    }
    double lambda = 1.0;
    if (spread > 0.0) {
        lambda = (p - 3.0) / spread;
        if (lambda > 1.0) lambda = 1.0;
    }
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        out[k] = lambda * mean + (1.0 - lambda) * x[k];
    }
    return MeanTargetShrink{std::move(out), lambda};
}

double general_lambda(const GeneralShrinkageInputs& in) {
    const std::size_t p = in.estimates.size();
    if (p == 0) {
        throw std::invalid_argument("general shrinkage needs at least one component");
    }
    if (in.targets.size() != p || in.variances.size() != p || in.covariances.size() != p ||
        in.biases.size() != p) {
        throw std::invalid_argument("general shrinkage inputs must have equal length");
    }
    require_finite(in.estimates, "estimates");
    require_finite(in.targets, "targets");
    require_finite(in.variances, "variances");
    require_finite(in.covariances, "covariances");
    require_finite(in.biases, "biases");
    for (double v : in.variances) {
        if (v < 0.0) {
            throw std::invalid_argument("variances must be nonnegative");
        }
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        const double gap = in.estimates[k] - in.targets[k];
        num += in.variances[k] - in.covariances[k] + in.biases[k] * gap;
        den += gap * gap;
    }
    if (den == 0.0) {
        return 1.0;
    }
    double lambda = num / den;
    if (lambda < 0.0) lambda = 0.0;
    if (lambda > 1.0) lambda = 1.0;
    return lambda;
}

}  // namespace ent
