#include "ent/freq.hpp"

#include <cmath>
#include <stdexcept>

namespace ent {

FrequencyVector estimate_ml(const CountVector& counts) {
    if (counts.total() == 0) {
        throw std::invalid_argument("ml frequencies need at least one observation");
    }
    const double n = static_cast<double>(counts.total());
    std::vector<double> t(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        t[k] = static_cast<double>(counts[k]) / n;
    }
    return FrequencyVector(std::move(t));
}

FrequencyVector estimate_bayes(const CountVector& counts, const PriorSpec& prior) {
    if (prior.is_per_cell() && prior.cell_values().size() != counts.size()) {
        throw std::invalid_argument("per-cell prior dimension does not match the counts");
    }
    const double n = static_cast<double>(counts.total());
    const double mass = prior.total_mass(counts);
    if (n + mass <= 0.0) {
        throw std::invalid_argument("bayes frequencies undefined for n = 0 and a zero-mass prior");
    }
    std::vector<double> t(counts.size());
    if (auto a = prior.symmetric_value(counts)) {
        for (std::size_t k = 0; k < counts.size(); ++k) {
            t[k] = (static_cast<double>(counts[k]) + *a) / (n + mass);
        }
    } else {
        const auto& cells = prior.cell_values();
        for (std::size_t k = 0; k < counts.size(); ++k) {
            t[k] = (static_cast<double>(counts[k]) + cells[k]) / (n + mass);
        }
    }
    return FrequencyVector(std::move(t));
}

std::vector<double> ml_variance(const CountVector& counts) {
    if (counts.total() < 2) {
        throw std::invalid_argument("ml variance needs n >= 2");
    }
    const double n = static_cast<double>(counts.total());
    std::vector<double> v(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double t = static_cast<double>(counts[k]) / n;
        v[k] = t * (1.0 - t) / (n - 1.0);
    }
    return v;
}

double shrinkage_lambda(const CountVector& counts, const FrequencyVector& target) {
    if (counts.size() != target.size()) {
        throw std::invalid_argument("shrinkage target dimension does not match the counts");
    }
    if (counts.total() < 2) {
        throw std::invalid_argument("shrinkage intensity needs n >= 2");
    }
    const double n = static_cast<double>(counts.total());
    double sum_sq = 0.0;
    double gap_sq = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double t = static_cast<double>(counts[k]) / n;
        sum_sq += t * t;
        const double gap = target[k] - t;
        gap_sq += gap * gap;
    }
    const double den = (n - 1.0) * gap_sq;
    if (den == 0.0) {
        return 1.0;  // ML already coincides with the target
    }
    double num = 1.0 - sum_sq;
    if (num < 0.0) num = 0.0;  // a sum of variances; negative only by rounding
    const double lambda = num / den;
    return lambda > 1.0 ? 1.0 : lambda;
}

ShrinkageEstimate estimate_shrink(const CountVector& counts) {
    return estimate_shrink(counts, FrequencyVector::uniform(counts.size()));
}

ShrinkageEstimate estimate_shrink(const CountVector& counts, const FrequencyVector& target) {
    return estimate_shrink(counts, target, shrinkage_lambda(counts, target));
}

ShrinkageEstimate estimate_shrink(const CountVector& counts, const FrequencyVector& target,
                                  double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("shrinkage intensity must lie in [0, 1]");
    }
    if (counts.size() != target.size()) {
        throw std::invalid_argument("shrinkage target dimension does not match the counts");
    }
    const FrequencyVector ml = estimate_ml(counts);
    std::vector<double> t(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        t[k] = lambda * target[k] + (1.0 - lambda) * ml[k];
    }
    return ShrinkageEstimate{FrequencyVector(std::move(t)), lambda, target};
}

double equivalent_prior_mass(const CountVector& counts, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("shrinkage intensity must lie in [0, 1]");
    }
    if (lambda == 1.0) {
        throw std::domain_error("lambda = 1 has no finite equivalent prior mass");
    }
    return static_cast<double>(counts.total()) * lambda / (1.0 - lambda);
}

double pseudo_prior_mass(const CountVector& counts, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("shrinkage intensity must lie in [0, 1]");
    }
    return static_cast<double>(counts.total()) * lambda;
}

std::vector<double> good_turing(const CountVector& counts) {
    if (counts.total() == 0) {
        throw std::invalid_argument("good-turing weights need at least one observation");
    }
    const double n = static_cast<double>(counts.total());
    const double coverage = 1.0 - static_cast<double>(counts.singletons()) / n;
    std::vector<double> g(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        g[k] = coverage * (static_cast<double>(counts[k]) / n);
    }
    return g;
}

}  // namespace ent
