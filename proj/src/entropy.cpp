#include "ent/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ent {

double entropy_plugin(const FrequencyVector& freqs) {
    double h = 0.0;
    for (double t : freqs.values()) {
        if (t > 0.0) {
            h -= t * std::log(t);
        }
    }
    return h;
}

double entropy_ml(const CountVector& counts) {
    return entropy_plugin(estimate_ml(counts));
}

double miller_madow_correction(const CountVector& counts) {
    if (counts.total() == 0) {
        throw std::invalid_argument("miller-madow correction needs at least one observation");
    }
    return (static_cast<double>(counts.positive_cells()) - 1.0) /
           (2.0 * static_cast<double>(counts.total()));
}

double entropy_miller_madow(const CountVector& counts) {
    return entropy_ml(counts) + miller_madow_correction(counts);
}

double entropy_bayes(const CountVector& counts, const PriorSpec& prior) {
    return entropy_plugin(estimate_bayes(counts, prior));
}

double entropy_chao_shen(const CountVector& counts) {
    const std::int64_t total = counts.total();
    if (total == 0) {
        throw std::invalid_argument("chao-shen entropy needs at least one observation");
    }
    const double n = static_cast<double>(total);
    std::int64_t m1 = counts.singletons();
    if (m1 == total) {
        m1 = total - 1;
    }
    const double coverage = 1.0 - static_cast<double>(m1) / n;
    double h = 0.0;
    for (std::int64_t y : counts.values()) {
        if (y == 0) continue;
        const double theta = coverage * (static_cast<double>(y) / n);
        const double inclusion = 1.0 - std::pow(1.0 - theta, n);
        h -= theta * std::log(theta) / inclusion;
    }
    return h;
}

ShrinkEntropy entropy_shrink(const CountVector& counts) {
    ShrinkageEstimate est = estimate_shrink(counts);
    const double h = entropy_plugin(est.freqs);
    return ShrinkEntropy{h, std::move(est)};
}

EntropyEstimator::EntropyEstimator(Kind kind) : kind_(kind) {
    if (kind_ == Kind::Bayes) {
        throw std::invalid_argument("bayes estimator needs a prior");
    }
}

EntropyEstimator::EntropyEstimator(Kind kind, PriorSpec prior)
    : kind_(kind), prior_(std::move(prior)) {
    if (kind_ != Kind::Bayes) {
        throw std::invalid_argument("only the bayes estimator takes a prior");
    }
}

EntropyEstimator EntropyEstimator::parse(const std::string& label) {
    if (label == "ml") return EntropyEstimator(Kind::Ml);
    if (label == "miller-madow") return EntropyEstimator(Kind::MillerMadow);
    if (label == "chao-shen") return EntropyEstimator(Kind::ChaoShen);
    if (label == "shrink") return EntropyEstimator(Kind::Shrink);
    if (label == "bayes-jeffreys") return EntropyEstimator(Kind::Bayes, PriorSpec::jeffreys());
    if (label == "bayes-laplace") return EntropyEstimator(Kind::Bayes, PriorSpec::laplace());
    if (label == "bayes-perks") return EntropyEstimator(Kind::Bayes, PriorSpec::perks());
    if (label == "bayes-minimax") return EntropyEstimator(Kind::Bayes, PriorSpec::minimax());
    throw std::invalid_argument(
        "unknown estimator '" + label +
        "' (expected ml, miller-madow, bayes-jeffreys, bayes-laplace, bayes-perks, "
        "bayes-minimax, chao-shen or shrink)");
}

const PriorSpec& EntropyEstimator::prior() const {
    if (!prior_) {
        throw std::invalid_argument("estimator has no prior");
    }
    return *prior_;
}

std::string EntropyEstimator::label() const {
    switch (kind_) {
        case Kind::Ml: return "ml";
        case Kind::MillerMadow: return "miller-madow";
        case Kind::ChaoShen: return "chao-shen";
        case Kind::Shrink: return "shrink";
        case Kind::Bayes: return "bayes-" + prior_->label();
    }
    return "unknown";
}

bool EntropyEstimator::produces_freqs() const {
    return kind_ == Kind::Ml || kind_ == Kind::Bayes || kind_ == Kind::Shrink;
}

EntropyEstimator::Evaluation EntropyEstimator::evaluate(const CountVector& counts) const {
    switch (kind_) {
        case Kind::Ml: {
            FrequencyVector f = estimate_ml(counts);
            const double h = entropy_plugin(f);
            return Evaluation{h, std::move(f), std::nullopt};
        }
        case Kind::Bayes: {
            FrequencyVector f = estimate_bayes(counts, *prior_);
            const double h = entropy_plugin(f);
            return Evaluation{h, std::move(f), std::nullopt};
        }
        case Kind::Shrink: {
            ShrinkageEstimate est = estimate_shrink(counts);
            const double h = entropy_plugin(est.freqs);
            return Evaluation{h, std::move(est.freqs), est.lambda};
        }
        case Kind::MillerMadow:
            return Evaluation{entropy_miller_madow(counts), std::nullopt, std::nullopt};
        case Kind::ChaoShen:
            return Evaluation{entropy_chao_shen(counts), std::nullopt, std::nullopt};
    }
    throw std::logic_error("unreachable estimator kind");
}

double EntropyEstimator::entropy(const CountVector& counts) const {
    switch (kind_) {
        case Kind::Ml: return entropy_ml(counts);
        case Kind::Bayes: return entropy_bayes(counts, *prior_);
        case Kind::Shrink: return entropy_shrink(counts).value;
        case Kind::MillerMadow: return entropy_miller_madow(counts);
        case Kind::ChaoShen: return entropy_chao_shen(counts);
    }
    throw std::logic_error("unreachable estimator kind");
}

std::vector<EntropyEstimator> standard_estimators() {
    std::vector<EntropyEstimator> all;
    all.emplace_back(EntropyEstimator::Kind::Ml);
    all.emplace_back(EntropyEstimator::Kind::MillerMadow);
    all.emplace_back(EntropyEstimator::Kind::Bayes, PriorSpec::jeffreys());
    all.emplace_back(EntropyEstimator::Kind::Bayes, PriorSpec::laplace());
    all.emplace_back(EntropyEstimator::Kind::Bayes, PriorSpec::perks());
    all.emplace_back(EntropyEstimator::Kind::Bayes, PriorSpec::minimax());
    all.emplace_back(EntropyEstimator::Kind::ChaoShen);
    all.emplace_back(EntropyEstimator::Kind::Shrink);
    return all;
}

}  // namespace ent
