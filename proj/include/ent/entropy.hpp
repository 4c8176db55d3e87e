// Shannon entropy estimators for multinomial counts. All entropies are in
// nats (natural logarithm).
#pragma once

#include "ent/freq.hpp"
#include "ent/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ent {

// Plugin entropy of a probability vector, with 0 log 0 taken as 0.
double entropy_plugin(const FrequencyVector& freqs);

double entropy_ml(const CountVector& counts);

// (m - 1) / (2n) where m is the number of occupied cells.
double miller_madow_correction(const CountVector& counts);
double entropy_miller_madow(const CountVector& counts);

double entropy_bayes(const CountVector& counts, const PriorSpec& prior);

// Coverage-adjusted entropy: Good-Turing frequencies weighted by the
// Horvitz-Thompson inclusion probability 1 - (1 - theta)^n. When every
// observation is a singleton, m1 is replaced by n - 1 to keep the coverage
// estimate away from zero.
double entropy_chao_shen(const CountVector& counts);

struct ShrinkEntropy {
    double value = 0.0;
    ShrinkageEstimate estimate;
};

// Plugin entropy of the shrinkage frequencies (uniform target).
ShrinkEntropy entropy_shrink(const CountVector& counts);

// Uniform handle over the estimator family, used by the MI pipeline, the
// benchmark harness and the command line front end.
class EntropyEstimator {
public:
    enum class Kind { Ml, MillerMadow, Bayes, ChaoShen, Shrink };

    explicit EntropyEstimator(Kind kind);              // any kind except Bayes
    EntropyEstimator(Kind kind, PriorSpec prior);      // Bayes
    static EntropyEstimator parse(const std::string& label);

    Kind kind() const { return kind_; }
    const PriorSpec& prior() const;
    std::string label() const;
    // ml, bayes and shrink also yield a frequency vector; miller-madow and
    // chao-shen are entropy-only corrections.
    bool produces_freqs() const;

    struct Evaluation {
        double entropy = 0.0;
        std::optional<FrequencyVector> freqs;
        std::optional<double> lambda;   // present for shrink
    };
    Evaluation evaluate(const CountVector& counts) const;
    double entropy(const CountVector& counts) const;

private:
    Kind kind_;
    std::optional<PriorSpec> prior_;
};

// The eight estimators benchmarked side by side: ml, miller-madow, the four
// Dirichlet presets, chao-shen and shrink.
std::vector<EntropyEstimator> standard_estimators();

}  // namespace ent
