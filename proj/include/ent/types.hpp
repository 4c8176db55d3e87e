// Core value types shared across the toolkit: validated count and frequency
// vectors, Dirichlet prior specifications, and the result of a shrinkage fit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ent {

// Allowed deviation of a probability vector's sum from 1.
inline constexpr double kSimplexTolerance = 1e-12;

// Compensated (Neumaier) summation. Used wherever a sum feeds a strict
// numeric invariant; plain accumulation would let the check drift with the
// number of cells rather than with the mass being summed.
double neumaier_sum(std::span<const double> values);

// Observed cell counts y_1..y_p. The dimension p counts all cells, including
// empty ones; zeros are ordinary cells, not missing data.
class CountVector {
public:
    explicit CountVector(std::vector<std::int64_t> counts);

    std::size_t size() const { return counts_.size(); }
    std::int64_t total() const { return total_; }
    std::int64_t positive_cells() const { return positive_; }
    std::int64_t singletons() const { return singletons_; }
    std::int64_t operator[](std::size_t k) const { return counts_[k]; }
    const std::vector<std::int64_t>& values() const { return counts_; }

private:
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
    std::int64_t positive_ = 0;
    std::int64_t singletons_ = 0;
};

// A point on the probability simplex: nonnegative entries summing to 1
// within kSimplexTolerance. Validated on construction.
class FrequencyVector {
public:
    explicit FrequencyVector(std::vector<double> freqs);
    static FrequencyVector uniform(std::size_t p);

    std::size_t size() const { return freqs_.size(); }
    double operator[](std::size_t k) const { return freqs_[k]; }
    const std::vector<double>& values() const { return freqs_; }

private:
    std::vector<double> freqs_;
};

// Dirichlet prior for the Bayes frequency estimators. The usual symmetric
// presets are provided; "perks" depends on the dimension and "minimax" on the
// sample size, so both are resolved against the counts at estimation time.
class PriorSpec {
public:
    static PriorSpec symmetric(double a);
    static PriorSpec per_cell(std::vector<double> a);
    static PriorSpec jeffreys();   // a_k = 1/2
    static PriorSpec laplace();    // a_k = 1
    static PriorSpec perks();      // a_k = 1/p
    static PriorSpec minimax();    // a_k = sqrt(n)/p

    // Pseudocount shared by all cells once resolved against the counts, or
    // nullopt for a per-cell prior.
    std::optional<double> symmetric_value(const CountVector& counts) const;
    const std::vector<double>& cell_values() const;
    double total_mass(const CountVector& counts) const;   // A = sum of a_k
    bool is_per_cell() const;
    const std::string& label() const { return label_; }

private:
    enum class Mode { Symmetric, PerCell, Perks, Minimax };

    PriorSpec(Mode mode, double a, std::vector<double> cells, std::string label);

    Mode mode_;
    double a_ = 0.0;
    std::vector<double> cells_;
    std::string label_;
};

// Convex combination of a data-driven estimate and a shrinkage target,
// together with the intensity that produced it.
struct ShrinkageEstimate {
    FrequencyVector freqs;
    double lambda = 0.0;
    FrequencyVector target;
};

}  // namespace ent
