// Discretization of continuous measurement profiles, pairwise contingency
// tables, and mutual information from jointly estimated cell frequencies.
#pragma once

#include "ent/entropy.hpp"
#include "ent/network.hpp"
#include "ent/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ent {

// Largest bin count a discretization scheme may request. Pair tables hold
// K^2 cells, so a runaway K (heavy-tailed data under the FD rule) would
// exhaust memory long before producing a usable estimate.
inline constexpr int kMaxLevels = 1024;

// G named measurement profiles of equal length (variables in rows).
class ExpressionMatrix {
public:
    ExpressionMatrix(std::vector<std::string> names, std::vector<std::vector<double>> values);

    std::size_t profiles() const { return values_.size(); }
    std::size_t samples() const { return values_.front().size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<double>& profile(std::size_t g) const { return values_[g]; }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> values_;
};

// Global equal-width bins shared by all profiles: levels + 1 strictly
// increasing edges. Intervals are right-open, the last interval is closed,
// and out-of-range values clamp to the boundary bins.
struct DiscretizationScheme {
    int levels = 0;
    std::vector<double> edges;
};

// Freedman-Diaconis bin count over the pooled values: width
// h = 2 IQR N^(-1/3) with linear-interpolation quartiles, K = ceil(range/h).
DiscretizationScheme fd_scheme(std::span<const double> pooled);

DiscretizationScheme uniform_scheme(double lo, double hi, int levels);

int bin_of(const DiscretizationScheme& scheme, double value);

struct DiscretizedMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<int>> rows;
    int levels = 0;
};

DiscretizedMatrix discretize(const ExpressionMatrix& matrix, const DiscretizationScheme& scheme);

// K x K joint counts for one variable pair, stored row-major.
class ContingencyTable {
public:
    explicit ContingencyTable(int levels);
    static ContingencyTable from_pair(std::span<const int> x, std::span<const int> y, int levels);

    int levels() const { return levels_; }
    std::int64_t at(int i, int j) const;
    void add(int i, int j, std::int64_t count = 1);
    std::int64_t total() const;
    const std::vector<std::int64_t>& cells() const { return cells_; }
    CountVector flatten() const;
    ContingencyTable transposed() const;

private:
    int levels_;
    std::vector<std::int64_t> cells_;
};

// H(X) + H(Y) - H(X,Y) with the joint estimated on the flattened table and
// the marginals summed from that estimated joint. Only frequency-producing
// estimators (ml, bayes, shrink) are accepted. The table orientation is
// canonicalized first, so mi(T) == mi(transpose(T)) holds bit for bit.
double mi_from_table(const ContingencyTable& table, const EntropyEstimator& estimator);

// Normal-theory reference, -log(1 - rho^2) / 2. Validation aid only.
double gaussian_mi(double rho);

// MI for every unordered pair of profiles. threads == 0 picks the hardware
// concurrency; results are bit-identical for any thread count.
MiGraph mi_all_pairs(const DiscretizedMatrix& matrix, const EntropyEstimator& estimator,
                     int threads = 1);
MiGraph mi_all_pairs(const ExpressionMatrix& matrix, const DiscretizationScheme& scheme,
                     const EntropyEstimator& estimator, int threads = 1);

}  // namespace ent
