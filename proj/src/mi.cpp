#include "ent/mi.hpp"

#include "ent/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ent {

namespace {

// Slack for sums that are nonnegative by construction but may round below 0.
constexpr double kNegativeMiTolerance = 1e-12;

// Linear-interpolation quantile on sorted data (the convention the FD rule
// here is frozen to; other quantile styles give different K on edge cases).
double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

DiscretizationScheme equal_width_scheme(double lo, double hi, int levels) {
    DiscretizationScheme scheme;
    scheme.levels = levels;
    scheme.edges.resize(static_cast<std::size_t>(levels) + 1);
    const double width = (hi - lo) / static_cast<double>(levels);
    for (int i = 0; i <= levels; ++i) {
        scheme.edges[static_cast<std::size_t>(i)] = lo + width * static_cast<double>(i);
    }
    scheme.edges.front() = lo;
    scheme.edges.back() = hi;
    for (std::size_t i = 1; i < scheme.edges.size(); ++i) {
        if (!(scheme.edges[i - 1] < scheme.edges[i])) {
            throw std::domain_error("bin width underflows the data range; too many levels");
        }
    }
    return scheme;
}

double entropy_of_raw(const std::vector<double>& probs) {
    double h = 0.0;
    for (double t : probs) {
        if (t > 0.0) h -= t * std::log(t);
    }
    return h;
}

}  // namespace

ExpressionMatrix::ExpressionMatrix(std::vector<std::string> names,
                                   std::vector<std::vector<double>> values)
    : names_(std::move(names)), values_(std::move(values)) {
    if (values_.size() < 2) {
        throw std::invalid_argument("expression matrix needs at least two profiles");
    }
    if (names_.size() != values_.size()) {
        throw std::invalid_argument("profile name count does not match the rows");
    }
    const std::size_t n = values_.front().size();
    if (n < 2) {
        throw std::invalid_argument("expression matrix needs at least two samples");
    }
    for (const auto& row : values_) {
        if (row.size() != n) {
            throw std::invalid_argument("profiles must all have the same length");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("expression values must be finite");
            }
        }
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty()) {
            throw std::invalid_argument("profile names must be non-empty");
        }
        if (!seen.insert(name).second) {
            throw std::invalid_argument("duplicate profile name '" + name + "'");
        }
    }
}

DiscretizationScheme fd_scheme(std::span<const double> pooled) {
    std::vector<double> sorted(pooled.begin(), pooled.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t distinct = sorted.empty() ? 0 : 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] != sorted[i - 1]) ++distinct;
    }
    if (distinct < 4) {
        throw std::domain_error("freedman-diaconis binning needs at least 4 distinct values");
    }
    const double q1 = quantile_sorted(sorted, 0.25);
    const double q3 = quantile_sorted(sorted, 0.75);
    const double iqr = q3 - q1;
    if (!(iqr > 0.0)) {
        throw std::domain_error("freedman-diaconis binning needs a positive interquartile range");
    }
    const double n = static_cast<double>(sorted.size());
    const double width = 2.0 * iqr / std::cbrt(n);
    const double range = sorted.back() - sorted.front();
    const double raw_bins = std::ceil(range / width);
    if (raw_bins > static_cast<double>(kMaxLevels)) {
        throw std::domain_error("freedman-diaconis rule asks for more than " +
                                std::to_string(kMaxLevels) + " levels; data too heavy-tailed");
    }
    const int levels = static_cast<int>(raw_bins);
    if (levels < 2) {
        throw std::domain_error("freedman-diaconis rule yields a single bin; data too tight");
    }
    return equal_width_scheme(sorted.front(), sorted.back(), levels);
}

DiscretizationScheme uniform_scheme(double lo, double hi, int levels) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw std::invalid_argument("scheme needs finite bounds with lo < hi");
    }
    if (levels < 2) {
        throw std::invalid_argument("scheme needs at least 2 levels");
    }
    if (levels > kMaxLevels) {
        throw std::invalid_argument("scheme limited to " + std::to_string(kMaxLevels) + " levels");
    }
    return equal_width_scheme(lo, hi, levels);
}

int bin_of(const DiscretizationScheme& scheme, double value) {
    if (scheme.levels < 1 || scheme.edges.size() != static_cast<std::size_t>(scheme.levels) + 1) {
        throw std::invalid_argument("malformed discretization scheme");
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument("cannot bin a non-finite value");
    }
    if (!(value > scheme.edges.front())) {
        return 0;  // includes out-of-range values below the first edge
    }
    if (!(value < scheme.edges.back())) {
        return scheme.levels - 1;  // last interval closed; clamp above
    }
    const auto it = std::upper_bound(scheme.edges.begin(), scheme.edges.end(), value);
    return static_cast<int>(it - scheme.edges.begin()) - 1;
}

DiscretizedMatrix discretize(const ExpressionMatrix& matrix, const DiscretizationScheme& scheme) {
    DiscretizedMatrix out;
    out.names = matrix.names();
    out.levels = scheme.levels;
    out.rows.resize(matrix.profiles());
    for (std::size_t g = 0; g < matrix.profiles(); ++g) {
        const auto& row = matrix.profile(g);
        out.rows[g].resize(row.size());
        for (std::size_t s = 0; s < row.size(); ++s) {
            out.rows[g][s] = bin_of(scheme, row[s]);
        }
    }
    return out;
}

ContingencyTable::ContingencyTable(int levels) : levels_(levels) {
    if (levels_ < 1) {
        throw std::invalid_argument("contingency table needs at least one level");
    }
    if (levels_ > kMaxLevels) {
        throw std::invalid_argument("contingency table limited to " +
                                    std::to_string(kMaxLevels) + " levels");
    }
    cells_.assign(static_cast<std::size_t>(levels_) * static_cast<std::size_t>(levels_), 0);
}

ContingencyTable ContingencyTable::from_pair(std::span<const int> x, std::span<const int> y,
                                             int levels) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("paired samples must have equal length");
    }
    if (x.empty()) {
        throw std::invalid_argument("paired samples must be non-empty");
    }
    ContingencyTable table(levels);
    for (std::size_t s = 0; s < x.size(); ++s) {
        table.add(x[s], y[s]);
    }
    return table;
}

std::int64_t ContingencyTable::at(int i, int j) const {
    if (i < 0 || i >= levels_ || j < 0 || j >= levels_) {
        throw std::invalid_argument("cell index out of range");
    }
    return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(levels_) +
                  static_cast<std::size_t>(j)];
}

void ContingencyTable::add(int i, int j, std::int64_t count) {
    if (i < 0 || i >= levels_ || j < 0 || j >= levels_) {
        throw std::invalid_argument("cell index out of range");
    }
    if (count < 0) {
        throw std::invalid_argument("cell increments must be nonnegative");
    }
    cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(levels_) +
           static_cast<std::size_t>(j)] += count;
}

std::int64_t ContingencyTable::total() const {
    std::int64_t n = 0;
    for (std::int64_t c : cells_) n += c;
    return n;
}

CountVector ContingencyTable::flatten() const {
    return CountVector(cells_);
}

ContingencyTable ContingencyTable::transposed() const {
    ContingencyTable t(levels_);
    for (int i = 0; i < levels_; ++i) {
        for (int j = 0; j < levels_; ++j) {
            t.cells_[static_cast<std::size_t>(j) * static_cast<std::size_t>(levels_) +
                     static_cast<std::size_t>(i)] =
                cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(levels_) +
                       static_cast<std::size_t>(j)];
        }
    }
    return t;
}

double mi_from_table(const ContingencyTable& table, const EntropyEstimator& estimator) {
    if (!estimator.produces_freqs()) {
        throw std::invalid_argument("mutual information needs a frequency-producing estimator "
                                    "(ml, bayes or shrink)");
    }
    if (table.total() == 0) {
        throw std::invalid_argument("mutual information needs a non-empty table");
    }
    // Pick a fixed orientation of (table, transpose) so that both orderings
    // of a pair run the identical float program and agree bit for bit.
    ContingencyTable flipped = table.transposed();
    const ContingencyTable& canon =
        std::lexicographical_compare(flipped.cells().begin(), flipped.cells().end(),
                                     table.cells().begin(), table.cells().end())
            ? flipped
            : table;

    const auto evaluation = estimator.evaluate(canon.flatten());
    const FrequencyVector& joint = *evaluation.freqs;
    const int k = canon.levels();
    std::vector<double> row_margin(static_cast<std::size_t>(k), 0.0);
    std::vector<double> col_margin(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double t = joint[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                                   static_cast<std::size_t>(j)];
            row_margin[static_cast<std::size_t>(i)] += t;
            col_margin[static_cast<std::size_t>(j)] += t;
        }
    }
    const double h_joint = evaluation.entropy;
    const double h_row = entropy_of_raw(row_margin);
    const double h_col = entropy_of_raw(col_margin);
    double mi = h_row + h_col - h_joint;
    if (mi < 0.0 && mi >= -kNegativeMiTolerance) {
        mi = 0.0;  // nonnegative by construction; absorb rounding only
    }
    return mi;
}

double gaussian_mi(double rho) {
    if (!std::isfinite(rho)) {
        throw std::invalid_argument("correlation must be finite");
    }
    if (!(std::abs(rho) < 1.0)) {
        throw std::domain_error("gaussian mi defined only for |rho| < 1");
    }
    return -0.5 * std::log1p(-rho * rho);
}

MiGraph mi_all_pairs(const DiscretizedMatrix& matrix, const EntropyEstimator& estimator,
                     int threads) {
    const std::size_t g = matrix.rows.size();
    if (g < 2) {
        throw std::invalid_argument("all-pairs mi needs at least two profiles");
    }
    if (matrix.names.size() != g) {
        throw std::invalid_argument("profile name count does not match the rows");
    }
    const std::size_t n = matrix.rows.front().size();
    for (const auto& row : matrix.rows) {
        if (row.size() != n) {
            throw std::invalid_argument("profiles must all have the same length");
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(g * (g - 1) / 2);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    std::vector<double> mi(pairs.size(), 0.0);
    detail::parallel_for(pairs.size(), threads, [&](std::size_t idx) {
        const auto [i, j] = pairs[idx];
        const auto table =
            ContingencyTable::from_pair(matrix.rows[i], matrix.rows[j], matrix.levels);
        mi[idx] = mi_from_table(table, estimator);
    });

    MiGraph graph(matrix.names);
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        graph.set_weight(pairs[idx].first, pairs[idx].second, mi[idx]);
    }
    return graph;
}

MiGraph mi_all_pairs(const ExpressionMatrix& matrix, const DiscretizationScheme& scheme,
                     const EntropyEstimator& estimator, int threads) {
    return mi_all_pairs(discretize(matrix, scheme), estimator, threads);
}

}  // namespace ent
