#include "ent/types.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ent {

namespace {

std::string format_value(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

double neumaier_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

CountVector::CountVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw std::invalid_argument("count vector needs at least one cell");
    }
    for (std::int64_t y : counts_) {
        if (y < 0) {
            throw std::invalid_argument("counts must be nonnegative, got " + std::to_string(y));
        }
        total_ += y;
        if (y > 0) ++positive_;
        if (y == 1) ++singletons_;
    }
}

FrequencyVector::FrequencyVector(std::vector<double> freqs) : freqs_(std::move(freqs)) {
    if (freqs_.empty()) {
        throw std::invalid_argument("frequency vector needs at least one cell");
    }
    for (double t : freqs_) {
        if (!std::isfinite(t) || t < 0.0) {
            throw std::invalid_argument("frequencies must be finite and nonnegative, got " +
                                        format_value(t));
        }
    }
    const double sum = neumaier_sum(freqs_);
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
        throw std::invalid_argument("frequencies must sum to 1, got " + format_value(sum));
    }
}

FrequencyVector FrequencyVector::uniform(std::size_t p) {
    if (p == 0) {
        throw std::invalid_argument("uniform distribution needs at least one cell");
    }
    return FrequencyVector(std::vector<double>(p, 1.0 / static_cast<double>(p)));
}

PriorSpec::PriorSpec(Mode mode, double a, std::vector<double> cells, std::string label)
    : mode_(mode), a_(a), cells_(std::move(cells)), label_(std::move(label)) {}

PriorSpec PriorSpec::symmetric(double a) {
    if (!std::isfinite(a) || a < 0.0) {
        throw std::invalid_argument("prior pseudocount must be finite and nonnegative");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "a%g", a);
    return PriorSpec(Mode::Symmetric, a, {}, buf);
}

PriorSpec PriorSpec::per_cell(std::vector<double> a) {
    if (a.empty()) {
        throw std::invalid_argument("per-cell prior needs at least one cell");
    }
    for (double v : a) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("prior pseudocounts must be finite and nonnegative");
        }
    }
    return PriorSpec(Mode::PerCell, 0.0, std::move(a), "custom");
}

PriorSpec PriorSpec::jeffreys() {
    return PriorSpec(Mode::Symmetric, 0.5, {}, "jeffreys");
}

PriorSpec PriorSpec::laplace() {
    return PriorSpec(Mode::Symmetric, 1.0, {}, "laplace");
}

PriorSpec PriorSpec::perks() {
    return PriorSpec(Mode::Perks, 0.0, {}, "perks");
}

PriorSpec PriorSpec::minimax() {
    return PriorSpec(Mode::Minimax, 0.0, {}, "minimax");
}

std::optional<double> PriorSpec::symmetric_value(const CountVector& counts) const {
    switch (mode_) {
        case Mode::Symmetric:
            return a_;
        case Mode::Perks:
            return 1.0 / static_cast<double>(counts.size());
        case Mode::Minimax:
            return std::sqrt(static_cast<double>(counts.total())) /
                   static_cast<double>(counts.size());
        case Mode::PerCell:
            return std::nullopt;
    }
    return std::nullopt;
}

const std::vector<double>& PriorSpec::cell_values() const {
    if (mode_ != Mode::PerCell) {
        throw std::invalid_argument("prior is not per-cell");
    }
    return cells_;
}

double PriorSpec::total_mass(const CountVector& counts) const {
    switch (mode_) {
        case Mode::Symmetric:
            return a_ * static_cast<double>(counts.size());
        case Mode::Perks:
            return 1.0;
        case Mode::Minimax:
            return std::sqrt(static_cast<double>(counts.total()));
        case Mode::PerCell:
            return neumaier_sum(cells_);
    }
    return 0.0;
}

bool PriorSpec::is_per_cell() const {
    return mode_ == Mode::PerCell;
}

}  // namespace ent
