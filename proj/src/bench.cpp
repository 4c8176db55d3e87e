#include "ent/bench.hpp"

#include "ent/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ent::bench {

namespace {

constexpr double kLogSpaceShapeCutoff = 0.1;

std::string format_metric(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

}  // namespace

std::string ScenarioSpec::label() const {
    switch (kind) {
        case ScenarioKind::DirichletSparse: return "dirichlet-sparse";
        case ScenarioKind::DirichletUniform: return "dirichlet-uniform";
        case ScenarioKind::HalfZeros: return "half-zeros";
        case ScenarioKind::Zipf: return "zipf";
    }
    return "unknown";
}

ScenarioSpec ScenarioSpec::parse(const std::string& name, std::size_t dimension,
                                 double zipf_exponent) {
    ScenarioSpec spec;
    spec.dimension = dimension;
    spec.zipf_exponent = zipf_exponent;
    if (name == "dirichlet-sparse") {
        spec.kind = ScenarioKind::DirichletSparse;
    } else if (name == "dirichlet-uniform") {
        spec.kind = ScenarioKind::DirichletUniform;
    } else if (name == "half-zeros") {
        spec.kind = ScenarioKind::HalfZeros;
    } else if (name == "zipf") {
        spec.kind = ScenarioKind::Zipf;
    } else {
        throw std::invalid_argument("unknown scenario '" + name +
                                    "' (expected dirichlet-sparse, dirichlet-uniform, "
                                    "half-zeros or zipf)");
    }
    validate(spec);
    return spec;
}

void validate(const ScenarioSpec& spec) {
    if (spec.dimension < 2) {
        throw std::invalid_argument("scenario dimension must be at least 2");
    }
    if (spec.kind == ScenarioKind::HalfZeros && spec.dimension % 2 != 0) {
        throw std::invalid_argument("half-zeros scenario needs an even dimension");
    }
    if (spec.kind == ScenarioKind::Zipf &&
        (!std::isfinite(spec.zipf_exponent) || spec.zipf_exponent <= 0.0)) {
        throw std::invalid_argument("zipf exponent must be positive");
    }
}

std::vector<double> dirichlet_symmetric(rng::Engine& rng, double a, std::size_t p,
                                        std::int64_t* underflow) {
    if (!std::isfinite(a) || a <= 0.0) {
        throw std::invalid_argument("dirichlet shape must be positive");
    }
    if (p == 0) {
        throw std::invalid_argument("dirichlet dimension must be positive");
    }
    std::vector<double> theta(p);
    if (a >= kLogSpaceShapeCutoff) {
        double sum = 0.0;
        for (auto& t : theta) {
            t = rng.gamma(a);
            sum += t;
        }
        for (auto& t : theta) t /= sum;
    } else {
        // Tiny shapes: gamma draws underflow in linear space, so draw logs,
        // rescale by the max (which maps to exactly 1), then normalize.
        double peak = -std::numeric_limits<double>::infinity();
        for (auto& t : theta) {
            t = rng.log_gamma(a);
            if (t > peak) peak = t;
        }
        double sum = 0.0;
        for (auto& t : theta) {
            t = std::exp(t - peak);
            sum += t;
        }
        for (auto& t : theta) t /= sum;
    }
    if (underflow != nullptr) {
        for (double t : theta) {
            if (t == 0.0) ++*underflow;
        }
    }
    return theta;
}

FrequencyVector zipf_frequencies(std::size_t p, double exponent) {
    if (p == 0) {
        throw std::invalid_argument("zipf dimension must be positive");
    }
    if (!std::isfinite(exponent) || exponent <= 0.0) {
        throw std::invalid_argument("zipf exponent must be positive");
    }
    std::vector<double> theta(p);
    double sum = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        theta[k] = std::pow(static_cast<double>(k + 1), -exponent);
        sum += theta[k];
    }
    for (auto& t : theta) t /= sum;
    return FrequencyVector(std::move(theta));
}

FrequencyVector draw_true_freqs(const ScenarioSpec& spec, rng::Engine& rng,
                                std::int64_t* underflow) {
    validate(spec);
    switch (spec.kind) {
        case ScenarioKind::DirichletSparse:
            return FrequencyVector(dirichlet_symmetric(rng, kSparseShape, spec.dimension,
                                                       underflow));
        case ScenarioKind::DirichletUniform:
            return FrequencyVector(dirichlet_symmetric(rng, 1.0, spec.dimension, underflow));
        case ScenarioKind::HalfZeros: {
            const std::size_t active = spec.dimension / 2;
            std::vector<double> half = dirichlet_symmetric(rng, 1.0, active, underflow);
            half.resize(spec.dimension, 0.0);  // structural zeros in the second half
            return FrequencyVector(std::move(half));
        }
        case ScenarioKind::Zipf:
            return zipf_frequencies(spec.dimension, spec.zipf_exponent);
    }
    throw std::logic_error("unreachable scenario kind");
}

CountVector draw_counts(const FrequencyVector& theta, std::int64_t n, rng::Engine& rng) {
    if (n < 1) {
        throw std::invalid_argument("sample size must be positive");
    }
    const auto& t = theta.values();
    std::vector<double> cdf(t.size());
    double run = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        run += t[k];
        cdf[k] = run;
        if (t[k] > 0.0) last_positive = k;
    }
    std::vector<std::int64_t> counts(t.size(), 0);
    for (std::int64_t draw = 0; draw < n; ++draw) {
        const double u = rng.uniform01();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cdf.begin());
        if (k >= t.size()) {
            k = last_positive;  // u above the rounded total mass
        }
        ++counts[k];
    }
    return CountVector(std::move(counts));
}

BenchResult run_bench(const BenchConfig& config) {
    if (config.runs < 1) {
        throw std::invalid_argument("benchmark needs at least one run");
    }
    if (config.threads < 0) {
        throw std::invalid_argument("thread count must be nonnegative");
    }
    for (const auto& spec : config.scenarios) {
        validate(spec);
    }
    for (std::int64_t n : config.sample_sizes) {
        if (n < 1) {
            throw std::invalid_argument("sample sizes must be positive");
        }
    }

    BenchResult result;
    result.seed = config.seed;
    result.engine = rng::kEngineName;
    if (config.estimators.empty()) {
        return result;  // nothing to benchmark, header-only report
    }
    const std::size_t n_est = config.estimators.size();
    const auto runs = static_cast<std::size_t>(config.runs);

    struct RunRecord {
        double true_entropy = 0.0;
        std::int64_t underflow = 0;
        std::vector<double> entropy;   // per estimator
        std::vector<double> freq_se;   // per estimator, squared frequency error
        std::vector<char> ok;          // per estimator
        std::vector<double> seconds;   // per estimator
    };

    for (const auto& spec : config.scenarios) {
        for (std::int64_t n : config.sample_sizes) {
            std::vector<RunRecord> records(runs);
            detail::parallel_for(runs, config.threads, [&](std::size_t r) {
                RunRecord& rec = records[r];
                rec.entropy.assign(n_est, 0.0);
                rec.freq_se.assign(n_est, 0.0);
                rec.ok.assign(n_est, 0);
                rec.seconds.assign(n_est, 0.0);
                auto rng = rng::substream(
                    config.seed,
                    {static_cast<std::uint64_t>(spec.kind), spec.dimension,
                     static_cast<std::uint64_t>(n), r});
                const FrequencyVector theta = draw_true_freqs(spec, rng, &rec.underflow);
                rec.true_entropy = entropy_plugin(theta);
                const CountVector counts = draw_counts(theta, n, rng);
                for (std::size_t e = 0; e < n_est; ++e) {
                    const auto started = std::chrono::steady_clock::now();
                    try {
                        const auto evaluation = config.estimators[e].evaluate(counts);
                        rec.entropy[e] = evaluation.entropy;
                        if (evaluation.freqs) {
                            double se = 0.0;
                            for (std::size_t k = 0; k < theta.size(); ++k) {
                                const double d = (*evaluation.freqs)[k] - theta[k];
                                se += d * d;
                            }
                            rec.freq_se[e] = se;
                        }
                        rec.ok[e] = 1;
                    } catch (const std::exception&) {
                        rec.ok[e] = 0;  // recorded below; run dropped from this cell
                    }
                    rec.seconds[e] =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                            .count();
                }
            });

            // Reduce in run order so that thread scheduling cannot reorder
            // floating point accumulation.
            TruthStats truth;
            truth.scenario = spec.label();
            truth.n = n;
            double true_sum = 0.0;
            for (const auto& rec : records) {
                true_sum += rec.true_entropy;
                truth.underflow_cells += rec.underflow;
            }
            truth.entropy_mean = true_sum / static_cast<double>(runs);
            result.truths.push_back(truth);

            for (std::size_t e = 0; e < n_est; ++e) {
                CellStats cell;
                cell.scenario = spec.label();
                cell.n = n;
                cell.estimator = config.estimators[e].label();
                cell.has_freq_mse = config.estimators[e].produces_freqs();
                double se_sum = 0.0;
                double err_sum = 0.0;
                double err_sq_sum = 0.0;
                for (const auto& rec : records) {
                    cell.seconds += rec.seconds[e];
                    if (!rec.ok[e]) {
                        ++cell.runs_failed;
                        continue;
                    }
                    ++cell.runs_used;
                    const double err = rec.entropy[e] - rec.true_entropy;
                    err_sum += err;
                    err_sq_sum += err * err;
                    se_sum += rec.freq_se[e];
                }
                if (cell.runs_used > 0) {
                    const double used = static_cast<double>(cell.runs_used);
                    cell.entropy_bias = err_sum / used;
                    cell.entropy_mse = err_sq_sum / used;
                    cell.freq_mse = cell.has_freq_mse ? se_sum / used : 0.0;
                } else {
                    cell.entropy_bias = std::numeric_limits<double>::quiet_NaN();
                    cell.entropy_mse = std::numeric_limits<double>::quiet_NaN();
                    cell.freq_mse = std::numeric_limits<double>::quiet_NaN();
                }
                result.cells.push_back(std::move(cell));
            }
        }
    }
    return result;
}

void write_report(const BenchResult& result, std::ostream& out) {
    out << "# rng=" << result.engine << "\n";
    out << "# seed=" << result.seed << "\n";
    out << "scenario,n,estimator,metric,value\n";
    if (result.truths.empty()) {
        return;
    }
    const std::size_t per_point = result.cells.size() / result.truths.size();
    std::size_t next_cell = 0;
    for (const auto& truth : result.truths) {
        out << truth.scenario << ',' << truth.n << ",truth,entropy_mean,"
            << format_metric(truth.entropy_mean) << "\n";
        out << truth.scenario << ',' << truth.n << ",truth,underflow_cells,"
            << truth.underflow_cells << "\n";
        for (std::size_t e = 0; e < per_point && next_cell < result.cells.size();
             ++e, ++next_cell) {
            const CellStats& cell = result.cells[next_cell];
            const std::string prefix = cell.scenario + ',' + std::to_string(cell.n) + ',' +
                                       cell.estimator + ',';
            if (cell.has_freq_mse) {
                out << prefix << "freq_mse," << format_metric(cell.freq_mse) << "\n";
            }
            out << prefix << "entropy_mse," << format_metric(cell.entropy_mse) << "\n";
            out << prefix << "entropy_bias," << format_metric(cell.entropy_bias) << "\n";
            if (cell.runs_failed > 0) {
                out << prefix << "runs_failed," << cell.runs_failed << "\n";
            }
        }
    }
}

std::vector<std::int64_t> default_sample_grid() {
    return {10, 30, 100, 300, 1000, 3000, 10000};
}

}  // namespace ent::bench
