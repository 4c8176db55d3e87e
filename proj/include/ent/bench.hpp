// Monte Carlo harness comparing the entropy estimators: draw true frequency
// vectors under four scenarios, sample multinomial counts, evaluate every
// configured estimator on the same counts, and aggregate MSE and bias.
#pragma once

#include "ent/entropy.hpp"
#include "ent/rng.hpp"
#include "ent/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ent::bench {

// Dirichlet shape of the sparse scenario.
inline constexpr double kSparseShape = 0.0007;

// Enumerator order is part of the reproducibility contract: the per-run
// substream is keyed on the numeric kind, so reordering would change draws.
enum class ScenarioKind { DirichletSparse, DirichletUniform, HalfZeros, Zipf };

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::DirichletSparse;
    std::size_t dimension = 1000;
    double zipf_exponent = 1.0;  // used by the Zipf scenario only

    std::string label() const;
    static ScenarioSpec parse(const std::string& name, std::size_t dimension,
                              double zipf_exponent);
};

void validate(const ScenarioSpec& spec);

struct BenchConfig {
    std::vector<ScenarioSpec> scenarios;
    std::vector<std::int64_t> sample_sizes;
    int runs = 1000;
    std::vector<EntropyEstimator> estimators;
    std::uint64_t seed = 42;
    int threads = 1;  // 0 picks the hardware concurrency
};

struct CellStats {
    std::string scenario;
    std::int64_t n = 0;
    std::string estimator;
    bool has_freq_mse = false;
    double freq_mse = 0.0;
    double entropy_mse = 0.0;
    double entropy_bias = 0.0;
    int runs_used = 0;
    int runs_failed = 0;
    double seconds = 0.0;  // wall clock; deliberately kept out of the report
};

struct TruthStats {
    std::string scenario;
    std::int64_t n = 0;
    double entropy_mean = 0.0;
    std::int64_t underflow_cells = 0;  // theta cells clamped to zero while sampling
};

// truths holds one entry per (scenario, n) grid point in configuration
// order; cells holds the estimators of that grid point in configuration
// order, so cells.size() == truths.size() * estimators.size().
struct BenchResult {
    std::uint64_t seed = 0;
    std::string engine;
    std::vector<TruthStats> truths;
    std::vector<CellStats> cells;
};

// Symmetric Dirichlet draw. Tiny shapes are drawn in log space and rescaled
// by the maximum; cells whose exp underflows to 0 are counted into
// *underflow and the rest renormalized.
std::vector<double> dirichlet_symmetric(rng::Engine& rng, double a, std::size_t p,
                                        std::int64_t* underflow = nullptr);

// theta_k proportional to k^(-exponent), k = 1..p.
FrequencyVector zipf_frequencies(std::size_t p, double exponent);

FrequencyVector draw_true_freqs(const ScenarioSpec& spec, rng::Engine& rng,
                                std::int64_t* underflow = nullptr);

CountVector draw_counts(const FrequencyVector& theta, std::int64_t n, rng::Engine& rng);

BenchResult run_bench(const BenchConfig& config);

// Long-format CSV: scenario,n,estimator,metric,value at 12 significant
// digits, preceded by `# rng=` and `# seed=` header lines. Byte-identical
// for identical configs regardless of thread count.
void write_report(const BenchResult& result, std::ostream& out);

std::vector<std::int64_t> default_sample_grid();  // 10 ... 10000, the study grid

}  // namespace ent::bench
