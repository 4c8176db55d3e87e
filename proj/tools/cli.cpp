#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ent/bench.hpp"
#include "ent/csv.hpp"
#include "ent/entropy.hpp"
#include "ent/freq.hpp"
#include "ent/mi.hpp"
#include "ent/network.hpp"
#include "ent/shrinkage.hpp"
#include "ent/types.hpp"

namespace ent::cli {
namespace {

std::string formatted(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
    return buf;
}

CountVector load_counts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    return read_counts(in);
}

ExpressionMatrix load_expression(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    return read_expression_csv(in, header);
}

PriorSpec parse_prior(const std::string& text) {
    if (text == "jeffreys") return PriorSpec::jeffreys();
    if (text == "laplace") return PriorSpec::laplace();
    if (text == "perks") return PriorSpec::perks();
    if (text == "minimax") return PriorSpec::minimax();
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !(value >= 0.0) || !std::isfinite(value))
        throw CLI::ValidationError(
            "--prior: expected jeffreys, laplace, perks, minimax or a nonnegative number, got '" +
            text + "'");
    return PriorSpec::symmetric(value);
}

EntropyEstimator make_estimator(const std::string& kind, const std::string& prior) {
    using Kind = EntropyEstimator::Kind;
    if (kind == "ml") return EntropyEstimator(Kind::Ml);
    if (kind == "miller-madow") return EntropyEstimator(Kind::MillerMadow);
    if (kind == "chao-shen") return EntropyEstimator(Kind::ChaoShen);
    if (kind == "shrink") return EntropyEstimator(Kind::Shrink);
    if (kind == "bayes") return EntropyEstimator(Kind::Bayes, parse_prior(prior));
    throw CLI::ValidationError("--estimator: unknown estimator '" + kind + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::stringstream stream(text);
    while (std::getline(stream, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        items.push_back(item.substr(begin, end - begin + 1));
    }
    return items;
}

std::vector<std::int64_t> parse_sample_grid(const std::string& text) {
    std::vector<std::int64_t> grid;
    for (const auto& item : split_list(text)) {
        std::int64_t n = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
        if (ec != std::errc() || ptr != item.data() + item.size() || n < 1)
            throw CLI::ValidationError("--n-grid: expected positive integers, got '" + item + "'");
        grid.push_back(n);
    }
    if (grid.empty()) throw CLI::ValidationError("--n-grid: list is empty");
    return grid;
}

std::vector<EntropyEstimator> parse_estimator_list(const std::string& text) {
    if (text == "all") return standard_estimators();
    std::vector<EntropyEstimator> estimators;
    for (const auto& label : split_list(text)) {
        try {
            estimators.push_back(EntropyEstimator::parse(label));
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError(std::string("--estimators: ") + e.what());
        }
    }
    return estimators;
}

std::vector<bench::ScenarioSpec> parse_scenarios(const std::string& text, std::size_t dimension,
                                                 double zipf_exponent) {
    std::vector<std::string> labels;
    if (text == "all") {
        labels = {"dirichlet-sparse", "dirichlet-uniform", "half-zeros", "zipf"};
    } else {
        labels = split_list(text);
    }
    if (labels.empty()) throw CLI::ValidationError("--scenario: list is empty");
    std::vector<bench::ScenarioSpec> specs;
    for (const auto& label : labels) {
        try {
            specs.push_back(bench::ScenarioSpec::parse(label, dimension, zipf_exponent));
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError(std::string("--scenario: ") + e.what());
        }
    }
    return specs;
}

// Shared by discretize, mi and network: pick the binning scheme from flags.
DiscretizationScheme choose_scheme(const ExpressionMatrix& matrix, bool use_fd, int levels) {
    std::vector<double> pooled;
    pooled.reserve(matrix.profiles() * matrix.samples());
    for (std::size_t g = 0; g < matrix.profiles(); ++g) {
        const auto& row = matrix.profile(g);
        pooled.insert(pooled.end(), row.begin(), row.end());
    }
    if (use_fd || levels == 0) return fd_scheme(pooled);
    const auto [lo_it, hi_it] = std::minmax_element(pooled.begin(), pooled.end());
    if (!(*lo_it < *hi_it))
        throw std::domain_error("expression values are constant; nothing to discretize");
    return uniform_scheme(*lo_it, *hi_it, levels);
}

// Writes either to --out or to the provided stdout stream.
class OutputTarget {
  public:
    OutputTarget(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw io_error("cannot open '" + path + "' for writing");
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

struct CountCommandOpts {
    std::string input;
    std::string estimator = "shrink";
    std::string prior = "jeffreys";
    std::string target = "uniform";
    int precision = 6;
};

struct MatrixCommandOpts {
    std::string input;
    std::string out;
    bool header = false;
    bool use_fd = false;
    int levels = 0;
    std::string estimator = "shrink";
    std::string prior = "jeffreys";
    int precision = 6;
    int threads = 1;
    bool upper = false;
    double epsilon = 0.0;
    std::string format = "dot";
};

struct BenchOpts {
    std::string scenario = "all";
    std::size_t dimension = 1000;
    std::string n_grid = "10,30,100,300,1000,3000,10000";
    int runs = 1000;
    std::string estimators = "all";
    std::uint64_t seed = 42;
    double zipf_exponent = 1.0;
    int threads = 1;
    std::string out;
    std::string config;
};

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

template <typename T>
T config_number(const std::string& key, const std::string& value, T lo, T hi) {
    T parsed{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size() || parsed < lo || parsed > hi)
        throw CLI::ValidationError("--config: bad value for '" + key + "': '" + value + "'");
    return parsed;
}

// Flat key=value defaults for the bench flags. Values given on the command
// line keep priority, which is what the `count(...) == 0` guards implement.
void apply_bench_config(BenchOpts& opts, const CLI::App& cmd) {
    std::ifstream in(opts.config);
    if (!in) throw io_error("cannot open '" + opts.config + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = trimmed(line);
        if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config: line " + std::to_string(lineno) +
                                       " is not key=value");
        const std::string key = trimmed(entry.substr(0, eq));
        const std::string value = trimmed(entry.substr(eq + 1));
        static constexpr const char* kKeys[] = {"scenario", "p",    "n-grid",        "runs",
                                                "estimators", "seed", "zipf-exponent", "threads",
                                                "out"};
        if (std::find_if(std::begin(kKeys), std::end(kKeys),
                         [&](const char* k) { return key == k; }) == std::end(kKeys))
            throw CLI::ValidationError("--config: unknown key '" + key + "' on line " +
                                       std::to_string(lineno));
        if (cmd.count("--" + key) > 0) continue;
        if (key == "scenario") {
            opts.scenario = value;
        } else if (key == "p") {
            opts.dimension = config_number<std::size_t>(key, value, 2, 1000000);
        } else if (key == "n-grid") {
            opts.n_grid = value;
        } else if (key == "runs") {
            opts.runs = config_number<int>(key, value, 1, 10000000);
        } else if (key == "estimators") {
            opts.estimators = value;
        } else if (key == "seed") {
            opts.seed = config_number<std::uint64_t>(key, value, 0,
                                                     std::numeric_limits<std::uint64_t>::max());
        } else if (key == "zipf-exponent") {
            const double exponent = config_number<double>(
                key, value, std::numeric_limits<double>::min(),
                std::numeric_limits<double>::max());
            opts.zipf_exponent = exponent;
        } else if (key == "threads") {
            opts.threads = config_number<int>(key, value, 0, 4096);
        } else if (key == "out") {
            opts.out = value;
        }
    }
}

struct JsDemoOpts {
    std::size_t dimension = 10;
    int draws = 10000;
    double mean = 0.0;
    std::uint64_t seed = 42;
    int precision = 6;
};

void run_freqs(const CountCommandOpts& opts, std::ostream& out) {
    const CountVector counts = load_counts(opts.input);
    FrequencyVector freqs(std::vector<double>{1.0});
    if (opts.estimator == "ml") {
        freqs = estimate_ml(counts);
    } else if (opts.estimator == "bayes") {
        freqs = estimate_bayes(counts, parse_prior(opts.prior));
    } else {
        const ShrinkageEstimate estimate = estimate_shrink(counts);
        out << "# lambda=" << formatted(estimate.lambda, opts.precision) << '\n';
        freqs = estimate.freqs;
    }
    out << "cell,freq\n";
    for (std::size_t k = 0; k < freqs.size(); ++k)
        out << k << ',' << formatted(freqs[k], opts.precision) << '\n';
}

void run_entropy(const CountCommandOpts& opts, std::ostream& out) {
    const CountVector counts = load_counts(opts.input);
    const EntropyEstimator estimator = make_estimator(opts.estimator, opts.prior);
    out << formatted(estimator.entropy(counts), opts.precision) << '\n';
}

void run_discretize(const MatrixCommandOpts& opts, std::ostream& out) {
    const ExpressionMatrix matrix = load_expression(opts.input, opts.header);
    const DiscretizationScheme scheme = choose_scheme(matrix, opts.use_fd, opts.levels);
    OutputTarget target(opts.out, out);
    write_discretized_csv(discretize(matrix, scheme), target.stream());
}

MiGraph build_mi_graph(const MatrixCommandOpts& opts) {
    const ExpressionMatrix matrix = load_expression(opts.input, opts.header);
    const DiscretizationScheme scheme = choose_scheme(matrix, opts.use_fd, opts.levels);
    const EntropyEstimator estimator = make_estimator(opts.estimator, opts.prior);
    return mi_all_pairs(matrix, scheme, estimator, opts.threads);
}

void run_mi(const MatrixCommandOpts& opts, std::ostream& out) {
    const MiGraph graph = build_mi_graph(opts);
    OutputTarget target(opts.out, out);
    write_mi_matrix_csv(graph, target.stream(), opts.upper, opts.precision);
}

void run_network(const MatrixCommandOpts& opts, std::ostream& out) {
    const MiGraph graph = build_mi_graph(opts);
    const MiGraph pruned = dpi_prune(graph, opts.epsilon);
    GraphFormat format = GraphFormat::Dot;
    if (opts.format == "graphml") format = GraphFormat::GraphMl;
    if (opts.format == "csv") format = GraphFormat::EdgeCsv;
    OutputTarget target(opts.out, out);
    target.stream() << export_graph(pruned, format, opts.precision);
}

void run_bench_command(BenchOpts opts, const CLI::App& cmd, std::ostream& out,
                       std::ostream& err) {
    if (!opts.config.empty()) apply_bench_config(opts, cmd);
    bench::BenchConfig config;
    config.scenarios = parse_scenarios(opts.scenario, opts.dimension, opts.zipf_exponent);
    config.sample_sizes = parse_sample_grid(opts.n_grid);
    config.runs = opts.runs;
    config.estimators = parse_estimator_list(opts.estimators);
    config.seed = opts.seed;
    config.threads = opts.threads;

    const auto start = std::chrono::steady_clock::now();
    const bench::BenchResult result = bench::run_bench(config);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    OutputTarget target(opts.out, out);
    bench::write_report(result, target.stream());
    err << "# bench completed in " << formatted(elapsed.count(), 3) << " s\n";
}

void run_js_demo(const JsDemoOpts& opts, std::ostream& out) {
    rng::Engine rng(opts.seed);
    const std::size_t p = opts.dimension;
    double sse_ml = 0.0;
    double sse_zero = 0.0;
    double sse_mean = 0.0;
    std::vector<double> x(p);
    for (int d = 0; d < opts.draws; ++d) {
        for (auto& value : x) value = opts.mean + rng.normal();
        const std::vector<double> zero = js_zero_target(x);
        const MeanTargetShrink mean_shrunk = js_mean_target(x);
        for (std::size_t k = 0; k < p; ++k) {
            const double e_ml = x[k] - opts.mean;
            const double e_zero = zero[k] - opts.mean;
            const double e_mean = mean_shrunk.values[k] - opts.mean;
            sse_ml += e_ml * e_ml;
            sse_zero += e_zero * e_zero;
            sse_mean += e_mean * e_mean;
        }
    }
    const double scale = static_cast<double>(opts.draws) * static_cast<double>(p);
    out << "estimator,mse\n";
    out << "ml," << formatted(sse_ml / scale, opts.precision) << '\n';
    out << "js-zero," << formatted(sse_zero / scale, opts.precision) << '\n';
    out << "js-mean," << formatted(sse_mean / scale, opts.precision) << '\n';
}

void add_count_options(CLI::App* sub, CountCommandOpts& opts,
                       const std::vector<std::string>& estimators) {
    sub->add_option("--input", opts.input, "counts file, one integer per line or comma separated")
        ->required();
    sub->add_option("--estimator", opts.estimator, "estimator to apply")
        ->check(CLI::IsMember(estimators))
        ->capture_default_str();
    sub->add_option("--prior", opts.prior,
                    "Dirichlet prior for bayes: jeffreys, laplace, perks, minimax or a number")
        ->capture_default_str();
    sub->add_option("--precision", opts.precision, "fractional digits in output")
        ->check(CLI::Range(0, 17))
        ->capture_default_str();
}

void add_matrix_options(CLI::App* sub, MatrixCommandOpts& opts, bool with_estimator) {
    sub->add_option("--input", opts.input, "expression matrix CSV, genes in rows")->required();
    sub->add_flag("--header", opts.header, "treat the first row as sample labels");
    auto* levels = sub->add_option("--levels", opts.levels, "fixed number of uniform bins")
                       ->check(CLI::Range(2, kMaxLevels));
    sub->add_flag("--fd", opts.use_fd, "Freedman-Diaconis binning on pooled values (default)")
        ->excludes(levels);
    sub->add_option("--out", opts.out, "write output to this file instead of stdout");
    if (with_estimator) {
        sub->add_option("--estimator", opts.estimator, "cell frequency estimator")
            ->check(CLI::IsMember({"ml", "bayes", "shrink"}))
            ->capture_default_str();
        sub->add_option("--prior", opts.prior,
                        "Dirichlet prior for bayes: jeffreys, laplace, perks, minimax or a number")
            ->capture_default_str();
        sub->add_option("--precision", opts.precision, "fractional digits in output")
            ->check(CLI::Range(0, 17))
            ->capture_default_str();
        sub->add_option("--threads", opts.threads, "worker threads, 0 = all cores")
            ->check(CLI::Range(0, 4096))
            ->capture_default_str();
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropy and mutual information estimation for count data"};
    app.set_version_flag("--version", "ent 1.0.0");
    app.require_subcommand(1);

    CountCommandOpts freq_opts;
    auto* freqs_cmd = app.add_subcommand("freqs", "estimate cell frequencies from counts");
    add_count_options(freqs_cmd, freq_opts, {"ml", "bayes", "shrink"});
    freqs_cmd->add_option("--target", freq_opts.target, "shrinkage target distribution")
        ->check(CLI::IsMember({"uniform"}))
        ->capture_default_str();

    CountCommandOpts entropy_opts;
    auto* entropy_cmd = app.add_subcommand("entropy", "estimate Shannon entropy from counts");
    add_count_options(entropy_cmd, entropy_opts,
                      {"ml", "miller-madow", "bayes", "chao-shen", "shrink"});

    MatrixCommandOpts discretize_opts;
    auto* discretize_cmd =
        app.add_subcommand("discretize", "bin an expression matrix into integer levels");
    add_matrix_options(discretize_cmd, discretize_opts, false);

    MatrixCommandOpts mi_opts;
    auto* mi_cmd = app.add_subcommand("mi", "pairwise mutual information matrix");
    add_matrix_options(mi_cmd, mi_opts, true);
    mi_cmd->add_flag("--upper", mi_opts.upper, "emit only the upper triangle");

    MatrixCommandOpts network_opts;
    auto* network_cmd =
        app.add_subcommand("network", "mutual information network with DPI pruning");
    add_matrix_options(network_cmd, network_opts, true);
    network_cmd->add_option("--epsilon", network_opts.epsilon, "DPI tolerance")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    network_cmd->add_option("--format", network_opts.format, "output format")
        ->check(CLI::IsMember({"dot", "graphml", "csv"}))
        ->capture_default_str();

    BenchOpts bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo estimator benchmark");
    bench_cmd->add_option("--config", bench_opts.config,
                          "flat key=value file with defaults for these flags");
    bench_cmd
        ->add_option("--scenario", bench_opts.scenario,
                     "all or a comma list of dirichlet-sparse, dirichlet-uniform, half-zeros, zipf")
        ->capture_default_str();
    bench_cmd->add_option("--p", bench_opts.dimension, "number of cells")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1000000}))
        ->capture_default_str();
    bench_cmd->add_option("--n-grid", bench_opts.n_grid, "comma list of sample sizes")
        ->capture_default_str();
    bench_cmd->add_option("--runs", bench_opts.runs, "Monte Carlo repetitions per cell")
        ->check(CLI::Range(1, 10000000))
        ->capture_default_str();
    bench_cmd
        ->add_option("--estimators", bench_opts.estimators,
                     "all or a comma list of estimator labels")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench_opts.seed, "master RNG seed")->capture_default_str();
    bench_cmd->add_option("--zipf-exponent", bench_opts.zipf_exponent, "Zipf decay exponent")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--threads", bench_opts.threads, "worker threads, 0 = all cores")
        ->check(CLI::Range(0, 4096))
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_opts.out, "write the report to this file");

    JsDemoOpts js_opts;
    auto* js_cmd = app.add_subcommand("js-demo", "James-Stein shrinkage demo on normal means");
    js_cmd->add_option("--p", js_opts.dimension, "dimension of the mean vector")
        ->check(CLI::Range(std::int64_t{4}, std::int64_t{1000000}))
        ->capture_default_str();
    js_cmd->add_option("--draws", js_opts.draws, "Monte Carlo repetitions")
        ->check(CLI::Range(1, 100000000))
        ->capture_default_str();
    js_cmd->add_option("--mean", js_opts.mean, "true common mean")->capture_default_str();
    js_cmd->add_option("--seed", js_opts.seed, "RNG seed")->capture_default_str();
    js_cmd->add_option("--precision", js_opts.precision, "fractional digits in output")
        ->check(CLI::Range(0, 17))
        ->capture_default_str();

    freqs_cmd->callback([&] { run_freqs(freq_opts, out); });
    entropy_cmd->callback([&] { run_entropy(entropy_opts, out); });
    discretize_cmd->callback([&] { run_discretize(discretize_opts, out); });
    mi_cmd->callback([&] { run_mi(mi_opts, out); });
    network_cmd->callback([&] { run_network(network_opts, out); });
    bench_cmd->callback([&] { run_bench_command(bench_opts, *bench_cmd, out, err); });
    js_cmd->callback([&] { run_js_demo(js_opts, out); });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ent");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return kOk;
}

}  // namespace ent::cli
