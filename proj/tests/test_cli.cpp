#include "doctest.h"
#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliResult result;
    result.code = ent::cli::run(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::string write_input(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("ent_cli_" + name);
    std::ofstream file(path);
    file << content;
    return path.string();
}

std::string slurp(const std::string& path) {
    std::ifstream file(path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

// Value of the `key,<number>` row in a small CSV report.
double row_value(const std::string& text, const std::string& key) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind(key + ",", 0) == 0) {
            return std::strtod(line.c_str() + key.size() + 1, nullptr);
        }
    }
    throw std::runtime_error("row not found: " + key);
}

// Two binary profiles and an anticorrelated third; FD does not apply, so
// these are always used with --levels 2.
const char* kBinaryMatrix =
    "x,0,0,0,0,1,1,1,1\n"
    "y,0,0,1,1,1,1,0,0\n"
    "z,1,1,1,1,0,0,0,0\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"transmogrify"}).code == 2);
    CHECK(run_cli({"entropy"}).code == 2);  // --input is required
    CHECK(run_cli({"entropy", "--input", "x", "--bogus"}).code == 2);
    CHECK(run_cli({"entropy", "--input", "x", "--estimator", "psychic"}).code == 2);
    CHECK(run_cli({"js-demo", "--p", "3"}).code == 2);

    const CliResult version = run_cli({"--version"});
    CHECK(version.code == 0);
    CHECK(version.out.find("ent 1.0.0") != std::string::npos);

    const CliResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("entropy") != std::string::npos);
    CHECK(help.out.find("bench") != std::string::npos);
}

TEST_CASE("freqs subcommand") {
    const std::string path = write_input("counts_82.txt", "8,2\n");

    const CliResult shrink = run_cli({"freqs", "--input", path});
    CHECK(shrink.code == 0);
    CHECK(shrink.out == "# lambda=0.197531\ncell,freq\n0,0.740741\n1,0.259259\n");

    const std::string path46 = write_input("counts_46.txt", "4,6\n");
    const CliResult ml = run_cli({"freqs", "--input", path46, "--estimator", "ml"});
    CHECK(ml.code == 0);
    CHECK(ml.out == "cell,freq\n0,0.400000\n1,0.600000\n");

    const std::string path02 = write_input("counts_02.txt", "0,2\n");
    const CliResult bayes =
        run_cli({"freqs", "--input", path02, "--estimator", "bayes", "--prior", "jeffreys"});
    CHECK(bayes.code == 0);
    CHECK(bayes.out == "cell,freq\n0,0.166667\n1,0.833333\n");

    CHECK(run_cli({"freqs", "--input", path, "--target", "mean"}).code == 2);
    CHECK(run_cli({"freqs", "--input", path02, "--estimator", "bayes", "--prior", "-1"}).code == 2);
}

TEST_CASE("entropy subcommand goldens") {
    auto entropy_of = [](const std::string& file, std::vector<std::string> extra) {
        std::vector<std::string> args = {"entropy", "--input", file};
        args.insert(args.end(), extra.begin(), extra.end());
        return run_cli(args);
    };
    const std::string even = write_input("counts_55.txt", "5,5\n");
    CHECK(entropy_of(even, {"--estimator", "ml"}).out == "0.693147\n");
    CHECK(entropy_of(even, {"--estimator", "ml", "--precision", "3"}).out == "0.693\n");

    const std::string pair = write_input("counts_22.txt", "2,2\n");
    CHECK(entropy_of(pair, {"--estimator", "miller-madow"}).out == "0.818147\n");

    const std::string skew = write_input("counts_21.txt", "2,1\n");
    CHECK(entropy_of(skew, {"--estimator", "chao-shen"}).out == "1.066247\n");

    const std::string heavy = write_input("counts_82b.txt", "8 2\n");  // whitespace works too
    CHECK(entropy_of(heavy, {"--estimator", "shrink"}).out == "0.572281\n");

    const std::string zero = write_input("counts_02b.txt", "0,2\n");
    CHECK(entropy_of(zero, {"--estimator", "bayes", "--prior", "0.5"}).out == "0.450561\n");

    const std::string flat = write_input("counts_1111.txt", "1,1,1,1\n");
    CHECK(entropy_of(flat, {"--estimator", "ml"}).out == "1.386294\n");
}

TEST_CASE("input problems exit with code 3, numeric domain with 4") {
    CHECK(run_cli({"entropy", "--input", "/no/such/file.txt"}).code == 3);

    const std::string negative = write_input("counts_neg.txt", "-1,2\n");
    const CliResult bad = run_cli({"entropy", "--input", negative});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("error:") != std::string::npos);
    CHECK(bad.out.empty());

    const std::string garbage = write_input("counts_bad.txt", "1,two,3\n");
    CHECK(run_cli({"entropy", "--input", garbage}).code == 3);

    const std::string empty_counts = write_input("counts_00.txt", "0,0\n");
    CHECK(run_cli({"entropy", "--input", empty_counts, "--estimator", "ml"}).code == 4);

    const std::string ragged = write_input("ragged.csv", "a,1,2\nb,3\n");
    CHECK(run_cli({"mi", "--input", ragged, "--levels", "2"}).code == 3);

    const std::string constant = write_input("constant.csv", "a,3,3,3,3\nb,3,3,3,3\n");
    CHECK(run_cli({"mi", "--input", constant, "--levels", "2"}).code == 4);
    CHECK(run_cli({"mi", "--input", constant}).code == 4);  // FD needs spread too
}

TEST_CASE("discretize subcommand") {
    const std::string path = write_input("expr_small.csv", "a,0,1,2,3\nb,4,5,6,7\n");
    const CliResult binned = run_cli({"discretize", "--input", path, "--levels", "2"});
    CHECK(binned.code == 0);
    CHECK(binned.out == "# levels=2\na,0,0,0,0\nb,1,1,1,1\n");

    CHECK(run_cli({"discretize", "--input", path, "--levels", "2", "--fd"}).code == 2);
    CHECK(run_cli({"discretize", "--input", path, "--levels", "1"}).code == 2);

    const std::string with_header = write_input("expr_header.csv",
                                                "gene,s1,s2,s3,s4\na,0,1,2,3\nb,4,5,6,7\n");
    const CliResult skipped =
        run_cli({"discretize", "--input", with_header, "--header", "--levels", "2"});
    CHECK(skipped.code == 0);
    CHECK(skipped.out == binned.out);
}

TEST_CASE("mi subcommand emits the pairwise matrix") {
    const std::string path = write_input("expr_bin.csv", kBinaryMatrix);
    const CliResult upper =
        run_cli({"mi", "--input", path, "--levels", "2", "--estimator", "ml", "--upper"});
    CHECK(upper.code == 0);
    CHECK(upper.out == "name,x,y,z\nx,,0.000000,0.693147\ny,,,0.000000\nz,,,\n");

    const CliResult full =
        run_cli({"mi", "--input", path, "--levels", "2", "--estimator", "ml"});
    CHECK(full.code == 0);
    CHECK(full.out ==
          "name,x,y,z\n"
          "x,0,0.000000,0.693147\n"
          "y,0.000000,0,0.000000\n"
          "z,0.693147,0.000000,0\n");

    const CliResult coarse = run_cli(
        {"mi", "--input", path, "--levels", "2", "--estimator", "ml", "--precision", "2"});
    CHECK(coarse.out.find("0.69\n") != std::string::npos);
}

TEST_CASE("network subcommand prunes the indirect edge") {
    // y sits between x and z: both direct pairs agree on 8 of 10 samples,
    // while x and z agree on only 6, the weakest of every triplet.
    const std::string path = write_input("expr_chain.csv",
                                         "x,0,0,0,0,0,1,1,1,1,1\n"
                                         "y,0,0,0,0,1,1,1,1,1,0\n"
                                         "z,0,0,0,1,1,1,1,1,0,0\n");
    const CliResult dot = run_cli(
        {"network", "--input", path, "--levels", "2", "--estimator", "ml", "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out ==
          "graph {\n"
          "  \"x\" -- \"y\" [weight=0.192745];\n"
          "  \"y\" -- \"z\" [weight=0.192745];\n"
          "}\n");

    const CliResult csv = run_cli(
        {"network", "--input", path, "--levels", "2", "--estimator", "ml", "--format", "csv"});
    CHECK(csv.out == "source,target,mi\nx,y,0.192745\ny,z,0.192745\n");

    const CliResult xml = run_cli({"network", "--input", path, "--levels", "2", "--estimator",
                                   "ml", "--format", "graphml"});
    CHECK(xml.out.find("<edge source=\"x\" target=\"y\">") != std::string::npos);
    CHECK(xml.out.find("target=\"z\"") != std::string::npos);

    // A huge tolerance keeps even the weak edge.
    const CliResult lax = run_cli({"network", "--input", path, "--levels", "2", "--estimator",
                                   "ml", "--epsilon", "0.5"});
    CHECK(lax.out.find("\"x\" -- \"z\"") != std::string::npos);

    CHECK(run_cli({"network", "--input", path, "--levels", "2", "--epsilon", "-1"}).code == 2);
    CHECK(run_cli({"network", "--input", path, "--levels", "2", "--format", "yaml"}).code == 2);
}

TEST_CASE("results can be redirected to a file") {
    const std::string path = write_input("expr_out.csv", "a,0,1,2,3\nb,4,5,6,7\n");
    const auto out_path =
        (std::filesystem::temp_directory_path() / "ent_cli_discretized.csv").string();
    const CliResult redirected =
        run_cli({"discretize", "--input", path, "--levels", "2", "--out", out_path});
    CHECK(redirected.code == 0);
    CHECK(redirected.out.empty());
    CHECK(slurp(out_path) == "# levels=2\na,0,0,0,0\nb,1,1,1,1\n");
    std::filesystem::remove(out_path);

    CHECK(run_cli({"discretize", "--input", path, "--levels", "2", "--out",
                   "/no/such/dir/out.csv"})
              .code == 3);
}

TEST_CASE("bench subcommand is deterministic and separates streams") {
    const std::vector<std::string> args = {"bench",   "--scenario",   "zipf", "--p",
                                           "8",       "--n-grid",     "10",   "--runs",
                                           "3",       "--estimators", "ml",   "--seed",
                                           "5"};
    const CliResult first = run_cli(args);
    CHECK(first.code == 0);
    CHECK(first.out.rfind("# rng=xoshiro256starstar\n", 0) == 0);
    CHECK(first.out.find("# seed=5") != std::string::npos);
    CHECK(first.out.find("zipf,10,ml,entropy_mse,") != std::string::npos);
    CHECK(first.err.find("# bench completed in") != std::string::npos);
    CHECK(run_cli(args).out == first.out);

    CHECK(run_cli({"bench", "--scenario", "marble"}).code == 2);
    CHECK(run_cli({"bench", "--n-grid", "10,-3"}).code == 2);
    CHECK(run_cli({"bench", "--estimators", "ml,psychic"}).code == 2);
}

TEST_CASE("bench reads defaults from a config file but flags win") {
    const std::string config = write_input("bench.ini",
                                           "scenario=zipf\np=8\nn-grid=10\nruns=2\n"
                                           "estimators=ml\nseed=9\n");
    const CliResult from_config = run_cli({"bench", "--config", config});
    CHECK(from_config.code == 0);
    CHECK(from_config.out.find("# seed=9") != std::string::npos);
    CHECK(from_config.out.find("zipf,10,") != std::string::npos);

    const CliResult overridden = run_cli({"bench", "--config", config, "--seed", "3"});
    CHECK(overridden.code == 0);
    CHECK(overridden.out.find("# seed=3") != std::string::npos);

    const std::string bad_key = write_input("bench_bad.ini", "seeed=9\n");
    CHECK(run_cli({"bench", "--config", bad_key}).code == 2);
    const std::string bad_value = write_input("bench_badval.ini", "runs=none\n");
    CHECK(run_cli({"bench", "--config", bad_value}).code == 2);
    CHECK(run_cli({"bench", "--config", "/no/such/bench.ini"}).code == 3);
}

TEST_CASE("js-demo reports the classic dominance result") {
    const CliResult demo =
        run_cli({"js-demo", "--p", "10", "--draws", "400", "--seed", "7", "--precision", "8"});
    CHECK(demo.code == 0);
    CHECK(demo.out.rfind("estimator,mse\n", 0) == 0);
    const double mse_ml = row_value(demo.out, "ml");
    const double mse_zero = row_value(demo.out, "js-zero");
    const double mse_mean = row_value(demo.out, "js-mean");
    CHECK(mse_ml > 0.85);
    CHECK(mse_ml < 1.15);
    CHECK(mse_zero < 0.6 * mse_ml);  // true means are all zero: shrinkage wins big
    CHECK(mse_mean < mse_ml);

    const CliResult shifted = run_cli(
        {"js-demo", "--p", "10", "--draws", "400", "--mean", "4", "--seed", "7"});
    const double far_zero = row_value(shifted.out, "js-zero");
    const double far_mean = row_value(shifted.out, "js-mean");
    // A common mean far from zero favors the grand-mean target.
    CHECK(far_mean < far_zero);
}

}  // TEST_SUITE
