#include "doctest.h"
#include "ent/bench.hpp"
#include "ent/freq.hpp"
#include "ent/rng.hpp"
#include "ent/types.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

using ent::CountVector;
using ent::FrequencyVector;
using ent::PriorSpec;

namespace {

CountVector random_counts(ent::rng::Engine& rng, std::size_t max_p, std::int64_t max_count) {
    const std::size_t p = 2 + rng.next() % (max_p - 1);
    std::vector<std::int64_t> y(p);
    for (auto& v : y) v = static_cast<std::int64_t>(rng.next() % (max_count + 1));
    std::int64_t total = 0;
    for (auto v : y) total += v;
    if (total < 2) y[0] += 2;  // keep n >= 2 so every estimator is defined
    return CountVector(std::move(y));
}

}  // namespace

TEST_SUITE("freq") {

TEST_CASE("count vector validates and caches summaries") {
    const CountVector c({2, 0, 1, 1});
    CHECK(c.size() == 4);
    CHECK(c.total() == 4);
    CHECK(c.positive_cells() == 3);
    CHECK(c.singletons() == 2);
    CHECK_THROWS_AS(CountVector({}), std::invalid_argument);
    CHECK_THROWS_AS(CountVector({1, -1}), std::invalid_argument);
}

TEST_CASE("frequency vector enforces the simplex") {
    CHECK_NOTHROW(FrequencyVector({0.25, 0.75}));
    CHECK_THROWS_AS(FrequencyVector({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyVector({-0.1, 1.1}), std::invalid_argument);
    const FrequencyVector u = FrequencyVector::uniform(4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(u[k] == 0.25);
}

TEST_CASE("maximum likelihood frequencies") {
    const FrequencyVector f = ent::estimate_ml(CountVector({4, 6}));
    CHECK(f[0] == 0.4);
    CHECK(f[1] == 0.6);

    const FrequencyVector g = ent::estimate_ml(CountVector({0, 0, 10}));
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
    CHECK(g[2] == 1.0);

    CHECK_THROWS_AS(ent::estimate_ml(CountVector({0, 0})), std::invalid_argument);
}

TEST_CASE("bayes posterior means") {
    const FrequencyVector f = ent::estimate_bayes(CountVector({0, 2}), PriorSpec::jeffreys());
    CHECK(f[0] == doctest::Approx(0.5 / 3.0).epsilon(1e-15));
    CHECK(f[1] == doctest::Approx(2.5 / 3.0).epsilon(1e-15));

    // A zero-mass prior reduces to maximum likelihood.
    const FrequencyVector g = ent::estimate_bayes(CountVector({4, 6}), PriorSpec::symmetric(0.0));
    CHECK(g[0] == 0.4);
    CHECK(g[1] == 0.6);

    // With no data the posterior mean is the prior mean.
    const FrequencyVector h = ent::estimate_bayes(CountVector({0, 0}), PriorSpec::laplace());
    CHECK(h[0] == 0.5);
    CHECK(h[1] == 0.5);

    CHECK_THROWS_AS(ent::estimate_bayes(CountVector({0, 0}), PriorSpec::symmetric(0.0)),
                    std::invalid_argument);
}

TEST_CASE("prior presets resolve against the counts") {
    const CountVector c({8, 2});  // p = 2, n = 10
    CHECK(PriorSpec::jeffreys().total_mass(c) == 1.0);
    CHECK(PriorSpec::laplace().total_mass(c) == 2.0);
    CHECK(PriorSpec::perks().total_mass(c) == 1.0);
    CHECK(PriorSpec::minimax().total_mass(c) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK(PriorSpec::perks().symmetric_value(c) == 0.5);
    CHECK(PriorSpec::minimax().symmetric_value(c).value() ==
          doctest::Approx(std::sqrt(10.0) / 2.0).epsilon(1e-15));
    CHECK(PriorSpec::jeffreys().label() == "jeffreys");
    CHECK(PriorSpec::per_cell({0.5, 1.5}).is_per_cell());
    CHECK_THROWS_AS(PriorSpec::symmetric(-1.0), std::invalid_argument);
}

TEST_CASE("ml variance golden values") {
    const auto v = ent::ml_variance(CountVector({5, 5}));
    CHECK(v[0] == doctest::Approx(0.25 / 9.0).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(0.25 / 9.0).epsilon(1e-15));

    const auto w = ent::ml_variance(CountVector({10, 0}));
    CHECK(w[0] == 0.0);
    CHECK(w[1] == 0.0);

    const auto x = ent::ml_variance(CountVector({1, 1}));
    CHECK(x[0] == 0.25);
    CHECK(x[1] == 0.25);

    CHECK_THROWS_AS(ent::ml_variance(CountVector({1, 0})), std::invalid_argument);
}

TEST_CASE("shrinkage intensity golden values") {
    const FrequencyVector u2 = FrequencyVector::uniform(2);
    CHECK(ent::shrinkage_lambda(CountVector({8, 2}), u2) ==
          doctest::Approx(0.19753086419753085).epsilon(1e-12));
    // Hits the truncation boundary exactly: 0.375 / 0.375.
    CHECK(ent::shrinkage_lambda(CountVector({3, 1}), u2) == 1.0);
    // Zero denominator convention: ML already equals the target.
    CHECK(ent::shrinkage_lambda(CountVector({5, 5}), u2) == 1.0);
    CHECK_THROWS_AS(ent::shrinkage_lambda(CountVector({1, 0}), u2), std::invalid_argument);
}

TEST_CASE("shrinkage estimate golden values") {
    const auto est = ent::estimate_shrink(CountVector({8, 2}));
    CHECK(est.lambda == doctest::Approx(0.19753086419753085).epsilon(1e-12));
    CHECK(est.freqs[0] == doctest::Approx(0.7407407407407407).epsilon(1e-12));
    CHECK(est.freqs[1] == doctest::Approx(0.25925925925925924).epsilon(1e-12));

    const auto flat = ent::estimate_shrink(CountVector({5, 5}));
    CHECK(flat.lambda == 1.0);
    CHECK(flat.freqs[0] == 0.5);
    CHECK(flat.freqs[1] == 0.5);
}

TEST_CASE("forced intensity endpoints are exact") {
    const CountVector c({7, 1, 4});
    const FrequencyVector target = FrequencyVector::uniform(3);
    const FrequencyVector ml = ent::estimate_ml(c);

    const auto at_zero = ent::estimate_shrink(c, target, 0.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(at_zero.freqs[k] == ml[k]);

    const auto at_one = ent::estimate_shrink(c, target, 1.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(at_one.freqs[k] == target[k]);

    CHECK_THROWS_AS(ent::estimate_shrink(c, target, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ent::estimate_shrink(c, target, -0.1), std::invalid_argument);
}

TEST_CASE("estimators stay on the simplex for random counts") {
    ent::rng::Engine rng(314);
    for (int i = 0; i < 200; ++i) {
        const CountVector c = random_counts(rng, 50, 12);
        for (const FrequencyVector& f :
             {ent::estimate_ml(c), ent::estimate_bayes(c, PriorSpec::jeffreys()),
              ent::estimate_shrink(c).freqs}) {
            REQUIRE(f.size() == c.size());
            double sum = 0.0;
            for (std::size_t k = 0; k < f.size(); ++k) {
                REQUIRE(f[k] >= 0.0);
                sum += f[k];
            }
            REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("forced shrinkage equals bayes with the equivalent prior mass") {
    ent::rng::Engine rng(2718);
    for (int i = 0; i < 100; ++i) {
        const CountVector c = random_counts(rng, 40, 10);
        const double lambda = rng.uniform01();
        const FrequencyVector target = FrequencyVector::uniform(c.size());
        const auto shrunk = ent::estimate_shrink(c, target, lambda);
        const double mass = ent::equivalent_prior_mass(c, lambda);
        std::vector<double> a(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) a[k] = target[k] * mass;
        const FrequencyVector bayes = ent::estimate_bayes(c, PriorSpec::per_cell(std::move(a)));
        for (std::size_t k = 0; k < c.size(); ++k) {
            REQUIRE(std::abs(shrunk.freqs[k] - bayes[k]) <= 1e-12);
        }
    }
}

TEST_CASE("equivalent and pseudo prior masses") {
    const CountVector ten({4, 6});
    CHECK(ent::equivalent_prior_mass(ten, 0.5) == 10.0);
    CHECK(ent::equivalent_prior_mass(ten, 0.0) == 0.0);
    const CountVector nine({6, 3});
    CHECK(ent::equivalent_prior_mass(nine, 0.19753086419753085) ==
          doctest::Approx(2.2153846153846155).epsilon(1e-9));
    CHECK_THROWS_AS(ent::equivalent_prior_mass(ten, 1.0), std::domain_error);

    CHECK(ent::pseudo_prior_mass(ten, 0.5) == 5.0);
    CHECK(ent::pseudo_prior_mass(ten, 0.0) == 0.0);
    CHECK(ent::pseudo_prior_mass(nine, 0.197531) == doctest::Approx(1.777779).epsilon(1e-12));
}

TEST_CASE("good-turing weights") {
    const auto gt = ent::good_turing(CountVector({2, 1}));
    CHECK(gt[0] == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    CHECK(gt[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-15));

    const auto none = ent::good_turing(CountVector({5, 5}));
    CHECK(none[0] == 0.5);
    CHECK(none[1] == 0.5);

    const auto all = ent::good_turing(CountVector({1, 1}));
    CHECK(all[0] == 0.0);
    CHECK(all[1] == 0.0);

    CHECK_THROWS_AS(ent::good_turing(CountVector({0, 0})), std::invalid_argument);
}

TEST_CASE("ml frequencies are unbiased across multinomial draws") {
    const FrequencyVector theta({0.2, 0.3, 0.5});
    const std::int64_t n = 40;
    const int draws = 100000;
    ent::rng::Engine rng(8675309);
    std::vector<double> mean(theta.size(), 0.0);
    for (int d = 0; d < draws; ++d) {
        const CountVector counts = ent::bench::draw_counts(theta, n, rng);
        for (std::size_t k = 0; k < theta.size(); ++k) {
            mean[k] += static_cast<double>(counts[k]) / static_cast<double>(n);
        }
    }
    for (std::size_t k = 0; k < theta.size(); ++k) {
        mean[k] /= draws;
        const double se = std::sqrt(theta[k] * (1.0 - theta[k]) /
                                    (static_cast<double>(n) * draws));
        CHECK(std::abs(mean[k] - theta[k]) < 3.5 * se);
    }
}

TEST_CASE("ml_variance is unbiased for the variance of ml frequencies") {
    const FrequencyVector theta({0.2, 0.3, 0.5});
    const std::int64_t n = 30;
    const int draws = 100000;
    ent::rng::Engine rng(424242);
    std::vector<double> sum(theta.size(), 0.0);
    std::vector<double> sumsq(theta.size(), 0.0);
    std::vector<double> est_mean(theta.size(), 0.0);
    for (int d = 0; d < draws; ++d) {
        const CountVector counts = ent::bench::draw_counts(theta, n, rng);
        const auto est = ent::ml_variance(counts);
        for (std::size_t k = 0; k < theta.size(); ++k) {
            const double t = static_cast<double>(counts[k]) / static_cast<double>(n);
            sum[k] += t;
            sumsq[k] += t * t;
            est_mean[k] += est[k];
        }
    }
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double mean = sum[k] / draws;
        const double empirical = sumsq[k] / draws - mean * mean;
        const double estimated = est_mean[k] / draws;
        CHECK(std::abs(estimated - empirical) < 0.05 * empirical);
    }
}

}  // TEST_SUITE
