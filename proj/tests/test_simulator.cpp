#include "gtp/simulator.hpp"

#include "gtp/distributions.hpp"

#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <map>
#include <vector>

using namespace gtp;

namespace {

// E[people until first repeated birthday] by direct summation of the
// survival series: E = sum_p P(first p draws all distinct).
double birthday_expectation(long d) {
    double expectation = 0.0;
    double survival = 1.0;
    for (long p = 0; p <= d; ++p) {
        expectation += survival;
        survival *= 1.0 - static_cast<double>(p) / static_cast<double>(d);
        if (survival < 1e-15) {
            break;
        }
    }
    return expectation;
}

long subset_count(long n, long k) {
    long result = 1;
    for (long i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

double chi_square_uniform_subsets(long n, long k, long trials, std::uint64_t seed) {
    std::map<std::vector<long>, long> counts;
    for (long t = 0; t < trials; ++t) {
        SplitMix64 stream(derive_stream_seed(seed, static_cast<std::uint64_t>(t)));
        counts[draw_sample(1, n, k, stream).serials] += 1;
    }
    auto cells = static_cast<double>(subset_count(n, k));
    double expected = static_cast<double>(trials) / cells;
    double chi2 = 0.0;
    for (const auto& [subset, count] : counts) {
        double diff = static_cast<double>(count) - expected;
        chi2 += diff * diff / expected;
    }
    // Cells never hit still contribute their expectation.
    chi2 += (cells - static_cast<double>(counts.size())) * expected;
    return chi2;
}

} // namespace

TEST_CASE("draw_sample basics") {
    SplitMix64 stream(1);
    SerialSample full = draw_sample(1, 5, 5, stream);
    CHECK(full.serials == std::vector<long>{1, 2, 3, 4, 5});

    SerialSample shifted = draw_sample(100, 10, 3, stream);
    CHECK(shifted.m_min >= 100);
    CHECK(shifted.m_max <= 109);
    CHECK(shifted.k == 3);

    CHECK_THROWS_AS(draw_sample(1, 3, 4, stream), std::invalid_argument);
    CHECK_THROWS_AS(draw_sample(1, 3, 0, stream), std::invalid_argument);
}

TEST_CASE("small-population subset frequencies are uniform") {
    // n = 3 uses the partial-shuffle route (8k >= n).
    std::map<std::vector<long>, long> counts;
    const long trials = 60000;
    for (long t = 0; t < trials; ++t) {
        SplitMix64 stream(derive_stream_seed(404, static_cast<std::uint64_t>(t)));
        counts[draw_sample(1, 3, 2, stream).serials] += 1;
    }
    REQUIRE(counts.size() == 3);
    for (const auto& [subset, count] : counts) {
        double freq = static_cast<double>(count) / trials;
        CHECK(freq == doctest::Approx(1.0 / 3.0).epsilon(0.03)); // 1/3 +- 0.01
    }
}

TEST_CASE("both sampling routes pass a chi-square uniformity check") {
    // Partial shuffle: k/n = 2/5 > 1/8. df = 9, 4 sigma above the mean ~ 26.
    CHECK(chi_square_uniform_subsets(5, 2, 50000, 505) < 27.0);
    // Rejection: k/n = 2/17 <= 1/8. df = 135, 4 sigma above the mean ~ 201.
    CHECK(chi_square_uniform_subsets(17, 2, 68000, 606) < 201.0);
}

TEST_CASE("config validation") {
    SimulationConfig config;
    config.trials = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = SimulationConfig{};
    config.n_range = {100, 2000};
    config.k_range = {10, 150}; // k can exceed the smallest N
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("forced exhaustive trial recovers N exactly") {
    SimulationConfig config;
    config.seed = 9;
    config.trials = 1;
    config.n_range = {5, 5};
    config.k_range = {5, 5};
    RunSummary run = run_trials(config);
    REQUIRE(run.records.size() == 1);
    CHECK(run.records[0].est_known == 5);
    CHECK(run.records[0].sample.serials == std::vector<long>{1, 2, 3, 4, 5});
}

TEST_CASE("runs are deterministic and independent of threading") {
    SimulationConfig config;
    config.seed = 31337;
    config.trials = 400;
    config.n_range = {50, 200};
    config.k_range = {1, 9};

    RunSummary serial = run_trials_serial(config);
    RunSummary parallel = run_trials(config);
    REQUIRE(serial.records == parallel.records);
    CHECK(serial.mean_est_known == parallel.mean_est_known);
    CHECK(serial.mean_max == parallel.mean_max);

    int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    RunSummary threaded = run_trials(config);
    omp_set_num_threads(saved);
    REQUIRE(threaded.records == serial.records);

    RunSummary again = run_trials(config);
    REQUIRE(again.records == serial.records);
}

TEST_CASE("summary aggregates are recomputable from the records") {
    SimulationConfig config;
    config.seed = 77;
    config.trials = 300;
    config.n_range = {30, 80};
    config.k_range = {1, 8};
    RunSummary run = run_trials(config);

    double sum_known = 0.0, sum_unknown = 0.0, sum_max = 0.0, sum_spread = 0.0;
    long unknown_count = 0;
    for (const TrialRecord& r : run.records) {
        sum_known += to_double(r.est_known);
        sum_max += static_cast<double>(r.sample.m_max);
        sum_spread += static_cast<double>(r.sample.spread);
        if (r.est_unknown.has_value()) {
            sum_unknown += to_double(*r.est_unknown);
            ++unknown_count;
        }
    }
    CHECK(run.mean_est_known == sum_known / 300.0);
    CHECK(run.mean_est_unknown == sum_unknown / static_cast<double>(unknown_count));
    CHECK(run.mean_max == sum_max / 300.0);
    CHECK(run.mean_spread == sum_spread / 300.0);
}

TEST_CASE("every record satisfies the estimator floor bounds") {
    SimulationConfig config;
    config.seed = 1234;
    config.trials = 500;
    config.n_range = {30, 120};
    config.k_range = {1, 12};
    RunSummary run = run_trials(config);
    for (const TrialRecord& r : run.records) {
        REQUIRE(r.est_known >= r.sample.m_max);
        REQUIRE((r.k >= 2) == r.est_unknown.has_value());
        if (r.est_unknown.has_value()) {
            REQUIRE(*r.est_unknown >= r.sample.spread + 1);
        }
        REQUIRE(r.sample.m_max <= r.n_true);
        REQUIRE(r.sample.m_min >= 1);
    }
}

TEST_CASE("empirical means agree with the exact expectations at 4 standard errors") {
    const long n = 60, k = 7, trials = 10000;
    SimulationConfig config;
    config.seed = 2024;
    config.trials = trials;
    config.n_range = {n, n};
    config.k_range = {k, k};
    RunSummary run = run_trials(config);

    PopulationModel pop = PopulationModel::of_size(n);
    for (Variable variable : {Variable::Max, Variable::Spread}) {
        PmfTable table = pmf_table(pop, k, variable);
        double mean = to_double(table.mean());
        Rational second_moment(0);
        for (long v = table.support_lo; v <= table.support_hi; ++v) {
            second_moment += Rational(v) * Rational(v) * table.prob(v);
        }
        double variance = to_double(second_moment) - mean * mean;
        double se = std::sqrt(variance / static_cast<double>(trials));
        double observed = variable == Variable::Max ? run.mean_max : run.mean_spread;
        CHECK(std::fabs(observed - mean) <= 4.0 * se);
    }
}

TEST_CASE("birthday trial") {
    SplitMix64 stream(5);
    for (int i = 0; i < 10; ++i) {
        CHECK(birthday_trial(1, stream) == 2);
    }
    CHECK_THROWS_AS(birthday_trial(0, stream), std::invalid_argument);

    // Mean over 100k trials against the exact survival-series expectation.
    const long trials = 100000;
    double sum = 0.0;
    SplitMix64 mean_stream(99);
    for (long t = 0; t < trials; ++t) {
        sum += static_cast<double>(birthday_trial(365, mean_stream));
    }
    double oracle = birthday_expectation(365);
    CHECK(oracle == doctest::Approx(24.6166).epsilon(0.001));
    CHECK(sum / trials == doctest::Approx(oracle).epsilon(0.3 / oracle));
}

TEST_CASE("birthday experiment output") {
    auto pairs = birthday_experiment(7, {50, 400}, 200, 2);
    REQUIRE(pairs.size() == 200);
    for (const auto& [d, mean_people] : pairs) {
        CHECK(d >= 50);
        CHECK(d <= 400);
        CHECK(mean_people >= 2.0);
    }
    CHECK_THROWS_AS(birthday_experiment(7, {50, 400}, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(birthday_experiment(7, {400, 50}, 10, 1), std::invalid_argument);

    auto rerun = birthday_experiment(7, {50, 400}, 200, 2);
    CHECK(pairs == rerun);
}

TEST_CASE("averaged max experiment") {
    // k = 1: the mean observed value approaches (N + 1) / 2.
    const long n = 1000, trials_per_n = 2000;
    auto pairs = averaged_max_experiment(15, 1, {n}, trials_per_n);
    REQUIRE(pairs.size() == 1);
    double se = (static_cast<double>(n) / std::sqrt(12.0)) / std::sqrt(trials_per_n);
    CHECK(std::fabs(pairs[0].first - 500.5) <= 4.0 * se);
    CHECK(pairs[0].second == n);

    // trials_per_n = 1 reduces to the raw maximum of that point's stream.
    auto raw = averaged_max_experiment(15, 3, {40}, 1);
    SplitMix64 stream(derive_stream_seed(15, 0));
    CHECK(raw[0].first == static_cast<double>(draw_sample(1, 40, 3, stream).m_max));

    CHECK_THROWS_AS(averaged_max_experiment(15, 9, {8, 20}, 5), std::invalid_argument);
}
