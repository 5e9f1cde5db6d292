#include "gtp/regression.hpp"

#include "gtp/rng.hpp"
#include "gtp/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace gtp;

namespace {

std::vector<TrialRow> synthetic_rows(const std::vector<long>& ks, long j_lo, long j_hi) {
    // Exact N = m (1 + 1/k) data: m = k*j makes every value an integer.
    std::vector<TrialRow> rows;
    for (long k : ks) {
        for (long j = j_lo; j <= j_hi; ++j) {
            TrialRow row;
            row.k = k;
            row.m_max = k * j;
            row.n_true = k * j + j;
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace

TEST_CASE("fit_simple recovers an exact line") {
    RegressionFit fit = fit_simple({{{0.0, 1.0}, {1.0, 3.0}, {2.0, 5.0}}});
    CHECK(fit.coef("a") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.coef("b") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.residual_sum_squares <= 1e-18 * 35.0); // rss <= 1e-18 relative to sum y^2
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.rmse == std::sqrt(fit.residual_sum_squares / 3.0));
}

TEST_CASE("fit_simple on the symmetric square matches a grid search") {
    std::vector<std::pair<double, double>> data = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    RegressionFit fit = fit_simple(data);
    CHECK(fit.coef("a") == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.coef("b") == doctest::Approx(0.5).epsilon(1e-12));

    // Dense grid over (a, b): no grid point may beat the fitted pair.
    double best = 1e300, best_a = 0, best_b = 0;
    for (double a = -1.0; a <= 1.0; a += 0.01) {
        for (double b = -1.0; b <= 2.0; b += 0.01) {
            double rss = 0.0;
            for (auto [x, y] : data) {
                double r = y - (a * x + b);
                rss += r * r;
            }
            if (rss < best) {
                best = rss;
                best_a = a;
                best_b = b;
            }
        }
    }
    CHECK(fit.residual_sum_squares <= best + 1e-12);
    CHECK(std::fabs(fit.coef("a") - best_a) <= 0.011);
    CHECK(std::fabs(fit.coef("b") - best_b) <= 0.011);
}

TEST_CASE("fit_simple error cases") {
    CHECK_THROWS_AS(fit_simple({{{3.0, 1.0}, {3.0, 2.0}}}), SingularDesignError);
    CHECK_THROWS_AS(fit_simple({{{3.0, 1.0}}}), InsufficientDataError);
}

TEST_CASE("fit_linear reproduces fit_simple through the general route") {
    std::vector<std::pair<double, double>> data = {{0.5, 2.0}, {1.5, 2.2}, {2.5, 3.9}, {4.0, 5.1}};
    RegressionFit simple = fit_simple(data);

    DesignMatrix design;
    design.feature_names = {"a", "b"};
    design.features.assign(2, {});
    for (auto [x, y] : data) {
        design.features[0].push_back(x);
        design.features[1].push_back(1.0);
        design.response.push_back(y);
    }
    RegressionFit linear = fit_linear(design);
    CHECK(linear.coef("a") == doctest::Approx(simple.coef("a")).epsilon(1e-9));
    CHECK(linear.coef("b") == doctest::Approx(simple.coef("b")).epsilon(1e-9));
}

TEST_CASE("fit_linear rejects rank-deficient designs") {
    DesignMatrix design;
    design.feature_names = {"x", "x_again"};
    design.features = {{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}};
    design.response = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit_linear(design), SingularDesignError);

    DesignMatrix zero;
    zero.feature_names = {"z"};
    zero.features = {{0.0, 0.0}};
    zero.response = {1.0, 2.0};
    CHECK_THROWS_AS(fit_linear(zero), SingularDesignError);

    DesignMatrix tall;
    tall.feature_names = {"x", "1"};
    tall.features = {{1.0}, {1.0}};
    tall.response = {1.0};
    CHECK_THROWS_AS(fit_linear(tall), InsufficientDataError);
}

TEST_CASE("r-squared definition follows the intercept") {
    DesignMatrix with;
    with.feature_names = {"x", "1"};
    with.features = {{1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}};
    with.response = {2.0, 2.9, 4.2};
    CHECK(fit_linear(with).model_label == "linear (centered R^2)");

    DesignMatrix without;
    without.feature_names = {"x"};
    without.features = {{1.0, 2.0, 3.0}};
    without.response = {2.0, 2.9, 4.2};
    CHECK(fit_linear(without).model_label == "linear, no intercept (uncentered R^2)");
    CHECK(fit_linear(without).r_squared <= 1.0);
}

TEST_CASE("log model on noiseless formula data") {
    // The only error source is log(1 + 1/k) vs 1/k, an O(1/k_min) effect.
    for (long k_min : {10L, 50L, 200L}) {
        auto rows = synthetic_rows({k_min, 2 * k_min, 4 * k_min}, 2, 40);
        RegressionFit fit = fit_log_model(rows);
        CHECK(std::fabs(fit.coef("a") - 1.0) <= 1.0 / static_cast<double>(k_min));
        CHECK(std::fabs(fit.coef("b") - 1.0) <= 1.0 / static_cast<double>(k_min));
    }
    // At k ~ 1000 the gap is below 1e-3 for both coefficients.
    auto rows = synthetic_rows({1000, 1500, 2000}, 2, 40);
    RegressionFit fit = fit_log_model(rows);
    CHECK(std::fabs(fit.coef("a") - 1.0) <= 1e-3);
    CHECK(std::fabs(fit.coef("b") - 1.0) <= 1e-3);
}

TEST_CASE("log model degenerate input") {
    std::vector<TrialRow> rows;
    for (int i = 0; i < 5; ++i) {
        TrialRow row;
        row.k = 4;
        row.m_max = 40;
        row.n_true = 50;
        rows.push_back(row);
    }
    CHECK_THROWS_AS(fit_log_model(rows), SingularDesignError);

    TrialRow bad;
    bad.k = 4;
    bad.m_max = 0;
    bad.n_true = 50;
    CHECK_THROWS_AS(fit_log_model(std::vector<TrialRow>{bad}), DomainError);
}

TEST_CASE("power law fit") {
    std::vector<std::pair<double, double>> data;
    for (double x : {1.0, 2.0, 4.0, 8.0}) {
        data.emplace_back(x, 3.0 * x * x);
    }
    RegressionFit fit = fit_power_law(data);
    CHECK(fit.coef("a") == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.coef("b") == doctest::Approx(std::log(3.0)).epsilon(1e-9));
    CHECK(fit.coef("B") == doctest::Approx(3.0).epsilon(1e-9));

    CHECK_THROWS_AS(fit_power_law({{1.0, -2.0}, {2.0, 3.0}}), DomainError);
    CHECK_THROWS_AS(fit_power_law({{2.0, 1.0}, {2.0, 3.0}}), SingularDesignError);
}

TEST_CASE("per-k slopes on noiseless data") {
    auto rows = synthetic_rows({2, 4, 5, 10}, 2, 30);
    auto fits = fit_per_k_slopes(rows, {2, 4, 5, 10, 99});
    REQUIRE(fits.size() == 5);
    for (size_t i = 0; i < 4; ++i) {
        CHECK_FALSE(fits[i].singular);
        double theory = 1.0 + 1.0 / static_cast<double>(fits[i].k);
        CHECK(fits[i].slope == doctest::Approx(theory).epsilon(1e-9));
        CHECK(fits[i].intercept == doctest::Approx(0.0).epsilon(1e-6));
    }
    CHECK(fits[4].singular); // k = 99 has no records; reported, not fatal
}

TEST_CASE("per-k entry with no m variation is singular without failing the batch") {
    std::vector<TrialRow> rows;
    for (int i = 0; i < 4; ++i) {
        TrialRow row;
        row.k = 3;
        row.m_max = 30;
        row.n_true = 40 + i;
        rows.push_back(row);
    }
    TrialRow other;
    other.k = 5;
    other.m_max = 50;
    other.n_true = 60;
    rows.push_back(other);
    other.m_max = 60;
    other.n_true = 72;
    rows.push_back(other);

    auto fits = fit_per_k_slopes(rows, {3, 5});
    CHECK(fits[0].singular);
    CHECK_FALSE(fits[1].singular);
}

TEST_CASE("forward and reverse slopes multiply to r-squared") {
    SimulationConfig config;
    config.seed = 555;
    config.trials = 2000;
    config.n_range = {100, 900};
    config.k_range = {3, 3};
    RunSummary run = run_trials(config);

    std::vector<std::pair<double, double>> forward, reverse;
    for (const TrialRecord& r : run.records) {
        double m = static_cast<double>(r.sample.m_max);
        double n = static_cast<double>(r.n_true);
        forward.emplace_back(m, n);
        reverse.emplace_back(n, m);
    }
    RegressionFit f = fit_simple(forward);
    RegressionFit g = fit_simple(reverse);
    CHECK(f.coef("a") * g.coef("a") == doctest::Approx(f.r_squared).epsilon(1e-9));
    CHECK(f.r_squared == doctest::Approx(g.r_squared).epsilon(1e-9));
}

TEST_CASE("first-order optimality of returned fits") {
    SplitMix64 gen(808);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::pair<double, double>> data;
        long count = gen.uniform_in(3, 30);
        for (long i = 0; i < count; ++i) {
            double x = static_cast<double>(gen.uniform_in(-50, 50));
            double y = 0.7 * x + 3.0 + static_cast<double>(gen.uniform_in(-20, 20)) / 7.0;
            data.emplace_back(x, y);
        }
        RegressionFit fit = fit_simple(data);
        double a = fit.coef("a");
        double b = fit.coef("b");
        for (double sign : {-1.0, 1.0}) {
            for (int which = 0; which < 2; ++which) {
                double da = which == 0 ? sign * 1e-4 * (std::fabs(a) + 1e-4) : 0.0;
                double db = which == 1 ? sign * 1e-4 * (std::fabs(b) + 1e-4) : 0.0;
                double rss = 0.0;
                for (auto [x, y] : data) {
                    double r = y - ((a + da) * x + (b + db));
                    rss += r * r;
                }
                CHECK(rss >= fit.residual_sum_squares * (1.0 - 1e-12));
            }
        }
    }
}
