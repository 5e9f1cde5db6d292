#include "gtp/simulator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace gtp {

namespace {

RunSummary summarize(const SimulationConfig& config, std::vector<TrialRecord> records) {
    RunSummary summary;
    summary.config = config;
    double sum_known = 0.0;
    double sum_unknown = 0.0;
    double sum_max = 0.0;
    double sum_spread = 0.0;
    long unknown_count = 0;
    for (const TrialRecord& r : records) {
        sum_known += to_double(r.est_known);
        sum_max += static_cast<double>(r.sample.m_max);
        sum_spread += static_cast<double>(r.sample.spread);
        if (r.est_unknown.has_value()) {
            sum_unknown += to_double(*r.est_unknown);
            ++unknown_count;
        }
    }
    auto count = static_cast<double>(records.size());
    summary.mean_est_known = sum_known / count;
    summary.mean_est_unknown = unknown_count > 0
                                   ? sum_unknown / static_cast<double>(unknown_count)
                                   : std::numeric_limits<double>::quiet_NaN();
    summary.mean_max = sum_max / count;
    summary.mean_spread = sum_spread / count;
    summary.records = std::move(records);
    return summary;
}

} // namespace

void SimulationConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("SimulationConfig: trials must be >= 1");
    }
    if (n_range.lo > n_range.hi || k_range.lo > k_range.hi) {
        throw std::invalid_argument("SimulationConfig: empty range");
    }
    if (k_range.lo < 1) {
        throw std::invalid_argument("SimulationConfig: k must be >= 1");
    }
    if (n_range.lo < 1) {
        throw std::invalid_argument("SimulationConfig: N must be >= 1");
    }
    if (k_range.hi > n_range.lo) {
        throw std::invalid_argument("SimulationConfig: k_range.hi must be <= n_range.lo so every "
                                    "drawn k is feasible for every drawn N");
    }
    if (n1 < 1) {
        throw std::invalid_argument("SimulationConfig: n1 must be >= 1");
    }
}

TrialRow to_row(const TrialRecord& record) {
    return TrialRow{record.trial_index, record.n_true,        record.k,
                    record.sample.m_min, record.sample.m_max, record.sample.spread,
                    record.est_known,    record.est_unknown};
}

std::vector<TrialRow> to_rows(const std::vector<TrialRecord>& records) {
    std::vector<TrialRow> rows;
    rows.reserve(records.size());
    for (const TrialRecord& r : records) {
        rows.push_back(to_row(r));
    }
    return rows;
}

TrialRecord run_single_trial(const SimulationConfig& config, long trial_index) {
    SplitMix64 stream(derive_stream_seed(config.seed, static_cast<std::uint64_t>(trial_index)));
    TrialRecord record;
    record.trial_index = trial_index;
    record.n_true = stream.uniform_in(config.n_range.lo, config.n_range.hi);
    record.k = stream.uniform_in(config.k_range.lo, config.k_range.hi);
    record.sample = draw_sample(config.n1, record.n_true, record.k, stream);
    record.est_known = estimate_known_min(record.sample.m_max - config.n1 + 1, record.k).value;
    if (record.k >= 2) {
        record.est_unknown = estimate_unknown_min(record.sample.spread, record.k).value;
    }
    return record;
}

RunSummary run_trials_serial(const SimulationConfig& config) {
    config.validate();
    std::vector<TrialRecord> records(static_cast<size_t>(config.trials));
    for (long i = 0; i < config.trials; ++i) {
        records[static_cast<size_t>(i)] = run_single_trial(config, i);
    }
    return summarize(config, std::move(records));
}

RunSummary run_trials(const SimulationConfig& config) {
    config.validate();
    std::vector<TrialRecord> records(static_cast<size_t>(config.trials));
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < config.trials; ++i) {
        records[static_cast<size_t>(i)] = run_single_trial(config, i);
    }
    // Aggregation walks records in index order, after the parallel fill.
    return summarize(config, std::move(records));
}

long birthday_trial(long d, SplitMix64& stream) {
    if (d < 1) {
        throw std::invalid_argument("birthday_trial: d must be >= 1");
    }
    std::unordered_set<long> seen;
    long people = 0;
    while (true) {
        ++people;
        long day = 1 + static_cast<long>(stream.uniform_below(static_cast<std::uint64_t>(d)));
        if (!seen.insert(day).second) {
            return people;
        }
    }
}

std::vector<std::pair<long, double>> birthday_experiment(std::uint64_t seed, IntRange d_range,
                                                         long points, long trials_per_point) {
    if (points < 2) {
        throw std::invalid_argument("birthday_experiment: need at least 2 points");
    }
    if (d_range.lo < 1 || d_range.lo > d_range.hi) {
        throw std::invalid_argument("birthday_experiment: degenerate day range");
    }
    if (trials_per_point < 1) {
        throw std::invalid_argument("birthday_experiment: trials_per_point must be >= 1");
    }
    std::vector<std::pair<long, double>> out(static_cast<size_t>(points));
    for (long p = 0; p < points; ++p) {
        SplitMix64 stream(derive_stream_seed(seed, static_cast<std::uint64_t>(p)));
        long d = stream.uniform_in(d_range.lo, d_range.hi);
        double sum = 0.0;
        for (long t = 0; t < trials_per_point; ++t) {
            sum += static_cast<double>(birthday_trial(d, stream));
        }
        out[static_cast<size_t>(p)] = {d, sum / static_cast<double>(trials_per_point)};
    }
    return out;
}

std::vector<std::pair<double, long>> averaged_max_experiment(std::uint64_t seed, long k,
                                                             const std::vector<long>& n_values,
                                                             long trials_per_n) {
    if (n_values.empty()) {
        throw std::invalid_argument("averaged_max_experiment: no N values");
    }
    if (k < 1 || k > *std::min_element(n_values.begin(), n_values.end())) {
        throw std::invalid_argument("averaged_max_experiment: k infeasible for the smallest N");
    }
    if (trials_per_n < 1) {
        throw std::invalid_argument("averaged_max_experiment: trials_per_n must be >= 1");
    }
    std::vector<std::pair<double, long>> out(n_values.size());
    for (size_t p = 0; p < n_values.size(); ++p) {
        SplitMix64 stream(derive_stream_seed(seed, static_cast<std::uint64_t>(p)));
        long n = n_values[p];
        double sum = 0.0;
        for (long t = 0; t < trials_per_n; ++t) {
            sum += static_cast<double>(draw_sample(1, n, k, stream).m_max);
        }
        out[p] = {sum / static_cast<double>(trials_per_n), n};
    }
    return out;
}

} // namespace gtp
