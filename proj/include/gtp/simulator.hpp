#pragma once

#include "gtp/estimators.hpp"
#include "gtp/rng.hpp"
#include "gtp/sampling.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gtp {

struct IntRange {
    long lo{0};
    long hi{0};

    bool contains(long v) const { return lo <= v && v <= hi; }
    bool operator==(const IntRange&) const = default;
};

// One seeded run: `trials` independent trials, each drawing N from n_range,
// k from k_range, then a sample. Requires k_range.hi <= n_range.lo so every
// drawn k is feasible for every drawn N.
struct SimulationConfig {
    std::uint64_t seed{0};
    long trials{1};
    IntRange n_range{1, 1};
    IntRange k_range{1, 1};
    long n1{1};

    void validate() const;
    bool operator==(const SimulationConfig&) const = default;
};

struct TrialRecord {
    long trial_index{0};
    long n_true{0};
    long k{0};
    SerialSample sample;
    Rational est_known;
    std::optional<Rational> est_unknown; // absent iff k < 2

    bool operator==(const TrialRecord&) const = default;
};

struct RunSummary {
    SimulationConfig config;
    std::vector<TrialRecord> records;
    double mean_est_known{0.0};
    double mean_est_unknown{0.0}; // NaN when no trial had k >= 2
    double mean_max{0.0};
    double mean_spread{0.0};
};

// Slim row used by the regression module and the CSV round trip; carries
// exactly the fields the trial CSV schema preserves.
struct TrialRow {
    long trial_index{0};
    long n_true{0};
    long k{0};
    long m_min{0};
    long m_max{0};
    long spread{0};
    Rational est_known;
    std::optional<Rational> est_unknown;
};

TrialRow to_row(const TrialRecord& record);
std::vector<TrialRow> to_rows(const std::vector<TrialRecord>& records);

// Trial i runs on stream derive_stream_seed(seed, i), so the result depends
// only on (config, i) and a run is reproducible regardless of scheduling.
TrialRecord run_single_trial(const SimulationConfig& config, long trial_index);

// OpenMP over trials; bit-identical to run_trials_serial by construction
// (per-trial streams, index-ordered aggregation).
RunSummary run_trials(const SimulationConfig& config);
RunSummary run_trials_serial(const SimulationConfig& config);

// Uniform draws in [1, d] until the first repeat; returns how many people
// entered the room, including the one causing the repeat.
long birthday_trial(long d, SplitMix64& stream);

// `points` rooms: point p draws D uniformly from d_range on its own stream
// and averages birthday_trial over trials_per_point. Pairs (d, mean_people)
// feed fit_power_law.
std::vector<std::pair<long, double>> birthday_experiment(std::uint64_t seed, IntRange d_range,
                                                         long points, long trials_per_point);

// For each N in n_values, averages the sample maximum over trials_per_n
// draws at fixed k; pairs are (mean_m, N), ready for a forward N-on-mean-m
// fit. Averaging shrinks the per-point noise so the direction-of-fit
// attenuation that spoils raw N-on-m fits becomes negligible.
std::vector<std::pair<double, long>> averaged_max_experiment(std::uint64_t seed, long k,
                                                             const std::vector<long>& n_values,
                                                             long trials_per_n);

} // namespace gtp
