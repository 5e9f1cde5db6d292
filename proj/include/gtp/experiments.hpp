#pragma once

#include "gtp/regression.hpp"
#include "gtp/simulator.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtp {

struct UnknownExperimentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentName {
    NaiveRatioFit, // (N - m) regressed on m/k: the fit whose failure motivates the log model
    FixedKForward, // N on m at fixed k: attenuated, unfaithful direction
    FixedKReverse, // m on N at fixed k: the faithful direction, slope k/(k+1)
    AveragedMax,   // N on the per-N averaged maximum: near-noiseless forward fit
    LogModel,      // log N on {log m, 1/k}, no intercept
    SniffK,        // per-k averaged slopes a(k), then log(a(k)-1) on log k
    Birthday,      // mean people until a shared birthday vs number of days
};

ExperimentName parse_experiment_name(const std::string& text);
std::string to_string(ExperimentName name);
std::vector<ExperimentName> all_experiments();

// Per-recipe default seed; fresh clones reproduce the documented reports.
std::uint64_t default_seed(ExperimentName name);

struct ExperimentSpec {
    ExperimentName name{ExperimentName::LogModel};
    std::uint64_t seed{0};
    std::map<std::string, long> overrides;

    static ExperimentSpec with_defaults(ExperimentName name);
    // Rejects override keys the recipe does not declare.
    void validate() const;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::map<std::string, long> parameters; // resolved defaults + overrides
    std::vector<RegressionFit> fits;
    std::string data_path;
    std::vector<std::string> aux_paths;
    std::string summary;
};

// Executes the named recipe, writes its plot-ready CSV data under out_dir,
// and returns the fit report. Deterministic per (name, seed, overrides).
ExperimentReport run_experiment(const ExperimentSpec& spec, const std::string& out_dir);

std::string report_json(const ExperimentReport& report);
std::string fit_json(const RegressionFit& fit);

} // namespace gtp
