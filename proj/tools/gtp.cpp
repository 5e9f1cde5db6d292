#include "gtp/combinatorics.hpp"
#include "gtp/csv.hpp"
#include "gtp/distributions.hpp"
#include "gtp/estimators.hpp"
#include "gtp/experiments.hpp"
#include "gtp/regression.hpp"
#include "gtp/simulator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Flag combinations CLI11 cannot express on its own; exits 2 like any
// other usage error.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

gtp::IntRange parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        long v = std::stol(text);
        return {v, v};
    }
    return {std::stol(text.substr(0, colon)), std::stol(text.substr(colon + 1))};
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (!token.empty()) {
            values.push_back(std::stol(token));
        }
    }
    return values;
}

std::vector<long> read_serials(const std::string& serials_arg, const std::string& file_arg) {
    std::string raw;
    if (!serials_arg.empty()) {
        raw = serials_arg;
    } else if (file_arg == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        raw = buf.str();
    } else if (!file_arg.empty()) {
        raw = gtp::read_text_file(file_arg);
    } else {
        throw UsageError("estimate: provide --serials or --file");
    }
    for (char& c : raw) {
        if (c == ',' || c == '\n' || c == '\r' || c == '\t') {
            c = ' ';
        }
    }
    std::vector<long> values;
    std::istringstream in(raw);
    long v = 0;
    while (in >> v) {
        values.push_back(v);
    }
    if (values.empty()) {
        throw std::invalid_argument("estimate: no serial numbers given");
    }
    return values;
}

void write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        gtp::write_text_file(out_path, content);
    }
}

// ---------------------------------------------------------------------------
// pmf

int cmd_pmf(const std::string& variable_arg, long n, long n1, long n2, long k,
            const std::string& format, const std::string& out_path) {
    gtp::Variable variable =
        variable_arg == "max" ? gtp::Variable::Max : gtp::Variable::Spread;
    gtp::PopulationModel pop = n > 0 ? gtp::PopulationModel::of_size(n)
                                     : gtp::PopulationModel(n1, n2);
    gtp::PmfTable table = gtp::pmf_table(pop, k, variable);
    if (format == "csv") {
        write_or_print(out_path, gtp::pmf_table_csv(table));
        return 0;
    }
    json j;
    j["variable"] = variable_arg;
    j["n"] = pop.n;
    j["k"] = k;
    json entries = json::array();
    for (long v = table.support_lo; v <= table.support_hi; ++v) {
        const gtp::Rational& p = table.probs[static_cast<size_t>(v - table.support_lo)];
        json e;
        e["value"] = v;
        e["numerator"] = p.get_num().get_str();
        e["denominator"] = p.get_den().get_str();
        e["prob"] = gtp::to_double(p);
        entries.push_back(e);
    }
    j["entries"] = entries;
    write_or_print(out_path, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// estimate

int cmd_estimate(const std::string& method_arg, const std::string& serials_arg,
                 const std::string& file_arg, long known_min, const std::string& round_mode) {
    auto sample = gtp::SerialSample::from_serials(read_serials(serials_arg, file_arg));
    gtp::Method method =
        method_arg == "known-min" ? gtp::Method::KnownMin : gtp::Method::UnknownMin;
    gtp::Estimate est = gtp::estimate_from_sample(
        sample, method,
        method == gtp::Method::KnownMin ? std::optional<long>(known_min) : std::nullopt);

    json j;
    j["method"] = method_arg;
    j["k"] = est.k_used;
    j["statistic"] = est.statistic_used;
    j["estimate_rational"] = gtp::to_string(est.value);
    j["estimate_float"] = gtp::to_double(est.value);
    if (round_mode == "nearest") {
        j["estimate_rounded"] = gtp::round_nearest(est.value).get_str();
    } else if (round_mode == "ceil") {
        j["estimate_rounded"] = gtp::round_ceil(est.value).get_str();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(std::uint64_t seed, long trials, const std::string& n_range_arg,
                 const std::string& k_range_arg, long n1, const std::string& out_dir) {
    gtp::SimulationConfig config;
    config.seed = seed;
    config.trials = trials;
    config.n_range = parse_range(n_range_arg);
    config.k_range = parse_range(k_range_arg);
    config.n1 = n1;
    gtp::RunSummary run = gtp::run_trials(config);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + out_dir + "'");
    }
    std::string csv_path = (fs::path(out_dir) / "trials.csv").string();
    gtp::write_text_file(csv_path, gtp::trials_csv(run.records));

    json j;
    j["seed"] = config.seed;
    j["trials"] = config.trials;
    j["n_range"] = {config.n_range.lo, config.n_range.hi};
    j["k_range"] = {config.k_range.lo, config.k_range.hi};
    j["n1"] = config.n1;
    j["mean_est_known"] = run.mean_est_known;
    j["mean_est_unknown"] = run.mean_est_unknown; // NaN dumps as null
    j["mean_max"] = run.mean_max;
    j["mean_spread"] = run.mean_spread;
    j["records_csv"] = "trials.csv"; // next to this summary, wherever it lands
    std::string summary = j.dump(2) + "\n";
    gtp::write_text_file((fs::path(out_dir) / "summary.json").string(), summary);
    std::cout << summary;
    return 0;
}

// ---------------------------------------------------------------------------
// regress

double column_value(const gtp::TrialRow& row, const std::string& column) {
    if (column == "trial_index") return static_cast<double>(row.trial_index);
    if (column == "n_true") return static_cast<double>(row.n_true);
    if (column == "k") return static_cast<double>(row.k);
    if (column == "m_min") return static_cast<double>(row.m_min);
    if (column == "m_max") return static_cast<double>(row.m_max);
    if (column == "spread") return static_cast<double>(row.spread);
    if (column == "est_known") return gtp::to_double(row.est_known);
    if (column == "est_unknown") {
        if (!row.est_unknown.has_value()) {
            throw std::invalid_argument("regress: est_unknown missing in some rows");
        }
        return gtp::to_double(*row.est_unknown);
    }
    // Derived columns so the ratio model is expressible straight from the CLI.
    if (column == "m_over_k") {
        return static_cast<double>(row.m_max) / static_cast<double>(row.k);
    }
    if (column == "n_minus_m") return static_cast<double>(row.n_true - row.m_max);
    throw std::invalid_argument("regress: unknown column '" + column + "'");
}

json fit_to_json(const gtp::RegressionFit& fit) {
    return json::parse(gtp::fit_json(fit));
}

int cmd_regress(const std::string& input, const std::string& model, const std::string& x_col,
                const std::string& y_col, bool no_intercept, const std::string& k_values_arg,
                const std::string& out_dir) {
    auto rows = gtp::parse_trials_csv(gtp::read_text_file(input));
    if (rows.empty()) {
        throw std::invalid_argument("regress: input has no data rows");
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + out_dir + "'");
    }
    std::string fit_csv_path = (fs::path(out_dir) / "regress_fit.csv").string();
    std::ostringstream csv;
    json out;
    out["input"] = input;
    out["model"] = model;

    if (model == "simple" || model == "power") {
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(rows.size());
        for (const auto& row : rows) {
            pairs.emplace_back(column_value(row, x_col), column_value(row, y_col));
        }
        gtp::RegressionFit fit;
        if (model == "power") {
            fit = gtp::fit_power_law(pairs);
        } else if (no_intercept) {
            gtp::DesignMatrix design;
            design.feature_names = {"a"};
            design.features.assign(1, {});
            for (const auto& [x, y] : pairs) {
                design.features[0].push_back(x);
                design.response.push_back(y);
            }
            fit = gtp::fit_linear(design);
        } else {
            fit = gtp::fit_simple(pairs);
        }
        out["x"] = x_col;
        out["y"] = y_col;
        out["fit"] = fit_to_json(fit);
        csv << "x,y,fitted,residual\n";
        for (const auto& [x, y] : pairs) {
            double fitted = 0.0;
            if (model == "power") {
                fitted = fit.coef("B") * std::pow(x, fit.coef("a"));
            } else if (no_intercept) {
                fitted = fit.coef("a") * x;
            } else {
                fitted = fit.coef("a") * x + fit.coef("b");
            }
            csv << gtp::format_double(x) << ',' << gtp::format_double(y) << ','
                << gtp::format_double(fitted) << ',' << gtp::format_double(y - fitted) << '\n';
        }
    } else if (model == "log") {
        gtp::RegressionFit fit = gtp::fit_log_model(rows);
        out["fit"] = fit_to_json(fit);
        csv << "log_m,inv_k,log_n,fitted,residual\n";
        for (const auto& row : rows) {
            double lm = std::log(static_cast<double>(row.m_max));
            double ik = 1.0 / static_cast<double>(row.k);
            double ln = std::log(static_cast<double>(row.n_true));
            double fitted = fit.coef("a") * lm + fit.coef("b") * ik;
            csv << gtp::format_double(lm) << ',' << gtp::format_double(ik) << ','
                << gtp::format_double(ln) << ',' << gtp::format_double(fitted) << ','
                << gtp::format_double(ln - fitted) << '\n';
        }
    } else if (model == "per-k") {
        std::vector<long> ks = parse_long_list(k_values_arg);
        if (ks.empty()) {
            std::set<long> distinct;
            for (const auto& row : rows) {
                distinct.insert(row.k);
            }
            ks.assign(distinct.begin(), distinct.end());
        }
        auto fits = gtp::fit_per_k_slopes(rows, ks);
        std::map<long, gtp::PerKFit> by_k;
        json entries = json::array();
        for (const auto& f : fits) {
            json e;
            e["k"] = f.k;
            e["singular"] = f.singular;
            if (!f.singular) {
                e["slope"] = f.slope;
                e["intercept"] = f.intercept;
            }
            entries.push_back(e);
            by_k[f.k] = f;
        }
        out["entries"] = entries;
        csv << "k,x,y,fitted,residual\n";
        for (const auto& row : rows) {
            auto it = by_k.find(row.k);
            if (it == by_k.end()) {
                continue;
            }
            double x = static_cast<double>(row.m_max);
            double y = static_cast<double>(row.n_true);
            csv << row.k << ',' << gtp::format_double(x) << ',' << gtp::format_double(y) << ',';
            if (!it->second.singular) {
                double fitted = it->second.slope * x + it->second.intercept;
                csv << gtp::format_double(fitted) << ',' << gtp::format_double(y - fitted);
            } else {
                csv << ',';
            }
            csv << '\n';
        }
    } else {
        throw std::invalid_argument("regress: unknown model '" + model + "'");
    }

    gtp::write_text_file(fit_csv_path, csv.str());
    out["fit_csv"] = fit_csv_path;
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// experiment

int cmd_experiment(const std::string& name_arg, std::optional<std::uint64_t> seed,
                   const std::vector<std::string>& overrides, const std::string& out_dir) {
    gtp::ExperimentSpec spec = gtp::ExperimentSpec::with_defaults(gtp::parse_experiment_name(name_arg));
    if (seed.has_value()) {
        spec.seed = *seed;
    }
    for (const std::string& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw UsageError("experiment: --set expects key=value, got '" + kv + "'");
        }
        spec.overrides[kv.substr(0, eq)] = std::stol(kv.substr(eq + 1));
    }
    gtp::ExperimentReport report = gtp::run_experiment(spec, out_dir);
    std::string text = gtp::report_json(report);
    gtp::write_text_file((fs::path(out_dir) / (name_arg + "-report.json")).string(), text);
    std::cout << text;
    return 0;
}

// ---------------------------------------------------------------------------
// selfcheck: the exact-arithmetic invariant suite

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
    if (!ok) {
        throw CheckFailure(what);
    }
}

int cmd_selfcheck(long n_max) {
    using namespace gtp;

    // Binomial identities on a quick range; the acceptance suite runs the
    // full 200 sweep.
    for (long n = 0; n <= 60; ++n) {
        auto row = pascal_row(n);
        for (long r = 0; r <= n; ++r) {
            check(binom(n, r) == row[static_cast<size_t>(r)], "binom vs pascal row");
            if (r >= 1) {
                check(binom(n + 1, r) == binom(n, r) + binom(n, r - 1), "pascal identity");
            }
        }
    }
    for (long a = 0; a <= 60; ++a) {
        for (long b = a; b <= 60; ++b) {
            check(hockey_stick(a, b) == binom(b + 1, a + 1), "hockey stick identity");
        }
    }
    std::cout << "[ok] binomial identities (n <= 60)\n";

    for (long n = 1; n <= n_max; ++n) {
        PopulationModel pop = PopulationModel::of_size(n);
        for (long k = 1; k <= n; ++k) {
            PmfTable closed = pmf_table(pop, k, Variable::Max);
            PmfTable brute = brute_force_table(pop, k, Variable::Max);
            check(closed.total() == 1, "max pmf sums to 1");
            for (long m = closed.support_lo - 2; m <= closed.support_hi + 2; ++m) {
                check(max_pmf(pop, k, m) == max_pmf_via_cdf(pop, k, m), "max pmf two routes");
                check(max_pmf(pop, k, m) == brute.prob(m), "max pmf vs enumeration");
            }
            check(closed.mean() == expected_max(pop, k), "E[M] closed form");

            Rational est_mean(0);
            for (long m = k; m <= n; ++m) {
                est_mean += estimate_known_min(m, k).value * max_pmf(pop, k, m);
            }
            check(est_mean == n, "known-min estimator unbiased");

            if (k >= 2) {
                PmfTable sclosed = pmf_table(pop, k, Variable::Spread);
                PmfTable sbrute = brute_force_table(pop, k, Variable::Spread);
                check(sclosed == sbrute, "spread pmf vs enumeration");
                check(sclosed.total() == 1, "spread pmf sums to 1");
                check(sclosed.mean() == expected_spread(pop, k), "E[S] closed form");

                Rational sest(0);
                for (long s = k - 1; s <= n - 1; ++s) {
                    sest += estimate_unknown_min(s, k).value * spread_pmf(pop, k, s);
                }
                check(sest == n, "unknown-min estimator unbiased");
            }

            check(invert_expectation(expected_max(pop, k), k, Variable::Max) == n,
                  "expectation inversion (max)");
            if (k >= 2) {
                check(invert_expectation(expected_spread(pop, k), k, Variable::Spread) == n,
                      "expectation inversion (spread)");
            }
        }
        for (long k = 2; k <= n; ++k) {
            check(expected_max(pop, k) > expected_max(pop, k - 1), "E[M] increasing in k");
        }
    }
    std::cout << "[ok] pmf equivalences, expectations, unbiasedness (N <= " << n_max << ")\n";

    PopulationModel shifted(101, 110);
    PopulationModel base = PopulationModel::of_size(10);
    check(pmf_table(shifted, 3, Variable::Max) == pmf_table(base, 3, Variable::Max),
          "translation invariance (max)");
    check(pmf_table(shifted, 3, Variable::Spread) == pmf_table(base, 3, Variable::Spread),
          "translation invariance (spread)");
    std::cout << "[ok] translation invariance\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"German Tank Problem toolkit: exact order-statistic distributions, "
                 "closed-form population estimators, seeded simulation, and the "
                 "least-squares experiments built on them"};
    app.require_subcommand(1);

    // pmf
    auto* pmf = app.add_subcommand("pmf", "Exact PMF of the sample maximum or spread");
    std::string pmf_variable;
    long pmf_n = 0, pmf_n1 = 0, pmf_n2 = 0, pmf_k = 0;
    std::string pmf_format = "csv", pmf_out;
    pmf->add_option("--variable", pmf_variable, "max or spread")
        ->required()
        ->check(CLI::IsMember({"max", "spread"}));
    pmf->add_option("--n", pmf_n, "population size (serials 1..N)");
    pmf->add_option("--n1", pmf_n1, "smallest serial (with --n2)");
    pmf->add_option("--n2", pmf_n2, "largest serial (with --n1)");
    pmf->add_option("--k", pmf_k, "sample size")->required();
    pmf->add_option("--format", pmf_format)->check(CLI::IsMember({"csv", "json"}));
    pmf->add_option("--out", pmf_out, "output file (default: stdout)");

    // estimate
    auto* est = app.add_subcommand("estimate", "Point estimate of N from observed serials");
    std::string est_method, est_serials, est_file, est_round = "none";
    long est_known_min = 1;
    est->add_option("--method", est_method)
        ->required()
        ->check(CLI::IsMember({"known-min", "unknown-min"}));
    est->add_option("--serials", est_serials, "comma-separated serial numbers");
    est->add_option("--file", est_file, "file of serials, one per line ('-' for stdin)");
    est->add_option("--known-min", est_known_min, "smallest possible serial (known-min only)");
    est->add_option("--round", est_round)->check(CLI::IsMember({"none", "nearest", "ceil"}));

    // simulate
    auto* sim = app.add_subcommand("simulate", "Seeded Monte-Carlo trials with both estimators");
    std::uint64_t sim_seed = 1942;
    long sim_trials = 10000, sim_n1 = 1;
    std::string sim_n_range = "100:2000", sim_k_range = "10:50", sim_out_dir = ".";
    sim->add_option("--seed", sim_seed);
    sim->add_option("--trials", sim_trials);
    sim->add_option("--n-range", sim_n_range, "inclusive lo:hi for N");
    sim->add_option("--k-range", sim_k_range, "inclusive lo:hi for k");
    sim->add_option("--n1", sim_n1, "first serial number of the population");
    sim->add_option("--out-dir", sim_out_dir);

    // regress
    auto* reg = app.add_subcommand("regress", "Least-squares fits over a trials CSV");
    std::string reg_input, reg_model, reg_x = "m_max", reg_y = "n_true", reg_kvals,
                reg_out_dir = ".";
    bool reg_no_intercept = false;
    reg->add_option("--input", reg_input, "trials CSV (simulate output)")->required();
    reg->add_option("--model", reg_model)
        ->required()
        ->check(CLI::IsMember({"simple", "log", "power", "per-k"}));
    reg->add_option("--x", reg_x, "x column (simple/power)");
    reg->add_option("--y", reg_y, "y column (simple/power)");
    reg->add_flag("--no-intercept", reg_no_intercept, "fit y = a*x (simple only)");
    reg->add_option("--k-values", reg_kvals, "comma-separated k list (per-k only)");
    reg->add_option("--out-dir", reg_out_dir);

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a named reproduction recipe");
    std::string exp_name, exp_out_dir = ".";
    std::optional<std::uint64_t> exp_seed;
    std::vector<std::string> exp_sets;
    exp->add_option("--name", exp_name,
                    "naive-ratio-fit | fixed-k-forward | fixed-k-reverse | averaged-max | "
                    "log-model | sniff-k | birthday")
        ->required();
    exp->add_option("--seed", exp_seed, "override the recipe's default seed");
    exp->add_option("--set", exp_sets, "override a recipe parameter, key=value")
        ->take_all();
    exp->add_option("--out-dir", exp_out_dir);

    // selfcheck
    auto* self = app.add_subcommand("selfcheck", "Exact-arithmetic invariant suite");
    long self_n_max = 25;
    self->add_option("--n-max", self_n_max, "largest population size to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 2;
    }

    try {
        if (pmf->parsed()) {
            if ((pmf_n > 0) == (pmf_n1 > 0 || pmf_n2 > 0)) {
                throw UsageError("pmf: give either --n or both --n1 and --n2");
            }
            return cmd_pmf(pmf_variable, pmf_n, pmf_n1, pmf_n2, pmf_k, pmf_format, pmf_out);
        }
        if (est->parsed()) {
            return cmd_estimate(est_method, est_serials, est_file, est_known_min, est_round);
        }
        if (sim->parsed()) {
            return cmd_simulate(sim_seed, sim_trials, sim_n_range, sim_k_range, sim_n1,
                                sim_out_dir);
        }
        if (reg->parsed()) {
            return cmd_regress(reg_input, reg_model, reg_x, reg_y, reg_no_intercept, reg_kvals,
                               reg_out_dir);
        }
        if (exp->parsed()) {
            return cmd_experiment(exp_name, exp_seed, exp_sets, exp_out_dir);
        }
        if (self->parsed()) {
            return cmd_selfcheck(self_n_max);
        }
    } catch (const UsageError& e) {
        nlohmann::json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
