// Times the OpenMP kernels against their serial reference implementations
// and verifies both produce identical results.

#include "gtp/distributions.hpp"
#include "gtp/simulator.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace gtp;

namespace {

template <typename F>
double time_seconds(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    long trials = argc > 1 ? std::atol(argv[1]) : 200000;
    std::cout << "threads available: " << omp_get_max_threads() << "\n\n";

    SimulationConfig config;
    config.seed = 7;
    config.trials = trials;
    config.n_range = {100, 2000};
    config.k_range = {10, 50};

    RunSummary serial, parallel;
    double t_serial = time_seconds([&] { serial = run_trials_serial(config); });
    double t_parallel = time_seconds([&] { parallel = run_trials(config); });
    bool match = serial.records == parallel.records;
    std::cout << "run_trials, " << trials << " trials\n"
              << "  serial:   " << t_serial << " s\n"
              << "  parallel: " << t_parallel << " s  (speedup " << t_serial / t_parallel
              << "x)\n"
              << "  results identical: " << (match ? "yes" : "NO") << "\n\n";

    PopulationModel pop = PopulationModel::of_size(25);
    PmfTable ref, par;
    double t_bruteser = time_seconds([&] { ref = brute_force_table_serial(pop, 12, Variable::Spread); });
    double t_brutepar = time_seconds([&] { par = brute_force_table(pop, 12, Variable::Spread); });
    bool brute_match = ref == par;
    std::cout << "brute_force_table, N=25 k=12 (5.2M subsets)\n"
              << "  serial:   " << t_bruteser << " s\n"
              << "  parallel: " << t_brutepar << " s  (speedup " << t_bruteser / t_brutepar
              << "x)\n"
              << "  results identical: " << (brute_match ? "yes" : "NO") << "\n";

    return match && brute_match ? 0 : 1;
}
