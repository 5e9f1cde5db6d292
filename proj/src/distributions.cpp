#include "gtp/distributions.hpp"

#include "gtp/combinatorics.hpp"

#include <omp.h>

#include <numeric>
#include <stdexcept>
#include <string>

namespace gtp {

namespace {

constexpr long kEnumerationGuard = 10'000'000;

void check_k(const PopulationModel& pop, long k, long k_min, const char* who) {
    if (k < k_min || k > pop.n) {
        throw std::invalid_argument(std::string(who) + ": k = " + std::to_string(k) +
                                    " out of range [" + std::to_string(k_min) + ", " +
                                    std::to_string(pop.n) + "]");
    }
}

// Walks k-element subsets of {1..n} in lexicographic order, tallying the
// statistic of each; tally[i] counts subsets with statistic == lo + i.
// A subset is represented by its sorted elements c[0] < ... < c[k-1], so the
// max is c[k-1] and the spread is c[k-1] - c[0].
void enumerate_subsets(long n, long k, Variable variable, long lo,
                       std::vector<long long>& tally) {
    std::vector<long> c(static_cast<size_t>(k));
    std::iota(c.begin(), c.end(), 1L);
    const size_t last = static_cast<size_t>(k) - 1;
    while (true) {
        long stat = (variable == Variable::Max) ? c[last] : c[last] - c[0];
        ++tally[static_cast<size_t>(stat - lo)];

        // Advance the odometer: bump the rightmost index that still has room.
        size_t i = last;
        while (c[i] == n - static_cast<long>(last - i)) {
            if (i == 0) {
                return;
            }
            --i;
        }
        ++c[i];
        for (size_t j = i + 1; j <= last; ++j) {
            c[j] = c[j - 1] + 1;
        }
    }
}

// Subsets of {1..n} with minimum element v, tallied as above. Choosing the
// remaining k-1 elements from {v+1..n} covers each subset exactly once, so
// different v values partition the enumeration and can run concurrently.
void enumerate_subsets_with_min(long n, long k, long v, Variable variable, long lo,
                                std::vector<long long>& tally) {
    if (k == 1) {
        long stat = (variable == Variable::Max) ? v : 0;
        ++tally[static_cast<size_t>(stat - lo)];
        return;
    }
    std::vector<long> c(static_cast<size_t>(k));
    c[0] = v;
    std::iota(c.begin() + 1, c.end(), v + 1);
    const size_t last = static_cast<size_t>(k) - 1;
    while (true) {
        long stat = (variable == Variable::Max) ? c[last] : c[last] - v;
        ++tally[static_cast<size_t>(stat - lo)];

        size_t i = last;
        while (c[i] == n - static_cast<long>(last - i)) {
            if (i == 1) {
                return;
            }
            --i;
        }
        ++c[i];
        for (size_t j = i + 1; j <= last; ++j) {
            c[j] = c[j - 1] + 1;
        }
    }
}

PmfTable table_from_tallies(const PopulationModel& pop, long k, Variable variable,
                            long lo, long hi, const std::vector<long long>& tally) {
    ExactInt denom = binom(pop.n, k);
    PmfTable table;
    table.variable = variable;
    table.k = k;
    table.support_lo = lo;
    table.support_hi = hi;
    table.probs.reserve(tally.size());
    for (long long count : tally) {
        table.probs.push_back(make_rational(ExactInt(static_cast<long>(count)), denom));
    }
    return table;
}

void check_guard(const PopulationModel& pop, long k) {
    if (binom(pop.n, k) > kEnumerationGuard) {
        throw std::invalid_argument("brute_force_table: C(" + std::to_string(pop.n) + ", " +
                                    std::to_string(k) + ") exceeds the enumeration guard of " +
                                    std::to_string(kEnumerationGuard) + " subsets");
    }
}

std::pair<long, long> support_bounds(const PopulationModel& pop, long k, Variable variable) {
    if (variable == Variable::Max) {
        return {k, pop.n};
    }
    return {k - 1, pop.n - 1};
}

} // namespace

PopulationModel::PopulationModel(long first, long last) : n1(first), n2(last), n(last - first + 1) {
    if (first < 1) {
        throw std::invalid_argument("PopulationModel: n1 must be positive");
    }
    if (last < first) {
        throw std::invalid_argument("PopulationModel: n2 must be >= n1");
    }
}

Rational PmfTable::prob(long value) const {
    if (value < support_lo || value > support_hi) {
        return Rational(0);
    }
    return probs[static_cast<size_t>(value - support_lo)];
}

Rational PmfTable::total() const {
    Rational sum(0);
    for (const Rational& p : probs) {
        sum += p;
    }
    return sum;
}

Rational PmfTable::mean() const {
    Rational sum(0);
    for (long v = support_lo; v <= support_hi; ++v) {
        sum += Rational(v) * probs[static_cast<size_t>(v - support_lo)];
    }
    return sum;
}

Rational max_pmf(const PopulationModel& pop, long k, long m) {
    check_k(pop, k, 1, "max_pmf");
    if (m < k || m > pop.n) {
        return Rational(0);
    }
    return make_rational(binom(m - 1, k - 1), binom(pop.n, k));
}

Rational max_pmf_via_cdf(const PopulationModel& pop, long k, long m) {
    check_k(pop, k, 1, "max_pmf_via_cdf");
    if (m < k || m > pop.n) {
        return Rational(0);
    }
    return make_rational(binom(m, k) - binom(m - 1, k), binom(pop.n, k));
}

Rational expected_max(const PopulationModel& pop, long k) {
    check_k(pop, k, 1, "expected_max");
    return make_rational(ExactInt(k) * (pop.n + 1), ExactInt(k + 1));
}

Rational spread_pmf(const PopulationModel& pop, long k, long s) {
    check_k(pop, k, 2, "spread_pmf");
    if (s < k - 1 || s > pop.n - 1) {
        return Rational(0);
    }
    return make_rational(ExactInt(pop.n - s) * binom(s - 1, k - 2), binom(pop.n, k));
}

Rational expected_spread(const PopulationModel& pop, long k) {
    check_k(pop, k, 2, "expected_spread");
    return make_rational(ExactInt(pop.n + 1) * (k - 1), ExactInt(k + 1));
}

PmfTable pmf_table(const PopulationModel& pop, long k, Variable variable) {
    check_k(pop, k, variable == Variable::Max ? 1 : 2, "pmf_table");
    auto [lo, hi] = support_bounds(pop, k, variable);
    PmfTable table;
    table.variable = variable;
    table.k = k;
    table.support_lo = lo;
    table.support_hi = hi;
    table.probs.reserve(static_cast<size_t>(hi - lo + 1));
    for (long v = lo; v <= hi; ++v) {
        table.probs.push_back(variable == Variable::Max ? max_pmf(pop, k, v)
                                                        : spread_pmf(pop, k, v));
    }
    return table;
}

PmfTable brute_force_table_serial(const PopulationModel& pop, long k, Variable variable) {
    check_k(pop, k, variable == Variable::Max ? 1 : 2, "brute_force_table");
    check_guard(pop, k);
    auto [lo, hi] = support_bounds(pop, k, variable);
    std::vector<long long> tally(static_cast<size_t>(hi - lo + 1), 0);
    enumerate_subsets(pop.n, k, variable, lo, tally);
    return table_from_tallies(pop, k, variable, lo, hi, tally);
}

PmfTable brute_force_table(const PopulationModel& pop, long k, Variable variable) {
    check_k(pop, k, variable == Variable::Max ? 1 : 2, "brute_force_table");
    check_guard(pop, k);
    auto [lo, hi] = support_bounds(pop, k, variable);
    const size_t width = static_cast<size_t>(hi - lo + 1);
    std::vector<long long> tally(width, 0);

#pragma omp parallel
    {
        std::vector<long long> local(width, 0);
#pragma omp for schedule(dynamic) nowait
        for (long v = 1; v <= pop.n - k + 1; ++v) {
            enumerate_subsets_with_min(pop.n, k, v, variable, lo, local);
        }
#pragma omp critical
        {
            for (size_t i = 0; i < width; ++i) {
                tally[i] += local[i];
            }
        }
    }
    return table_from_tallies(pop, k, variable, lo, hi, tally);
}

} // namespace gtp
