#pragma once

#include "gtp/exact.hpp"

#include <vector>

namespace gtp {

enum class Variable { Max, Spread };

// Consecutively numbered population [n1, n2]. Every distribution below
// depends on n1, n2 only through the count n = n2 - n1 + 1, so values are
// always computed on the normalized scale 1..n; translation invariance is
// a tested property rather than an offset threaded through the formulas.
struct PopulationModel {
    long n1;
    long n2;
    long n;

    PopulationModel(long first, long last);
    static PopulationModel of_size(long count) { return PopulationModel(1, count); }
};

// Exact probability table over the full support of one variable.
// Max support is [k, n]; Spread support is [k-1, n-1].
struct PmfTable {
    Variable variable{Variable::Max};
    long k{0};
    long support_lo{0};
    long support_hi{0};
    std::vector<Rational> probs; // indexed by value - support_lo

    // Probability at any integer value; exact 0 outside the support.
    Rational prob(long value) const;
    Rational total() const;
    Rational mean() const;

    bool operator==(const PmfTable& other) const = default;
};

// Prob(M = m): C(m-1, k-1) / C(n, k) on the support, exact 0 elsewhere.
Rational max_pmf(const PopulationModel& pop, long k, long m);

// Same distribution through the cumulative route,
// [C(m, k) - C(m-1, k)] / C(n, k); an independent oracle for max_pmf.
Rational max_pmf_via_cdf(const PopulationModel& pop, long k, long m);

// E[M] = k (n + 1) / (k + 1).
Rational expected_max(const PopulationModel& pop, long k);

// Prob(S = s): (n - s) C(s-1, k-2) / C(n, k) on the support, 0 elsewhere.
// Requires k >= 2: a single observation has no spread.
Rational spread_pmf(const PopulationModel& pop, long k, long s);

// E[S] = (n + 1)(k - 1) / (k + 1).
Rational expected_spread(const PopulationModel& pop, long k);

// Closed-form table over the whole support.
PmfTable pmf_table(const PopulationModel& pop, long k, Variable variable);

// Enumerates every k-subset of {1..n} and tallies the statistic; the
// ground-truth oracle for the closed forms. Guarded to C(n, k) <= 10^7.
// The default entry point splits the enumeration by smallest element across
// OpenMP threads; the serial walk is kept as the reference implementation.
PmfTable brute_force_table(const PopulationModel& pop, long k, Variable variable);
PmfTable brute_force_table_serial(const PopulationModel& pop, long k, Variable variable);

} // namespace gtp
