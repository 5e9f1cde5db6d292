#pragma once

#include "gtp/distributions.hpp"
#include "gtp/exact.hpp"

#include <optional>
#include <vector>

namespace gtp {

enum class Method { KnownMin, UnknownMin };

// A without-replacement observation of distinct serial numbers, with the
// statistics both estimators consume. Serials are stored sorted ascending.
struct SerialSample {
    std::vector<long> serials;
    long k{0};
    long m_min{0};
    long m_max{0};
    long spread{0};

    // Validates: nonempty, positive, pairwise distinct.
    static SerialSample from_serials(std::vector<long> values);

    bool operator==(const SerialSample& other) const = default;
};

struct Estimate {
    Method method{Method::KnownMin};
    Rational value;        // estimated population size, exact
    long k_used{0};
    long statistic_used{0}; // m for KnownMin, s for UnknownMin
};

// N-hat = m (1 + 1/k) - 1, for a maximum m observed on the 1..N scale.
Estimate estimate_known_min(long m, long k);

// N-hat = s (1 + 2/(k-1)) - 1, for an observed spread s. Requires k >= 2.
Estimate estimate_unknown_min(long s, long k);

// Dispatches on method. KnownMin normalizes by the supplied smallest possible
// serial (m := m_max - known_min + 1); UnknownMin ignores known_min and uses
// the spread. A sample of one is a hard error for UnknownMin, not a fallback.
Estimate estimate_from_sample(const SerialSample& sample, Method method,
                              std::optional<long> known_min = std::nullopt);

// The linear inversions N = E[M](1 + 1/k) - 1 and N = E[S](k+1)/(k-1) - 1.
// The integer-statistic estimators above are specializations of this.
Rational invert_expectation(const Rational& observed, long k, Variable variable);

} // namespace gtp
