#pragma once

#include "gtp/exact.hpp"

#include <vector>

namespace gtp {

// C(n, r) by the multiplicative formula with exact intermediate division:
// product over i of (n - r + i) / i, so intermediates never exceed the
// result. Returns 0 for r < 0 or r > n. Requires n >= 0.
ExactInt binom(long n, long r);

// Row n of Pascal's triangle built purely from the additive recurrence
// C(n+1, r) = C(n, r) + C(n, r-1). Independent of binom's multiplicative
// route, so the two can cross-check each other.
std::vector<ExactInt> pascal_row(long n);

// C(n, r) looked up from pascal_row. Returns 0 for r < 0 or r > n.
ExactInt binom_via_pascal(long n, long r);

// Sum_{l=a}^{b} C(l, a), accumulated term by term (successive terms via
// C(l, a) = C(l-1, a) * l / (l - a)). The closed form C(b+1, a+1) is never
// used here, so tests can compare the two sides. Requires 0 <= a <= b.
ExactInt hockey_stick(long a, long b);

} // namespace gtp
