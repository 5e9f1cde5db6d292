#include "gtp/combinatorics.hpp"

#include <stdexcept>

namespace gtp {

ExactInt binom(long n, long r) {
    if (n < 0) {
        throw std::invalid_argument("binom: n must be nonnegative");
    }
    if (r < 0 || r > n) {
        return ExactInt(0);
    }
    if (r > n - r) {
        r = n - r;
    }
    ExactInt result(1);
    for (long i = 1; i <= r; ++i) {
        result *= (n - r + i);
        mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return result;
}

std::vector<ExactInt> pascal_row(long n) {
    if (n < 0) {
        throw std::invalid_argument("pascal_row: n must be nonnegative");
    }
    std::vector<ExactInt> row(static_cast<size_t>(n) + 1);
    row[0] = 1;
    for (long m = 1; m <= n; ++m) {
        row[static_cast<size_t>(m)] = 1;
        for (long r = m - 1; r >= 1; --r) {
            row[static_cast<size_t>(r)] += row[static_cast<size_t>(r) - 1];
        }
    }
    return row;
}

ExactInt binom_via_pascal(long n, long r) {
    if (n < 0) {
        throw std::invalid_argument("binom_via_pascal: n must be nonnegative");
    }
    if (r < 0 || r > n) {
        return ExactInt(0);
    }
    return pascal_row(n)[static_cast<size_t>(r)];
}

ExactInt hockey_stick(long a, long b) {
    if (a < 0 || b < a) {
        throw std::invalid_argument("hockey_stick: requires 0 <= a <= b");
    }
    ExactInt term(1); // C(a, a)
    ExactInt sum(1);
    for (long l = a + 1; l <= b; ++l) {
        term *= l;
        mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(l - a));
        sum += term;
    }
    return sum;
}

} // namespace gtp
