#include "gtp/exact.hpp"

#include <stdexcept>

namespace gtp {

Rational make_rational(const ExactInt& num, const ExactInt& den) {
    if (den == 0) {
        throw std::invalid_argument("make_rational: zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    return make_rational(ExactInt(num), ExactInt(den));
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& text) {
    mpq_t raw;
    mpq_init(raw);
    if (text.empty() || mpq_set_str(raw, text.c_str(), 10) != 0) {
        mpq_clear(raw);
        throw std::invalid_argument("rational_from_string: cannot parse '" + text + "'");
    }
    if (mpz_sgn(mpq_denref(raw)) == 0) {
        mpq_clear(raw);
        throw std::invalid_argument("rational_from_string: zero denominator in '" + text + "'");
    }
    mpq_canonicalize(raw);
    Rational q(raw);
    mpq_clear(raw);
    return q;
}

ExactInt round_nearest(const Rational& q) {
    // floor(q + 1/2): ties round up.
    Rational shifted = q + make_rational(1, 2);
    ExactInt out;
    mpz_fdiv_q(out.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return out;
}

ExactInt round_ceil(const Rational& q) {
    ExactInt out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

} // namespace gtp
