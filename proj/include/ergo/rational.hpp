#pragma once

// Exact rational arithmetic for the finite regime. Backed by GMP; every
// value is kept in canonical form so == is structural equality.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ergo {

using Rational = mpq_class;

inline Rational make_ratio(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q" with arbitrary-precision components.
inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational: '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

// Canonical "p/q", or plain "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational positive_part(const Rational& q) { return q > 0 ? q : Rational(0); }

inline Rational negative_part(const Rational& q) { return q < 0 ? Rational(-q) : Rational(0); }

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Smallest integer >= q, as a plain long (callers bound q well below overflow).
inline long ceil_to_long(const Rational& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z.get_si();
}

}  // namespace ergo
