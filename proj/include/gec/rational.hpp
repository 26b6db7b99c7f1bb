#pragma once

/// Exact arbitrary-precision integers and rationals.
///
/// Rational is GMP's canonical mpq_class: always in lowest terms with a
/// positive denominator, and every operation is exact. It is the coefficient
/// field for all symbolic work in this library.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace gec {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parse "a/b" or "a". Throws on malformed input.
inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }

namespace detail {

inline Rational pow_rational(const Rational& base, long e) {
    Rational r(1);
    Rational b = base;
    long n = e;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

/// 2^-e as an exact rational, e >= 0.
inline Rational pow2_inv(long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return Rational(1) / Rational(p);
}

}  // namespace detail

}  // namespace gec
