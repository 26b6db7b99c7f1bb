#pragma once

/// Exact integer/rational building blocks: factorials, binomials, Bernoulli
/// numbers, the even-zeta ratio b_m with zeta(2m) = b_m * zeta(2)^m, and the
/// reflection-series coefficients c_k with pi*t/sin(pi*t) = sum c_k (pi*t)^2k.
///
/// Everything here is exact; negative or otherwise out-of-contract inputs
/// throw rather than returning silent zeros, so indexing bugs in callers
/// surface early.

#include <gec/rational.hpp>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace gec {

inline Integer factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: n must be >= 0");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// C(n,k); returns 0 when k > n. Both arguments must be nonnegative.
inline Integer binomial(long n, long k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
    if (k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

namespace detail {

// Bernoulli cache, indexed by m: B_0, B_1, B_2, ...  Grown on demand under a
// lock; reads of already-present entries go through the same lock (cheap at
// this call volume).
class BernoulliTable {
  public:
    Rational get(long m) {
        std::lock_guard<std::mutex> guard(mu_);
        while (static_cast<long>(table_.size()) <= m) {
            const long i = static_cast<long>(table_.size());
            // sum_{j=0}^{i} C(i+1, j) B_j = 0  =>  solve for B_i.
            Rational acc(0);
            for (long j = 0; j < i; ++j)
                acc += Rational(binomial(i + 1, j)) * table_[j];
            table_.push_back(-acc / Rational(binomial(i + 1, i)));
        }
        return table_[m];
    }

  private:
    std::mutex mu_;
    std::vector<Rational> table_{Rational(1), Rational(-1, 2)};
};

inline BernoulliTable& bernoulli_table() {
    static BernoulliTable t;
    return t;
}

}  // namespace detail

/// The m-th Bernoulli number for even m >= 2 (B_1 = -1/2 convention inside
/// the recurrence; odd or nonpositive m is rejected per the module contract).
inline Rational bernoulli(long m) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("bernoulli: m must be even and >= 2");
    return detail::bernoulli_table().get(m);
}

/// All Bernoulli numbers B_0..B_m, for callers (Euler-Maclaurin) that need
/// the full prefix.
inline Rational bernoulli_any(long m) {
    if (m < 0) throw std::invalid_argument("bernoulli_any: m must be >= 0");
    return detail::bernoulli_table().get(m);
}

/// b_m with zeta(2m) = b_m * zeta(2)^m, from
/// zeta(2m) = (-1)^{m+1} 2^{3m-1} 3^m B_{2m} / (2m)! * zeta(2)^m.
inline Rational even_zeta_coeff(long m) {
    if (m < 2) throw std::invalid_argument("even_zeta_coeff: m must be >= 2");
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(3 * m - 1));
    Integer three_pow;
    mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, static_cast<unsigned long>(m));
    Rational b = Rational(two_pow * three_pow) * bernoulli(2 * m) / Rational(factorial(2 * m));
    if (m % 2 == 0) b = -b;
    return b;
}

namespace detail {

// Coefficients of s/sin(s) in u = s^2, computed by exact power-series
// inversion of sin(s)/s = sum_j (-1)^j u^j / (2j+1)!.
class ReflectionTable {
  public:
    Rational get(long k) {
        std::lock_guard<std::mutex> guard(mu_);
        while (static_cast<long>(c_.size()) <= k) {
            const long i = static_cast<long>(c_.size());
            Rational acc(0);
            for (long j = 1; j <= i; ++j) acc += a(j) * c_[i - j];
            c_.push_back(-acc);  // a(0) = 1
        }
        return c_[k];
    }

  private:
    static Rational a(long j) {
        Rational r(1, 1);
        r /= Rational(factorial(2 * j + 1));
        return (j % 2 == 0) ? r : -r;
    }
    std::mutex mu_;
    std::vector<Rational> c_{Rational(1)};
};

inline ReflectionTable& reflection_table() {
    static ReflectionTable t;
    return t;
}

}  // namespace detail

/// c_k with pi*t/sin(pi*t) = sum_{k>=0} c_k pi^{2k} t^{2k}; exact and nonzero.
inline Rational reflection_coeff(long k) {
    if (k < 0) throw std::invalid_argument("reflection_coeff: k must be >= 0");
    return detail::reflection_table().get(k);
}

}  // namespace gec
