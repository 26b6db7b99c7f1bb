#pragma once

/// Moment/cumulant Bell-polynomial algebra and the integer relations P_n.
///
///   moment_from_cumulants(n)  : B_n(k1..kn) via
///       E[X^n] = sum_{j=0}^{n-1} C(n-1,j) k_{n-j} E[X^j]
///   cumulant_from_moments(l)  : the inverse expressions in moment (gamma)
///       variables, k_l = g_l - sum_{i=0}^{l-2} C(l-1,i) k_{i+1} g_{l-i-1}
///   gamma_poly(n)             : gamma^(n) in gamma and symbolic zeta values
///   zeta_poly(l)              : zeta(l) in g1..gl
///   build_P(n)                : primitive integer relation obtained by
///       equating zeta_poly(2n) with b_n * zeta_poly(2)^n (b_n the even-zeta
///       ratio) and clearing denominators, normalized so the g_{2n}
///       coefficient is positive
///   solve_even(m)             : g_{2m} expressed from P_m = 0
///
/// All results are memoized; the caches are mutex-guarded so polynomial
/// construction can be shared by concurrent certification workers.

#include <gec/exact.hpp>
#include <gec/poly.hpp>

#include <map>
#include <mutex>
#include <stdexcept>

namespace gec {

namespace detail {

template <typename K>
class PolyCache {
  public:
    template <typename F>
    Poly get(const K& key, F&& compute) {
        {
            std::lock_guard<std::mutex> guard(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        Poly p = compute();
        std::lock_guard<std::mutex> guard(mu_);
        return cache_.emplace(key, std::move(p)).first->second;
    }

  private:
    std::mutex mu_;
    std::map<K, Poly> cache_;
};

}  // namespace detail

/// Complete Bell polynomial B_n over k1..kn; B_0 = 1.
inline Poly moment_from_cumulants(long n) {
    if (n < 0) throw std::invalid_argument("moment_from_cumulants: n must be >= 0");
    static detail::PolyCache<long> cache;
    return cache.get(n, [n] {
        if (n == 0) return Poly::constant(Rational(1));
        Poly sum;
        for (long j = 0; j <= n - 1; ++j) {
            Poly prev = moment_from_cumulants(j);
            sum += Rational(binomial(n - 1, j)) *
                   (Poly::variable(VarId::kappa(n - j)) * prev);
        }
        return sum;
    });
}

/// k_l as a polynomial in moment variables g1..gl (g0 = 1).
inline Poly cumulant_from_moments(long l) {
    if (l < 1) throw std::invalid_argument("cumulant_from_moments: l must be >= 1");
    static detail::PolyCache<long> cache;
    return cache.get(l, [l] {
        if (l == 1) return Poly::variable(VarId::gamma(1));
        auto g = [](long j) {
            return j == 0 ? Poly::constant(Rational(1)) : Poly::variable(VarId::gamma(j));
        };
        Poly r = g(l);
        for (long i = 0; i <= l - 2; ++i)
            r -= Rational(binomial(l - 1, i)) * (cumulant_from_moments(i + 1) * g(l - i - 1));
        return r;
    });
}

namespace detail {

// Rewrite the pure even-zeta factor of each monomial, prod_m z_{2m}^{p_m}
// with weight w = sum 2m p_m >= 4, into the single symbol z_w using
// z_{2m} = b_m z_2^m exactly; a lone z_2 stays. Odd z's and other variables
// pass through. This reproduces the merged forms of the printed moment
// expansions (e.g. 3 z2^2 + 6 z4 -> 27/2 z4).
inline Poly merge_even_zetas(const Poly& p) {
    auto bcoef = [](long m) { return m == 1 ? Rational(1) : even_zeta_coeff(m); };
    Poly out;
    for (const auto& [mono, c] : p.terms()) {
        long half_weight = 0;
        Rational scale(1);
        std::vector<std::pair<VarId, long>> rest;
        for (const auto& [v, pw] : mono.factors()) {
            if (v.kind == VarId::Kind::Zeta && v.index % 2 == 0) {
                half_weight += (v.index / 2) * pw;
                scale *= detail::pow_rational(bcoef(v.index / 2), pw);
            } else {
                rest.emplace_back(v, pw);
            }
        }
        if (half_weight >= 2) {
            scale /= bcoef(half_weight);
            rest.emplace_back(VarId::zeta(2 * half_weight), 1);
        } else if (half_weight == 1) {
            rest.emplace_back(VarId::zeta(2), 1);
            scale = Rational(1);
        }
        out += Poly::term(Monomial(std::move(rest)), c * scale);
    }
    return out;
}

}  // namespace detail

/// gamma^(n) as a polynomial in gamma (g1) and symbolic zeta values z2..zn,
/// by substituting k1 = g1, k_l = (l-1)! z_l into B_n, with the even-zeta
/// factors merged to their canonical single-symbol form.
inline Poly gamma_poly(long n) {
    if (n < 1) throw std::invalid_argument("gamma_poly: n must be >= 1");
    static detail::PolyCache<long> cache;
    return cache.get(n, [n] {
        std::map<VarId, Poly> subs;
        subs[VarId::kappa(1)] = Poly::variable(VarId::gamma(1));
        for (long l = 2; l <= n; ++l)
            subs[VarId::kappa(l)] =
                Rational(factorial(l - 1)) * Poly::variable(VarId::zeta(l));
        return detail::merge_even_zetas(moment_from_cumulants(n).substitute(subs));
    });
}

/// zeta(l) as an exact polynomial in g1..gl:
///   (l-1)! zeta(l) = g_l - g1 g_{l-1} - sum_{i=1}^{l-2} (l-1)!/(l-i-1)!
///                    zeta(i+1) g_{l-i-1}.
inline Poly zeta_poly(long l) {
    if (l < 2) throw std::invalid_argument("zeta_poly: l must be >= 2");
    static detail::PolyCache<long> cache;
    return cache.get(l, [l] {
        auto g = [](long j) {
            return j == 0 ? Poly::constant(Rational(1)) : Poly::variable(VarId::gamma(j));
        };
        Poly r = g(l) - Poly::variable(VarId::gamma(1)) * g(l - 1);
        for (long i = 1; i <= l - 2; ++i) {
            Rational coeff = Rational(factorial(l - 1)) / Rational(factorial(l - i - 1));
            r -= coeff * (zeta_poly(i + 1) * g(l - i - 1));
        }
        return Rational(1) / Rational(factorial(l - 1)) * r;
    });
}

/// P_n: primitive integer polynomial with positive g_{2n} coefficient,
/// proportional to zeta_poly(2n) - b_n * zeta_poly(2)^n.
inline Poly build_P(long n) {
    if (n < 2) throw std::invalid_argument("build_P: n must be >= 2");
    static detail::PolyCache<long> cache;
    return cache.get(n, [n] {
        Poly diff = zeta_poly(2 * n) - even_zeta_coeff(n) * zeta_poly(2).pow(n);
        Rational c = diff.content();
        Poly prim = (Rational(1) / c) * diff;
        if (prim.coeff(Monomial::var(VarId::gamma(2 * n))) < 0) prim = -prim;
        return prim;
    });
}

/// Q with g_{2m} = Q(g1..g_{2m-1}) equivalent to P_m = 0.
inline Poly solve_even(long m) {
    if (m < 2) throw std::invalid_argument("solve_even: m must be >= 2");
    Poly P = build_P(m);
    Monomial lead = Monomial::var(VarId::gamma(2 * m));
    Rational alpha = P.coeff(lead);
    if (alpha == 0) throw std::logic_error("solve_even: P_m lost its leading variable");
    Poly rest = P - Poly::term(lead, alpha);
    return (Rational(-1) / alpha) * rest;
}

}  // namespace gec
