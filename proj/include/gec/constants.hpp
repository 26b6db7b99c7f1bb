#pragma once

/// Rigorous enclosures of the base constants e, gamma (Euler-Mascheroni) and
/// zeta(s) for integer s >= 2. These seed every downstream sequence value, so
/// each carries an explicit, elementary error bound:
///
///  * e: exact-rational partial sums of sum 1/k!, tail < 2/(K+1)!.
///  * gamma: the exponential-integral route
///        gamma = sum_{k=1}^{K} (-1)^{k+1} N^k/(k*k!) - ln N - E1(N) + tail,
///    with the partial sum exact over Q (no cancellation once exact),
///    e^{-N}/(N+1) < E1(N) < e^{-N}/N, and the alternating tail bounded by
///    its first omitted term (valid once K >= N, where terms decrease).
///  * zeta(s): Euler-Maclaurin with all terms exact rationals and the
///    remainder after the j=J correction bounded by the magnitude of that
///    included term, via |periodized B_{2J}(x)| <= |B_{2J}|.
///
/// Results are memoized per (constant, precision) behind a mutex; Interval
/// values are immutable and freely shareable afterwards.

#include <gec/exact.hpp>
#include <gec/interval.hpp>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace gec {

namespace detail {

inline Interval enclose_e_impl(const PrecisionConfig& cfg) {
    const long bits = cfg.bits;
    // sum_{k=0}^{K} 1/k!, tail = sum_{k>K} 1/k! < 2/(K+1)!  (ratio <= 1/2).
    Rational sum(0);
    Integer kfact(1);
    long k = 0;
    while (true) {
        sum += Rational(1) / Rational(kfact);
        ++k;
        kfact *= k;
        if (mpz_sizeinbase(kfact.get_mpz_t(), 2) > static_cast<size_t>(bits + 6)) break;
    }
    Rational tail = Rational(2) / Rational(kfact);  // kfact == (K+1)!
    return Interval::from_endpoints(sum, sum + tail, bits + 8);
}

inline Interval enclose_gamma_impl(const PrecisionConfig& cfg) {
    const long bits = cfg.bits;
    // N with e^-N <= 2^-(bits+6): N >= (bits+6)/log2(e).
    const long N = static_cast<long>((bits + 6) / 1.4426950408889634) + 2;

    // S = sum_{k=1}^{K} (-1)^{k+1} N^k/(k*k!), exact.  Terms t_k decrease for
    // k >= N (ratio N*k/(k+1)^2 < 1), so the alternating remainder after K
    // terms lies between 0 and the first omitted term.
    Rational S(0);
    Integer Nk(1);   // N^k
    Integer kf(1);   // k!
    long K = 0;
    Rational t_next;
    for (long k = 1;; ++k) {
        Nk *= N;
        kf *= k;
        Rational t = Rational(Nk) / Rational(kf * k);
        if (k >= N) {
            // stop once the NEXT term is negligible
            Rational tn = t * Rational(N * k) / Rational((k + 1) * (k + 1));
            if (tn < pow2_inv(bits + 6)) {
                S += (k % 2 == 1) ? t : -t;
                K = k;
                t_next = tn;
                break;
            }
        }
        S += (k % 2 == 1) ? t : -t;
    }
    // remainder sign = sign of term K+1 = (-1)^{K+2}
    Rational rem_lo(0), rem_hi(0);
    if (K % 2 == 0) rem_hi = t_next;  // term K+1 positive
    else            rem_lo = -t_next;

    const long wp = bits + 16;
    Interval S_iv = Interval::from_endpoints(S + rem_lo, S + rem_hi, wp);

    Interval lnN = Interval::point(N, wp).log();

    // E1(N) in [e^-N/(N+1), e^-N/N]
    Interval expmN = Interval::point(-N, wp).exp();
    Interval e1_lo = expmN / Interval::point(N + 1, wp);
    Interval e1_hi = expmN / Interval::point(N, wp);
    Interval E1 = Interval::hull(e1_lo, e1_hi);

    return S_iv - lnN - E1;
}

inline Interval enclose_zeta_impl(long s, const PrecisionConfig& cfg) {
    const long bits = cfg.bits;
    const Rational target = pow2_inv(bits + 4);

    long N = std::max<long>(8, bits / 8);
    for (int attempt = 0; attempt < 12; ++attempt, N *= 2) {
        // head
        Rational head(0);
        for (long k = 1; k < N; ++k) {
            Rational kk = pow_rational(Rational(k), s);
            head += Rational(1) / kk;
        }
        const Rational Ns = pow_rational(Rational(N), s);   // N^s
        const Rational invN2 = Rational(1) / (Rational(N) * Rational(N));
        Rational tail = Rational(N) / (Ns * Rational(s - 1))  // N^{1-s}/(s-1)
                        + Rational(1, 2) / Ns;

        // correction terms  B_{2j}/(2j)! * (s)_{2j-1} * N^{-s-2j+1}
        Rational rising(s);          // (s)_1
        Rational npow = Rational(N) / Ns;  // N^{-s+1}
        Rational best_bound(-1);
        Rational sum_corr(0);
        bool done = false;
        for (long j = 1; j <= 2 * N + 64; ++j) {
            npow *= invN2;  // N^{-s-2j+1}
            Rational term = bernoulli_any(2 * j) / Rational(factorial(2 * j)) * rising * npow;
            Rational bound = abs(term);
            if (best_bound >= Rational(0) && bound > best_bound) {
                // divergence point of the asymptotic series reached
                break;
            }
            sum_corr += term;
            best_bound = bound;
            if (bound < target) { done = true; break; }
            rising *= Rational(s + 2 * j - 1) * Rational(s + 2 * j);  // -> (s)_{2j+1}
        }
        if (!done) continue;  // N too small; retry with larger N

        Rational mid = head + tail + sum_corr;
        return Interval::from_endpoints(mid - best_bound, mid + best_bound, bits + 8);
    }
    throw std::runtime_error("enclose_zeta: failed to reach target accuracy");
}

template <typename Key>
class IvCache {
  public:
    template <typename F>
    Interval get(const Key& key, F&& compute) {
        {
            std::lock_guard<std::mutex> guard(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        Interval v = compute();
        std::lock_guard<std::mutex> guard(mu_);
        auto [it, inserted] = cache_.emplace(key, v);
        return it->second;
    }

  private:
    std::mutex mu_;
    std::map<Key, Interval> cache_;
};

}  // namespace detail

/// Enclosure of e with width <= 2^(3-bits).
inline Interval enclose_e(const PrecisionConfig& cfg) {
    static detail::IvCache<long> cache;
    return cache.get(cfg.bits, [&] { return detail::enclose_e_impl(cfg); });
}

/// Enclosure of the Euler-Mascheroni constant with width <= 2^(3-bits).
inline Interval enclose_gamma(const PrecisionConfig& cfg) {
    static detail::IvCache<long> cache;
    return cache.get(cfg.bits, [&] { return detail::enclose_gamma_impl(cfg); });
}

/// Enclosure of zeta(s) for integer s >= 2.
inline Interval enclose_zeta(long s, const PrecisionConfig& cfg) {
    if (s < 2) throw std::invalid_argument("enclose_zeta: s must be >= 2");
    static detail::IvCache<std::pair<long, long>> cache;
    return cache.get({s, cfg.bits}, [&] { return detail::enclose_zeta_impl(s, cfg); });
}

}  // namespace gec
