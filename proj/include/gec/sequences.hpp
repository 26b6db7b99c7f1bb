#pragma once

/// The five constant sequences and their identity checks.
///
///   eta^(n)        = n! sum_{k>=1} (-1)^{k+1} / (k^n k!)        (alternating)
///   etat^(n)       = -n! sum_{k>=1} 1 / (k^n k!)
///   gamma^(n)      = n-th raw Gumbel(0,1) moment, by the cumulant recurrence
///                    gamma^(n) = gamma*gamma^(n-1)
///                               + sum_{j<=n-2} (n-1)!/j! zeta(n-j) gamma^(j)
///   delta^(n)      = e (eta^(n)  - gamma^(n))
///   deltat^(n)     = e (etat^(n) - gamma^(n))
///
/// Series partial sums are exact rationals; tails are bounded by the first
/// omitted term (alternating case) or twice it (positive case, term ratio
/// <= 1/2). Truncation stops once k^n k! exceeds 2^(bits+16).

#include <gec/constants.hpp>
#include <gec/exact.hpp>
#include <gec/interval.hpp>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace gec {

enum class Sequence { GammaN, EtaN, DeltaN, EtaTildeN, DeltaTildeN, GAt1, HAt1 };

enum class Method { Series, Recurrence, Identity, Quadrature };

struct ConstantRecord {
    Sequence sequence;
    long n = 0;
    Interval value{64};
    long bits = 0;
    Method method = Method::Series;
};

namespace detail {

// k^n * k! as an exact integer, maintained incrementally by the callers.
struct SeriesTerm {
    Integer kfact{1};
    Integer kpow{1};
    long k = 0;

    // advance to k+1 and return (k+1)^n (k+1)!
    Integer next(long n) {
        ++k;
        kfact *= k;
        mpz_ui_pow_ui(kpow.get_mpz_t(), static_cast<unsigned long>(k),
                      static_cast<unsigned long>(n));
        return kpow * kfact;
    }
};

}  // namespace detail

/// eta^(n): exact alternating partial sum, tail in [0, t_{K+1}] with the sign
/// of the first omitted term.
inline Interval eta_n(long n, const PrecisionConfig& cfg) {
    if (n < 0) throw std::invalid_argument("eta_n: n must be >= 0");
    const long stop_bits = cfg.bits + 16;
    detail::SeriesTerm st;
    Rational sum(0);
    long K = 0;
    Rational t_next;
    while (true) {
        Integer denom = st.next(n);
        Rational t = Rational(1) / Rational(denom);
        if (mpz_sizeinbase(denom.get_mpz_t(), 2) > static_cast<size_t>(stop_bits) &&
            st.k > 1) {
            K = st.k - 1;
            t_next = t;
            break;
        }
        sum += (st.k % 2 == 1) ? t : -t;
    }
    Rational lo = sum, hi = sum;
    if (K % 2 == 0) hi += t_next;  // first omitted term (k=K+1) is +
    else            lo -= t_next;
    Rational nf(factorial(n));
    return Interval::from_endpoints(nf * lo, nf * hi, cfg.bits + 8);
}

/// etat^(n) = -n! * (positive series); tail in [0, 2 t_{K+1}].
inline Interval eta_tilde_n(long n, const PrecisionConfig& cfg) {
    if (n < 0) throw std::invalid_argument("eta_tilde_n: n must be >= 0");
    const long stop_bits = cfg.bits + 16;
    detail::SeriesTerm st;
    Rational sum(0);
    Rational t_next;
    while (true) {
        Integer denom = st.next(n);
        Rational t = Rational(1) / Rational(denom);
        if (mpz_sizeinbase(denom.get_mpz_t(), 2) > static_cast<size_t>(stop_bits) &&
            st.k > 1) {
            t_next = t;
            break;
        }
        sum += t;
    }
    Rational nf(factorial(n));
    return Interval::from_endpoints(-nf * (sum + 2 * t_next), -nf * sum, cfg.bits + 8);
}

/// F_n(z) = -n! sum z^k/(k^n k!) for rational z; |tail| <= 2 |t_{K+1}| once
/// |z|/(K+2) <= 1/2.
inline Interval eval_F(long n, const Rational& z, const PrecisionConfig& cfg) {
    if (n < 0) throw std::invalid_argument("eval_F: n must be >= 0");
    if (z == 0) return Interval::point(0, cfg.bits + 8);
    const Rational az = abs(z);
    const Rational tiny = detail::pow2_inv(cfg.bits + 16);
    detail::SeriesTerm st;
    Rational sum(0);
    Rational zpow(1);
    Rational t_next;
    while (true) {
        Integer denom = st.next(n);
        zpow *= z;
        Rational t = zpow / Rational(denom);
        if (abs(t) < tiny && Rational(st.k + 2) >= 2 * az && st.k > 1) {
            t_next = abs(t);
            break;
        }
        sum += t;
    }
    Rational nf(factorial(n));
    return Interval::from_endpoints(-nf * (sum + 2 * t_next), -nf * (sum - 2 * t_next),
                                    cfg.bits + 8);
}

/// gamma^(n) by the cumulant recurrence; gamma^(0) = 1 exactly. Cached per
/// (n, bits) behind a mutex.
inline Interval gamma_n(long n, const PrecisionConfig& cfg) {
    if (n < 0) throw std::invalid_argument("gamma_n: n must be >= 0");
    static std::mutex mu;
    static std::map<std::pair<long, long>, Interval> cache;

    std::lock_guard<std::mutex> guard(mu);
    auto compute = [&](long m, auto&& self) -> Interval {
        auto it = cache.find({m, cfg.bits});
        if (it != cache.end()) return it->second;
        Interval v(cfg.bits + 8);
        if (m == 0) {
            v = Interval::point(1, cfg.bits + 8);
        } else {
            Interval g = enclose_gamma(cfg);
            v = g * self(m - 1, self);
            for (long j = 0; j <= m - 2; ++j) {
                Rational c = Rational(factorial(m - 1)) / Rational(factorial(j));
                v += Interval::from_rational(c, cfg.bits + 8) * enclose_zeta(m - j, cfg) *
                     self(j, self);
            }
        }
        cache.emplace(std::make_pair(m, cfg.bits), v);
        return v;
    };
    return compute(n, compute);
}

/// delta^(n) = e (eta^(n) - gamma^(n)); delta^(0) is the zeroth conditional
/// moment -E[X^0 | X<=0] = -1 exactly, so it is returned as a point.
inline Interval delta_n(long n, const PrecisionConfig& cfg) {
    if (n < 0) throw std::invalid_argument("delta_n: n must be >= 0");
    if (n == 0) return Interval::point(-1, cfg.bits + 8);
    return enclose_e(cfg) * (eta_n(n, cfg) - gamma_n(n, cfg));
}

inline Interval delta_tilde_n(long n, const PrecisionConfig& cfg) {
    if (n < 0) throw std::invalid_argument("delta_tilde_n: n must be >= 0");
    return enclose_e(cfg) * (eta_tilde_n(n, cfg) - gamma_n(n, cfg));
}

/// Mod-2 multisection of F_n at z=1: G_n(1) over odd k, H_n(1) over even k.
/// Computed both from the split series and from the half-sum identities
/// G = (etat - eta)/2, H = (etat + eta)/2; the two routes must overlap and
/// their intersection is returned.
inline std::pair<Interval, Interval> multisection(long n, const PrecisionConfig& cfg) {
    if (n < 0) throw std::invalid_argument("multisection: n must be >= 0");
    const long stop_bits = cfg.bits + 16;
    detail::SeriesTerm st;
    Rational sum_odd(0), sum_even(0);
    Rational t_next;
    while (true) {
        Integer denom = st.next(n);
        Rational t = Rational(1) / Rational(denom);
        if (mpz_sizeinbase(denom.get_mpz_t(), 2) > static_cast<size_t>(stop_bits) &&
            st.k > 1) {
            t_next = t;
            break;
        }
        if (st.k % 2 == 1) sum_odd += t;
        else               sum_even += t;
    }
    Rational nf(factorial(n));
    Interval G_series = Interval::from_endpoints(-nf * (sum_odd + 2 * t_next),
                                                 -nf * sum_odd, cfg.bits + 8);
    Interval H_series = Interval::from_endpoints(-nf * (sum_even + 2 * t_next),
                                                 -nf * sum_even, cfg.bits + 8);

    Interval et = eta_n(n, cfg);
    Interval ett = eta_tilde_n(n, cfg);
    Interval half = Interval::from_rational(Rational(1, 2), cfg.bits + 8);
    Interval G_ident = half * (ett - et);
    Interval H_ident = half * (ett + et);

    if (!G_series.overlaps(G_ident) || !H_series.overlaps(H_ident))
        throw std::logic_error("multisection: series and identity routes disagree");
    return {Interval::intersect(G_series, G_ident),
            Interval::intersect(H_series, H_ident)};
}

/// One computed sequence value with its provenance.
inline ConstantRecord compute_record(Sequence seq, long n, const PrecisionConfig& cfg) {
    ConstantRecord rec;
    rec.sequence = seq;
    rec.n = n;
    rec.bits = cfg.bits;
    switch (seq) {
        case Sequence::GammaN:
            rec.value = gamma_n(n, cfg);
            rec.method = Method::Recurrence;
            break;
        case Sequence::EtaN:
            rec.value = eta_n(n, cfg);
            rec.method = Method::Series;
            break;
        case Sequence::EtaTildeN:
            rec.value = eta_tilde_n(n, cfg);
            rec.method = Method::Series;
            break;
        case Sequence::DeltaN:
            rec.value = delta_n(n, cfg);
            rec.method = Method::Identity;
            break;
        case Sequence::DeltaTildeN:
            rec.value = delta_tilde_n(n, cfg);
            rec.method = Method::Identity;
            break;
        case Sequence::GAt1:
        case Sequence::HAt1: {
            auto [G, H] = multisection(n, cfg);
            rec.value = seq == Sequence::GAt1 ? G : H;
            rec.method = Method::Series;
            break;
        }
    }
    return rec;
}

/// Residual of sum_{j=0}^{2k} (-1)^j gamma^(j) gamma^(2k-j) / (j!(2k-j)!)
/// minus c_k pi^{2k}; must contain 0.
inline Interval reflection_residual(long k, const PrecisionConfig& cfg) {
    if (k < 1) throw std::invalid_argument("reflection_residual: k must be >= 1");
    Interval lhs = Interval::point(0, cfg.bits + 8);
    for (long j = 0; j <= 2 * k; ++j) {
        Rational c = Rational(1) / Rational(factorial(j) * factorial(2 * k - j));
        if (j % 2 == 1) c = -c;
        lhs += Interval::from_rational(c, cfg.bits + 8) * gamma_n(j, cfg) *
               gamma_n(2 * k - j, cfg);
    }
    Interval rhs = Interval::from_rational(reflection_coeff(k), cfg.bits + 8) *
                   Interval::pi(cfg.bits + 8).pow_int(2 * k);
    return lhs - rhs;
}

}  // namespace gec
