#pragma once

/// Independent enclosure of |delta^(n)| = e * int_1^inf (ln u)^n e^-u du by
/// validated Taylor-model quadrature.
///
/// On each subinterval [a,b] with center c and half-width h, the integrand's
/// Taylor coefficients f_0..f_{K-1} are computed at the point c and the
/// Lagrange coefficient f_K over the whole box [a,b], all in interval
/// arithmetic, so
///
///   int_{c-h}^{c+h} f = sum_{k even < K} f_k(c) 2h^{k+1}/(k+1)
///                       + f_K([a,b]) * 2h^{K+1}/(K+1),   K even.
///
/// The infinite tail past T uses ln u <= ln T + (u-T)/T, giving
///   int_T^inf (ln u)^n e^-u du <= e^-T (ln T)^n (1 + n/(T ln T - n))
/// whenever T ln T > n.

#include <gec/interval.hpp>
#include <gec/rational.hpp>
#include <gec/sequences.hpp>

#include <stdexcept>
#include <vector>

namespace gec {

namespace detail {

// Truncated Taylor series with interval coefficients.
struct Jet {
    std::vector<Interval> c;

    static Jet zero(int len, long prec) {
        return Jet{std::vector<Interval>(static_cast<size_t>(len), Interval::point(0, prec))};
    }
};

inline Jet jet_mul(const Jet& a, const Jet& b, long prec) {
    const int len = static_cast<int>(a.c.size());
    Jet r = Jet::zero(len, prec);
    for (int i = 0; i < len; ++i)
        for (int j = 0; i + j < len; ++j) r.c[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    return r;
}

inline Jet jet_pow(const Jet& base, long n, int len, long prec) {
    Jet r = Jet::zero(len, prec);
    r.c[0] = Interval::point(1, prec);
    Jet b = base;
    long e = n;
    while (e > 0) {
        if (e & 1) r = jet_mul(r, b, prec);
        e >>= 1;
        if (e > 0) b = jet_mul(b, b, prec);
    }
    return r;
}

// ln(x0 + t): coefficient k>=1 is (-1)^{k+1}/(k x0^k).
inline Jet jet_log(const Interval& x0, int len, long prec) {
    Jet r = Jet::zero(len, prec);
    r.c[0] = x0.log();
    Interval inv = Interval::point(1, prec) / x0;
    Interval p = Interval::point(1, prec);
    for (int k = 1; k < len; ++k) {
        p *= inv;
        Interval coeff = p / Interval::point(k, prec);
        r.c[static_cast<size_t>(k)] = (k % 2 == 1) ? coeff : -coeff;
    }
    return r;
}

// e^{-(x0 + t)}: coefficient k is e^{-x0} (-1)^k / k!.
inline Jet jet_exp_neg(const Interval& x0, int len, long prec) {
    Jet r = Jet::zero(len, prec);
    Interval e0 = (-x0).exp();
    Interval term = e0;
    r.c[0] = e0;
    for (int k = 1; k < len; ++k) {
        term = term / Interval::point(-k, prec);
        r.c[static_cast<size_t>(k)] = term;
    }
    return r;
}

// jet of (ln u)^n e^{-u} around x0, length len.
inline Jet integrand_jet(const Interval& x0, long n, int len, long prec) {
    Jet L = jet_log(x0, len, prec);
    Jet P = jet_pow(L, n, len, prec);
    Jet E = jet_exp_neg(x0, len, prec);
    return jet_mul(P, E, prec);
}

// int_a^b (ln u)^n e^-u du over one subinterval; K = order (even).
inline Interval integrate_cell(const Rational& a, const Rational& b, long n, int order,
                               long prec) {
    const Rational c = (a + b) / 2;
    const Rational h = (b - a) / 2;
    Interval hv = Interval::from_rational(h, prec);

    Jet at_c = integrand_jet(Interval::from_rational(c, prec), n, order, prec);
    Jet at_box =
        integrand_jet(Interval::from_endpoints(a, b, prec), n, order + 1, prec);

    Interval total = Interval::point(0, prec);
    for (int k = 0; k < order; k += 2) {
        Interval weight = hv.pow_int(k + 1) *
                          Interval::from_rational(Rational(2, k + 1), prec);
        total += at_c.c[static_cast<size_t>(k)] * weight;
    }
    Interval rem_weight = hv.pow_int(order + 1) *
                          Interval::from_rational(Rational(2, order + 1), prec);
    total += at_box.c[static_cast<size_t>(order)] * rem_weight;
    return total;
}

// e^-T (ln T)^n (1 + n/(T ln T - n)) for integer T with T ln T > n.
inline Interval log_power_tail_bound(long T, long n, long prec) {
    Interval Tv = Interval::point(T, prec);
    Interval lnT = Tv.log();
    Interval denom = Tv * lnT - Interval::point(n, prec);
    if (!denom.is_strictly_positive())
        throw std::invalid_argument("tail bound requires T ln T > n");
    Interval factor = Interval::point(1, prec) + Interval::point(n, prec) / denom;
    return (-Tv).exp() * lnT.pow_int(n) * factor;
}

}  // namespace detail

struct QuadratureOptions {
    int order = 10;        // even Taylor order per cell
    long max_cells = 1 << 15;
    long target_width_log2 = -44;  // aim for width <= 2^target
};

/// Enclosure of delta^(n) = (-1)^{n+1} e int_1^inf (ln u)^n e^-u du, n >= 1,
/// by validated quadrature. Reports whatever width it achieves.
inline Interval delta_n_quadrature(long n, const PrecisionConfig& cfg,
                                   const QuadratureOptions& opt = {}) {
    if (n < 1) throw std::invalid_argument("delta_n_quadrature: n must be >= 1");
    const long prec = cfg.bits + 16;

    // Pick T with tail bound below 2^(target-4); T ln T > n holds for T >= n+8.
    const auto below_pow2 = [](mpfr_srcptr x, long e) {
        mpfr_t bound;
        mpfr_init2(bound, 64);
        mpfr_set_si(bound, 1, MPFR_RNDN);
        mpfr_mul_2si(bound, bound, e, MPFR_RNDN);
        const bool ok = mpfr_cmp(x, bound) <= 0;
        mpfr_clear(bound);
        return ok;
    };
    long T = std::max<long>(n + 8, 24);
    Interval tail = detail::log_power_tail_bound(T, n, prec);
    while (!below_pow2(tail.hi(), opt.target_width_log2 - 4)) {
        T += 16;
        if (T > 4096) throw std::runtime_error("delta_n_quadrature: tail bound stalled");
        tail = detail::log_power_tail_bound(T, n, prec);
    }

    long cells = 256;
    Interval integral = Interval::point(0, prec);
    for (;;) {
        integral = Interval::point(0, prec);
        const Rational span = Rational(T - 1) / Rational(cells);
        for (long i = 0; i < cells; ++i) {
            Rational a = Rational(1) + span * i;
            Rational b = Rational(1) + span * (i + 1);
            integral += detail::integrate_cell(a, b, n, opt.order, prec);
        }
        if (integral.width_below_pow2(opt.target_width_log2) || cells >= opt.max_cells)
            break;
        cells *= 2;
    }

    // add [0, tail.hi] for the discarded infinite tail
    Interval tail_range(prec);
    tail_range = Interval::hull(Interval::point(0, prec), tail);
    Interval abs_delta = enclose_e(cfg) * (integral + tail_range);
    return (n % 2 == 1) ? abs_delta : -abs_delta;
}

}  // namespace gec
