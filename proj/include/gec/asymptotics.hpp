#pragma once

/// Lambert W and the asymptotic laws of the constant sequences.
///
/// lambert_w runs a plain Newton iteration for speed and then certifies a
/// bracket rigorously: w_lo e^{w_lo} <= x_lo and w_hi e^{w_hi} >= x_hi, which
/// pins W(x) in [w_lo, w_hi] because w e^w is increasing for w > 0.
///
/// The closed-form approximations:
///   eta^(n), gamma^(n)  ~  n! (1 - 2^-(n+1))  with radius n!(e - 5/2)/3^n
///   etat^(n)            ~ -n! (1 + 2^-(n+1))  with the same radius
///   |delta^(n)|         ~  e W(n)^n exp(-n/W(n)) sqrt(2 pi n / (W(n)+1))
///   deltat^(n)          ~ -n! (2e + e/3^(n+1))
/// The (1 + o(1)) factor is never modeled; reports compare bare closed forms
/// against exact sequence values.

#include <gec/constants.hpp>
#include <gec/exact.hpp>
#include <gec/interval.hpp>
#include <gec/quadrature.hpp>
#include <gec/sequences.hpp>

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace gec {

/// Enclosure of the principal-branch W(x) for x > 0.
inline Interval lambert_w(const Interval& x, const PrecisionConfig& cfg) {
    if (!x.is_strictly_positive())
        throw std::invalid_argument("lambert_w: x must be strictly positive");
    const long prec = cfg.bits + 16;

    // Newton on the midpoint (not trusted; only seeds the bracket).
    mpfr_t w, t, u;
    mpfr_init2(w, prec);
    mpfr_init2(t, prec);
    mpfr_init2(u, prec);
    mpfr_set(w, x.lo(), MPFR_RNDN);
    if (mpfr_cmp_ui(w, 3) >= 0) {
        mpfr_log(w, w, MPFR_RNDN);  // ln x
        mpfr_log(t, w, MPFR_RNDN);  // ln ln x
        mpfr_sub(w, w, t, MPFR_RNDN);
    } else {
        mpfr_set_d(w, 0.5, MPFR_RNDN);
    }
    for (int it = 0; it < 200; ++it) {
        // w <- w - (w e^w - x) / (e^w (w + 1))
        mpfr_exp(t, w, MPFR_RNDN);           // e^w
        mpfr_mul(u, t, w, MPFR_RNDN);        // w e^w
        mpfr_sub(u, u, x.lo(), MPFR_RNDN);
        mpfr_add_ui(w, w, 1, MPFR_RNDN);
        mpfr_mul(t, t, w, MPFR_RNDN);        // e^w (w+1)
        mpfr_sub_ui(w, w, 1, MPFR_RNDN);
        mpfr_div(u, u, t, MPFR_RNDN);
        mpfr_sub(w, w, u, MPFR_RNDN);
        if (mpfr_zero_p(u)) break;
    }

    // expand an interval around w until the bracket certifies
    Interval result(prec);
    for (long slack = cfg.bits; slack >= 4; slack /= 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set(lo, w, MPFR_RNDD);
        mpfr_set(hi, w, MPFR_RNDU);
        // relative margin 2^-slack
        mpfr_mul_2si(t, w, -slack, MPFR_RNDU);
        mpfr_abs(t, t, MPFR_RNDU);
        mpfr_sub(lo, lo, t, MPFR_RNDD);
        mpfr_add(hi, hi, t, MPFR_RNDU);
        if (mpfr_sgn(lo) <= 0) mpfr_set_d(lo, 1e-9, MPFR_RNDD);

        // verify: lo e^lo <= x.lo  and  hi e^hi >= x.hi, with outward rounding
        mpfr_exp(t, lo, MPFR_RNDU);
        mpfr_mul(t, t, lo, MPFR_RNDU);
        bool ok_lo = mpfr_cmp(t, x.lo()) <= 0;
        mpfr_exp(u, hi, MPFR_RNDD);
        mpfr_mul(u, u, hi, MPFR_RNDD);
        bool ok_hi = mpfr_cmp(u, x.hi()) >= 0;
        if (ok_lo && ok_hi) {
            result = Interval::from_mpfr(lo, hi, prec);
            mpfr_clear(lo);
            mpfr_clear(hi);
            mpfr_clear(w);
            mpfr_clear(t);
            mpfr_clear(u);
            return result;
        }
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    mpfr_clear(w);
    mpfr_clear(t);
    mpfr_clear(u);
    throw std::runtime_error("lambert_w: failed to certify a bracket");
}

inline Interval lambert_w(long x, const PrecisionConfig& cfg) {
    return lambert_w(Interval::point(x, cfg.bits + 16), cfg);
}

namespace detail {

// n! (1 -/+ 2^-(n+1)) +- n!(e - 5/2)/3^n as an interval.
inline Interval factorial_law(long n, bool tilde, const PrecisionConfig& cfg) {
    const long prec = cfg.bits + 8;
    Rational nf(factorial(n));
    Rational lead = Rational(1) + (tilde ? Rational(1) : Rational(-1)) * pow2_inv(n + 1);
    Interval e = enclose_e(cfg);
    Interval radius = Interval::from_rational(
                          nf / pow_rational(Rational(3), n), prec) *
                      (e - Interval::from_rational(Rational(5, 2), prec));
    Interval center = Interval::from_rational(nf * lead, prec);
    Interval approx = Interval::hull(center - radius, center + radius);
    return tilde ? -approx : approx;
}

}  // namespace detail

/// n!(1 - 2^-(n+1)) with radius n!(e-5/2)/3^n.
inline Interval eta_asym(long n, const PrecisionConfig& cfg) {
    if (n < 2) throw std::invalid_argument("eta_asym: n must be >= 2");
    return detail::factorial_law(n, false, cfg);
}

inline Interval gamma_asym(long n, const PrecisionConfig& cfg) {
    if (n < 2) throw std::invalid_argument("gamma_asym: n must be >= 2");
    return detail::factorial_law(n, false, cfg);
}

/// -n!(1 + 2^-(n+1)) with radius n!(e-5/2)/3^n.
inline Interval eta_tilde_asym(long n, const PrecisionConfig& cfg) {
    if (n < 2) throw std::invalid_argument("eta_tilde_asym: n must be >= 2");
    return detail::factorial_law(n, true, cfg);
}

/// e W(n)^n exp(-n/W(n)) sqrt(2 pi n/(W(n)+1)) -- the saddle-point magnitude
/// of delta^(n), without the (1+o(1)) factor.
inline Interval delta_asym(long n, const PrecisionConfig& cfg) {
    if (n < 1) throw std::invalid_argument("delta_asym: n must be >= 1");
    const long prec = cfg.bits + 16;
    Interval W = lambert_w(n, cfg);
    Interval nv = Interval::point(n, prec);
    Interval one = Interval::point(1, prec);
    Interval expo = (-(nv / W)).exp();
    Interval root = (Interval::from_rational(Rational(2), prec) * Interval::pi(prec) * nv /
                     (W + one))
                        .sqrt();
    return enclose_e(cfg) * W.pow_int(n) * expo * root;
}

/// -n!(2e + e/3^(n+1)).
inline Interval delta_tilde_asym(long n, const PrecisionConfig& cfg) {
    if (n < 1) throw std::invalid_argument("delta_tilde_asym: n must be >= 1");
    const long prec = cfg.bits + 8;
    Interval e = enclose_e(cfg);
    Interval nf = Interval::from_rational(Rational(factorial(n)), prec);
    Interval third = Interval::from_rational(
        Rational(1) / detail::pow_rational(Rational(3), n + 1), prec);
    return -(nf * (Interval::point(2, prec) * e + e * third));
}

struct SaddleReport {
    Interval W;
    Interval u_star;
    bool defining_ok = false;      // u* ln u* contains n (or x)
    bool phi_prime_ok = false;     // phi'(u*) contains 0
    bool phi_second_negative = false;
};

/// u* = x / W(x); checks u* ln u* = x, phi'(u*) = 0 and phi''(u*) < 0 with
/// phi(u) = x ln(ln u) - u. Any failed containment throws.
inline SaddleReport saddle_point_diagnostics(const Interval& x, const PrecisionConfig& cfg) {
    SaddleReport rep{Interval(64), Interval(64)};
    const long prec = cfg.bits + 16;
    rep.W = lambert_w(x, cfg);
    rep.u_star = x / rep.W;

    Interval lnu = rep.u_star.log();
    rep.defining_ok = (rep.u_star * lnu).contains(x);

    Interval phi_prime = x / (rep.u_star * lnu) - Interval::point(1, prec);
    rep.phi_prime_ok = phi_prime.contains_zero();

    Interval phi_second = -(x / (rep.u_star.pow_int(2) * lnu)) *
                          (Interval::point(1, prec) + Interval::point(1, prec) / lnu);
    rep.phi_second_negative = phi_second.is_strictly_negative();

    if (!rep.defining_ok || !rep.phi_prime_ok || !rep.phi_second_negative)
        throw std::logic_error("saddle_point_diagnostics: containment failed");
    return rep;
}

inline SaddleReport saddle_point_diagnostics(long n, const PrecisionConfig& cfg) {
    if (n < 1) throw std::invalid_argument("saddle_point_diagnostics: n must be >= 1");
    return saddle_point_diagnostics(Interval::point(n, cfg.bits + 16), cfg);
}

struct AsymptoticReport {
    std::string sequence;
    long n = 0;
    Interval exact{64};
    Interval approx{64};
    Interval rel_error{64};
    bool bound_satisfied = false;
};

/// |exact - approx| / |exact| in interval arithmetic.
inline Interval relative_error(const Interval& exact, const Interval& approx) {
    return (exact - approx).abs() / exact.abs();
}

inline nlohmann::json report_to_json(const AsymptoticReport& r) {
    return nlohmann::json{
        {"sequence", r.sequence},
        {"n", r.n},
        {"exact_lo", r.exact.lo_string()},
        {"exact_hi", r.exact.hi_string()},
        {"approx_lo", r.approx.lo_string()},
        {"approx_hi", r.approx.hi_string()},
        {"rel_error_lo", r.rel_error.lo_string()},
        {"rel_error_hi", r.rel_error.hi_string()},
        {"bound_satisfied", r.bound_satisfied},
    };
}

}  // namespace gec
