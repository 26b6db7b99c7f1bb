#pragma once

/// Cross-module consistency checks combining the symbolic layer with the
/// rigorous numeric layer. Each returns an interval that must contain zero,
/// or a strict two-sided bound decided by interval comparison.

#include <gec/bell.hpp>
#include <gec/constants.hpp>
#include <gec/sequences.hpp>

#include <map>
#include <stdexcept>
#include <utility>

namespace gec {

inline std::map<VarId, Interval> gamma_star(long max_index, const PrecisionConfig& cfg) {
    std::map<VarId, Interval> a;
    for (long j = 1; j <= max_index; ++j) a.emplace(VarId::gamma(j), gamma_n(j, cfg));
    return a;
}

/// zeta(ell) recovered from the moment polynomials minus the direct
/// enclosure; contains 0 on a correct build.
inline Interval zeta_consistency(long ell, const PrecisionConfig& cfg) {
    if (ell < 2 || ell > 5)
        throw std::invalid_argument("zeta_consistency: ell must be in 2..5");
    Interval via_moments =
        zeta_poly(ell).eval_interval(gamma_star(ell, cfg), cfg.bits + 8);
    return via_moments - enclose_zeta(ell, cfg);
}

/// P_n evaluated at the true moment point; contains 0 by construction.
inline Interval p_at_gamma_star(long n, const PrecisionConfig& cfg) {
    return build_P(n).eval_interval(gamma_star(2 * n, cfg), cfg.bits + 8);
}

/// Strict bracketing of eta^(n):
///   n!(1 - 2^-(n+1) - (e-5/2)/3^n) < eta^(n) < n!(1 - 2^-(n+1) + (e-5/2)/3^n).
inline bool eta_bracket_holds(long n, const PrecisionConfig& cfg) {
    if (n < 2) throw std::invalid_argument("eta_bracket_holds: n must be >= 2");
    const long prec = cfg.bits + 8;
    Interval eta = eta_n(n, cfg);
    Rational nf(factorial(n));
    Rational lead = Rational(1) - detail::pow2_inv(n + 1);
    Interval radius =
        Interval::from_rational(nf / detail::pow_rational(Rational(3), n), prec) *
        (enclose_e(cfg) - Interval::from_rational(Rational(5, 2), prec));
    Interval center = Interval::from_rational(nf * lead, prec);
    return (center - radius).strictly_below(eta) && eta.strictly_below(center + radius);
}

/// Strict bracketing of etat^(n):
///   -n!(1 + 2^-(n+1) + (e-5/2)/3^n) < etat^(n) < -n!(1 + 2^-(n+1) + (1/6)/3^n).
inline bool eta_tilde_bracket_holds(long n, const PrecisionConfig& cfg) {
    if (n < 2) throw std::invalid_argument("eta_tilde_bracket_holds: n must be >= 2");
    const long prec = cfg.bits + 8;
    Interval ett = eta_tilde_n(n, cfg);
    Rational nf(factorial(n));
    Rational three_n = detail::pow_rational(Rational(3), n);
    Rational base = Rational(1) + detail::pow2_inv(n + 1);

    Interval lower = -(Interval::from_rational(nf, prec) *
                       (Interval::from_rational(base, prec) +
                        (enclose_e(cfg) - Interval::from_rational(Rational(5, 2), prec)) /
                            Interval::from_rational(three_n, prec)));
    Interval upper = Interval::from_rational(-nf * (base + Rational(1, 6) / three_n), prec);
    return lower.strictly_below(ett) && ett.strictly_below(upper);
}

}  // namespace gec
