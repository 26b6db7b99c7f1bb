#pragma once

/// Arbitrary-precision real intervals with outward rounding, on top of MPFR.
///
/// Every operation returns an enclosure of the exact real image of its
/// operands: lower endpoints are computed with MPFR_RNDD, upper endpoints
/// with MPFR_RNDU, so soundness comes from MPFR's correctly rounded
/// primitives and no ulp-slack bookkeeping is needed.
///
/// Intervals are immutable values; copying is deep. Division by an interval
/// containing zero throws interval_error, which upstream escalation loops
/// treat as "retry at higher precision".

#include <gec/rational.hpp>

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace gec {

class interval_error : public std::runtime_error {
  public:
    explicit interval_error(const std::string& what) : std::runtime_error(what) {}
};

struct PrecisionConfig {
    long bits = 192;
    int max_escalations = 3;
    int escalation_factor = 2;

    PrecisionConfig() = default;
    PrecisionConfig(long b, int me = 3, int ef = 2)
        : bits(b), max_escalations(me), escalation_factor(ef) {
        if (bits < 64) throw std::invalid_argument("PrecisionConfig: bits must be >= 64");
        if (escalation_factor < 2)
            throw std::invalid_argument("PrecisionConfig: escalation_factor must be >= 2");
    }

    PrecisionConfig escalated(int times = 1) const {
        PrecisionConfig c = *this;
        for (int i = 0; i < times; ++i) c.bits *= escalation_factor;
        return c;
    }
};

class Interval {
  public:
    explicit Interval(long prec = 64) : prec_(check_prec(prec)) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }

    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        lo_[0] = o.lo_[0];
        hi_[0] = o.hi_[0];
        o.moved_ = true;
    }

    Interval& operator=(const Interval& o) {
        if (this != &o) {
            Interval tmp(o);
            swap(tmp);
        }
        return *this;
    }

    Interval& operator=(Interval&& o) noexcept {
        swap(o);
        return *this;
    }

    ~Interval() {
        if (!moved_) {
            mpfr_clear(lo_);
            mpfr_clear(hi_);
        }
    }

    void swap(Interval& o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(moved_, o.moved_);
    }

    long precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }

    // -- constructors from exact values ------------------------------------

    static Interval point(long v, long prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }

    static Interval from_rational(const Rational& q, long prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_integer(const Integer& z, long prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_endpoints(const Rational& lo, const Rational& hi, long prec) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
        Interval r(prec);
        mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_mpfr(mpfr_srcptr lo, mpfr_srcptr hi, long prec) {
        if (mpfr_cmp(lo, hi) > 0) throw std::invalid_argument("Interval: lo > hi");
        Interval r(prec);
        mpfr_set(r.lo_, lo, MPFR_RNDD);
        mpfr_set(r.hi_, hi, MPFR_RNDU);
        return r;
    }

    static Interval hull(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    /// Intersection of two enclosures of the same real number.
    static Interval intersect(const Interval& a, const Interval& b) {
        if (!a.overlaps(b)) throw interval_error("intersect: disjoint intervals");
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    // -- predicates --------------------------------------------------------

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool is_strictly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_strictly_negative() const { return mpfr_sgn(hi_) < 0; }

    bool contains(const Rational& q) const {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }
    bool contains(long v) const {
        return mpfr_cmp_si(lo_, v) <= 0 && mpfr_cmp_si(hi_, v) >= 0;
    }
    bool contains(const Interval& o) const {
        return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
    }
    bool overlaps(const Interval& o) const {
        return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
    }
    /// The whole interval lies strictly below o.
    bool strictly_below(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

    /// Exact dyadic endpoints as rationals (MPFR values are m * 2^e).
    Rational lo_rational() const { return mpfr_to_rational(lo_); }
    Rational hi_rational() const { return mpfr_to_rational(hi_); }

    Interval width() const {
        Interval r(prec_);
        mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDD);
        mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
        return r;
    }

    double width_double() const {
        mpfr_t w;
        mpfr_init2(w, 64);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        return d;
    }

    double mid_double() const {
        return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2;
    }

    /// width() <= 2^e ?
    bool width_below_pow2(long e) const {
        mpfr_t w;
        mpfr_init2(w, prec_);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        bool ok;
        if (mpfr_zero_p(w)) {
            ok = true;
        } else {
            mpfr_t bound;
            mpfr_init2(bound, 64);
            mpfr_set_si(bound, 1, MPFR_RNDN);
            mpfr_mul_2si(bound, bound, e, MPFR_RNDN);
            ok = mpfr_cmp(w, bound) <= 0;
            mpfr_clear(bound);
        }
        mpfr_clear(w);
        return ok;
    }

    // -- arithmetic ----------------------------------------------------------

    friend Interval operator-(const Interval& a) {
        Interval r(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& a, const Interval& b) {
        // min/max over the four endpoint products, each with the rounding
        // direction of the endpoint being produced.
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);

        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);

        mpfr_clear(t);
        return r;
    }

    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero())
            throw interval_error("interval division by an interval containing 0");
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);

        mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

        mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);

        mpfr_clear(t);
        return r;
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    Interval abs() const {
        Interval r(prec_);
        if (mpfr_sgn(lo_) >= 0) return *this;
        if (mpfr_sgn(hi_) <= 0) return -*this;
        mpfr_set_zero(r.lo_, 1);
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_neg(t, lo_, MPFR_RNDU);
        mpfr_max(r.hi_, t, hi_, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    /// Integer power; sound for any base sign (even powers of a straddling
    /// interval include 0).
    Interval pow_int(long n) const {
        if (n < 0) throw std::invalid_argument("pow_int: negative exponent");
        Interval r = point(1, prec_);
        if (n == 0) return r;
        if (n % 2 == 1 || !contains_zero()) {
            if (n % 2 == 0 && is_strictly_negative()) {
                Interval a = -*this;
                Interval rr(prec_);
                mpfr_pow_si(rr.lo_, a.lo_, n, MPFR_RNDD);
                mpfr_pow_si(rr.hi_, a.hi_, n, MPFR_RNDU);
                return rr;
            }
            if (n % 2 == 1 || is_strictly_positive()) {
                Interval rr(prec_);
                mpfr_pow_si(rr.lo_, lo_, n, MPFR_RNDD);
                mpfr_pow_si(rr.hi_, hi_, n, MPFR_RNDU);
                return rr;
            }
        }
        // even power of a zero-straddling interval: [0, max(|lo|,|hi|)^n]
        Interval a = abs();
        Interval rr(prec_);
        mpfr_set_zero(rr.lo_, 1);
        mpfr_pow_si(rr.hi_, a.hi_, n, MPFR_RNDU);
        return rr;
    }

    // -- elementary functions (monotone cases) -------------------------------

    /// exp is increasing everywhere.
    Interval exp() const {
        Interval r(prec_);
        mpfr_exp(r.lo_, lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /// log requires a strictly positive interval.
    Interval log() const {
        if (mpfr_sgn(lo_) <= 0) throw interval_error("interval log of nonpositive interval");
        Interval r(prec_);
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    Interval sqrt() const {
        if (mpfr_sgn(lo_) < 0) throw interval_error("interval sqrt of negative interval");
        Interval r(prec_);
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /// sin restricted to arguments verified inside [0, 1.5], where it is
    /// increasing (1.5 < pi/2). That is all this library needs.
    Interval sin_monotone() const {
        if (mpfr_sgn(lo_) < 0 || mpfr_cmp_d(hi_, 1.5) > 0)
            throw interval_error("sin_monotone: argument outside [0, 1.5]");
        Interval r(prec_);
        mpfr_sin(r.lo_, lo_, MPFR_RNDD);
        mpfr_sin(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    static Interval pi(long prec) {
        Interval r(check_prec(prec));
        mpfr_const_pi(r.lo_, MPFR_RNDD);
        mpfr_const_pi(r.hi_, MPFR_RNDU);
        return r;
    }

    // -- formatting ----------------------------------------------------------

    /// Decimal rendering of one endpoint with directed rounding, for
    /// diagnostics and JSON artifacts (lo rounds down, hi rounds up, so the
    /// printed pair still encloses the value).
    std::string lo_string(long digits = 25) const { return decimal(lo_, digits, MPFR_RNDD); }
    std::string hi_string(long digits = 25) const { return decimal(hi_, digits, MPFR_RNDU); }

    std::string brief() const { return "[" + lo_string(20) + ", " + hi_string(20) + "]"; }

  private:
    static long check_prec(long p) {
        if (p < 2) throw std::invalid_argument("Interval: precision too small");
        return p;
    }

    static Rational mpfr_to_rational(mpfr_srcptr x) {
        if (!mpfr_number_p(x)) throw interval_error("endpoint is not finite");
        if (mpfr_zero_p(x)) return Rational(0);
        Integer m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
        Rational q(m);
        if (e >= 0) {
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
            q *= Rational(p);
        } else {
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
            q /= Rational(p);
        }
        return q;
    }

    static std::string decimal(mpfr_srcptr x, long digits, mpfr_rnd_t rnd) {
        char* s = nullptr;
        if (mpfr_asprintf(&s, "%.*R*e", static_cast<int>(digits), rnd, x) < 0)
            throw interval_error("mpfr_asprintf failed");
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    long prec_;
    mpfr_t lo_;
    mpfr_t hi_;
    bool moved_ = false;
};

enum class IvOp { Add, Sub, Mul, Div };

/// Dispatcher form of the four basic operations.
inline Interval iv_arith(const Interval& a, const Interval& b, IvOp op) {
    switch (op) {
        case IvOp::Add: return a + b;
        case IvOp::Sub: return a - b;
        case IvOp::Mul: return a * b;
        case IvOp::Div: return a / b;
    }
    throw std::invalid_argument("iv_arith: bad op");
}

}  // namespace gec
