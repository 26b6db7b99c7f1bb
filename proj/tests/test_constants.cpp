#include <gec/constants.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace gec;

namespace {

// Enclosure from a published digit prefix: [digits, digits + 1 ulp-of-last-digit].
Interval prefix_bracket(const std::string& digits, long prec = 256) {
    auto dot = digits.find('.');
    std::string num = digits.substr(0, dot) + digits.substr(dot + 1);
    std::string den = "1" + std::string(digits.size() - dot - 1, '0');
    Rational lo = rational_from_string(num + "/" + den);
    Integer step;
    mpz_ui_pow_ui(step.get_mpz_t(), 10,
                  static_cast<unsigned long>(digits.size() - dot - 1));
    return Interval::from_endpoints(lo, lo + Rational(1) / Rational(step), prec);
}

}  // namespace

TEST_CASE("e enclosure: digits, width contract, monotonicity") {
    PrecisionConfig cfg(256);
    Interval e = enclose_e(cfg);
    CHECK(prefix_bracket("2.71828182845904523536").contains(e));
    CHECK(e.width_below_pow2(3 - 256));

    CHECK(e.lo_rational() > Rational(27, 10));
    CHECK(e.hi_rational() < Rational(272, 100));

    // width shrinks at least geometrically as bits doubles
    double w64 = enclose_e(PrecisionConfig(64)).width_double();
    double w128 = enclose_e(PrecisionConfig(128)).width_double();
    double w256 = e.width_double();
    CHECK(w128 < w64 / 4);
    CHECK(w256 < w128 / 4);

    // digits beyond the published prefix: the 512-bit recomputation is the oracle
    CHECK(enclose_e(PrecisionConfig(64)).contains(enclose_e(PrecisionConfig(512))));
    CHECK(e.contains(enclose_e(PrecisionConfig(512))));
}

TEST_CASE("gamma enclosure") {
    PrecisionConfig cfg(256);
    Interval g = enclose_gamma(cfg);
    CHECK(prefix_bracket("0.5772156649").contains(g));
    CHECK(g.lo_rational() > Rational(577215, 1000000));
    CHECK(g.hi_rational() < Rational(577216, 1000000));
    CHECK(g.width_below_pow2(3 - 256));
    CHECK(enclose_gamma(PrecisionConfig(64)).contains(enclose_gamma(PrecisionConfig(512))));
    CHECK(g.contains(enclose_gamma(PrecisionConfig(512))));
}

TEST_CASE("zeta enclosures against the direct-series oracle") {
    PrecisionConfig cfg(128);

    // oracle: exact partial sum plus the integral tail sandwich
    auto zeta_oracle = [](long s, long N) {
        Rational S(0);
        for (long k = 1; k <= N; ++k) {
            Rational kk(1);
            for (long i = 0; i < s; ++i) kk *= k;
            S += Rational(1) / kk;
        }
        auto integral_from = [&](long a) -> Rational {
            Rational as(1);
            for (long i = 0; i < s - 1; ++i) as *= a;
            return Rational(1) / (Rational(s - 1) * as);
        };
        return Interval::from_endpoints(S + integral_from(N + 1), S + integral_from(N), 128);
    };

    CHECK(zeta_oracle(2, 4000).contains(enclose_zeta(2, cfg)));
    CHECK(zeta_oracle(3, 2000).contains(enclose_zeta(3, cfg)));

    CHECK(prefix_bracket("1.64493406684822643647", 128).contains(enclose_zeta(2, cfg)));
    CHECK(prefix_bracket("1.2020569", 128).contains(enclose_zeta(3, cfg)));

    Interval pi2_6 = Interval::pi(160).pow_int(2) / Interval::point(6, 160);
    CHECK(pi2_6.overlaps(enclose_zeta(2, cfg)));

    CHECK_THROWS_AS(enclose_zeta(1, cfg), std::invalid_argument);
}

TEST_CASE("zeta at large s stays inside (1, 1 + 2^(2-s))") {
    PrecisionConfig cfg(96);
    for (long s = 20; s <= 40; s += 5) {
        Interval z = enclose_zeta(s, cfg);
        CHECK(z.lo_rational() > Rational(1));
        CHECK(z.hi_rational() < Rational(1) + detail::pow2_inv(s - 2));
    }
}

TEST_CASE("even-zeta ratio agrees with direct enclosures up to m = 15") {
    PrecisionConfig cfg(160);
    Interval z2 = enclose_zeta(2, cfg);
    for (long m = 2; m <= 15; ++m) {
        Interval via_ratio =
            Interval::from_rational(even_zeta_coeff(m), 160) * z2.pow_int(m);
        CHECK(via_ratio.overlaps(enclose_zeta(2 * m, cfg)));
    }
}

TEST_CASE("containment monotonicity across precisions") {
    for (long bits : {64L, 128L, 256L}) {
        PrecisionConfig lo(bits), hi(bits * 2);
        CHECK(enclose_e(lo).contains(enclose_e(hi)));
        CHECK(enclose_gamma(lo).contains(enclose_gamma(hi)));
        CHECK(enclose_zeta(2, lo).contains(enclose_zeta(2, hi)));
        CHECK(enclose_zeta(5, lo).contains(enclose_zeta(5, hi)));
    }
}
