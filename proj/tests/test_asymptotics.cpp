#include <gec/asymptotics.hpp>
#include <gec/quadrature.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace gec;

namespace {

Interval paper_bracket(const std::string& digits, long prec = 192) {
    bool neg = digits[0] == '-';
    std::string mag = neg ? digits.substr(1) : digits;
    auto dot = mag.find('.');
    std::string num = mag.substr(0, dot) + mag.substr(dot + 1);
    std::string den = "1" + std::string(mag.size() - dot - 1, '0');
    Rational v = rational_from_string(num + "/" + den);
    if (neg) v = -v;
    Rational ulp = rational_from_string("1/" + den);
    return Interval::from_endpoints(v - ulp, v + ulp, prec);
}

const PrecisionConfig kCfg(128);

}  // namespace

TEST_CASE("lambert_w fixed points and digits") {
    CHECK(lambert_w(enclose_e(kCfg), kCfg).contains(Rational(1)));
    CHECK(paper_bracket("0.5671432904").contains(lambert_w(1, kCfg)));
    CHECK_THROWS_AS(lambert_w(Interval::point(-1, 64), kCfg), std::invalid_argument);
}

TEST_CASE("lambert_w bracket validity on random points") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> expo(-3.0, 6.0);
    for (int i = 0; i < 1000; ++i) {
        double x = std::pow(10.0, expo(rng));
        Rational xq(x);
        Interval xi = Interval::from_rational(xq, 128);
        Interval W = lambert_w(xi, kCfg);
        CHECK(W.is_strictly_positive());
        CHECK((W * W.exp()).contains(xq));
    }
}

TEST_CASE("factorial-law approximations bracket the exact values") {
    CHECK(eta_asym(15, kCfg).contains(eta_n(15, kCfg)));
    CHECK(paper_bracket("1307654429611.2775941595").overlaps(eta_asym(15, kCfg)));
    CHECK(eta_tilde_asym(15, kCfg).contains(eta_tilde_n(15, kCfg)));
    CHECK(paper_bracket("-1307694336767.4617097988").overlaps(eta_tilde_asym(15, kCfg)));
    CHECK(eta_asym(2, kCfg).contains(eta_n(2, kCfg)));
    CHECK(eta_tilde_asym(2, kCfg).contains(eta_tilde_n(2, kCfg)));
    CHECK_THROWS_AS(eta_asym(1, kCfg), std::invalid_argument);
}

TEST_CASE("gamma ratio approaches eta") {
    // gamma^(30)/eta^(30) within 1e-6 of 1
    Interval ratio = gamma_n(30, kCfg) / eta_n(30, kCfg);
    Interval dev = (ratio - Interval::point(1, 128)).abs();
    CHECK(dev.hi_rational() < Rational(1, 1000000));
}

TEST_CASE("saddle-point law: magnitude and trend") {
    Interval d15 = delta_asym(15, kCfg);
    // same order of magnitude as the exact 313.9164765016
    CHECK(d15.lo_rational() > Rational(150));
    CHECK(d15.hi_rational() < Rational(600));

    double prev = 1e9;
    for (long n : {5L, 10L, 15L}) {
        Interval exact = delta_n(n, kCfg).abs();
        double rel = relative_error(exact, delta_asym(n, kCfg)).mid_double();
        CHECK(rel < prev);
        prev = rel;
    }
}

TEST_CASE("non-alternating delta law") {
    Interval approx = delta_tilde_asym(15, kCfg);
    Interval exact = delta_tilde_n(15, kCfg);
    // |approx - exact| relative to n! * 2e is tiny (the omitted 5^-n block)
    Interval scale = Interval::from_rational(Rational(factorial(15)), 128) *
                     Interval::point(2, 128) * enclose_e(kCfg);
    Interval reldev = (approx - exact).abs() / scale;
    CHECK(reldev.hi_rational() < Rational(1, 1000000000));
    CHECK_THROWS_AS(delta_tilde_asym(0, kCfg), std::invalid_argument);
}

TEST_CASE("saddle diagnostics") {
    SaddleReport at_e = saddle_point_diagnostics(enclose_e(kCfg), kCfg);
    CHECK(at_e.W.contains(Rational(1)));
    CHECK(at_e.u_star.overlaps(enclose_e(kCfg)));

    SaddleReport at10 = saddle_point_diagnostics(10, kCfg);
    CHECK((at10.u_star * at10.u_star.log()).contains(Rational(10)));

    for (long n = 1; n <= 50; ++n) {
        SaddleReport rep = saddle_point_diagnostics(n, kCfg);
        CHECK(rep.defining_ok);
        CHECK(rep.phi_prime_ok);
        CHECK(rep.phi_second_negative);
    }
}
