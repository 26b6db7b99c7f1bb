#include <gec/tables.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace gec;

namespace {
Interval iv(const char* lo, const char* hi, long prec = 128) {
    return Interval::from_endpoints(rational_from_string(lo), rational_from_string(hi), prec);
}
}  // namespace

TEST_CASE("certified decimal rendering") {
    // both endpoints agree after truncation
    auto s = certified_decimal(iv("12344/100000", "12346/100000"), 3, RoundMode::Truncate);
    REQUIRE(s.has_value());
    CHECK(*s == "0.123");

    // straddles a grid point: truncation cannot certify, nearest can
    Interval near_one =
        iv("-100000000000001/100000000000000", "-99999999999999/100000000000000");
    CHECK(!certified_decimal(near_one, 10, RoundMode::Truncate).has_value());
    auto r = certified_decimal(near_one, 10, RoundMode::Nearest);
    REQUIRE(r.has_value());
    CHECK(*r == "-1.0000000000");

    // exact points certify in both modes
    Interval exact = Interval::point(-1, 96);
    CHECK(*certified_decimal(exact, 4, RoundMode::Truncate) == "-1.0000");
    CHECK(*certified_decimal(exact, 4, RoundMode::Nearest) == "-1.0000");

    // rounding direction: 0.12345 rounds to 0.1235 half-away, truncates to 0.1234
    Interval tie = iv("123456/1000000", "123457/1000000");
    CHECK(*certified_decimal(tie, 4, RoundMode::Truncate) == "0.1234");
    CHECK(*certified_decimal(tie, 4, RoundMode::Nearest) == "0.1235");

    // disagreement yields nullopt rather than a guess
    CHECK(!certified_decimal(iv("1/10", "2/10"), 3, RoundMode::Truncate).has_value());
}

TEST_CASE("single-row table matches the published row 0") {
    PrecisionConfig cfg(128);
    TableArtifact t = emit_tables(0, 10, cfg, RoundMode::Truncate);
    REQUIRE(t.rows.size() == 1);
    const TableRow& r = t.rows[0];
    CHECK(!r.indeterminate);
    CHECK(*r.gamma.digits == "1.0000000000");
    CHECK(*r.delta.digits == "-1.0000000000");
    CHECK(*r.eta.digits == "0.6321205588");
    CHECK(*r.delta_tilde.digits == "-7.3890560989");
    // 1 - e = -1.71828182845904...: truncation and rounding differ here
    CHECK(*r.eta_tilde.digits == "-1.7182818284");
    TableArtifact tn = emit_tables(0, 10, cfg, RoundMode::Nearest);
    CHECK(*tn.rows[0].eta_tilde.digits == "-1.7182818285");
}

TEST_CASE("row 15 digit strings under both conventions") {
    PrecisionConfig cfg(128);
    TableArtifact t = emit_tables(15, 10, cfg, RoundMode::Truncate);
    const TableRow& r = t.rows[15];
    CHECK(*r.gamma.digits == "1307654429495.7941762096");
    CHECK(*r.delta.digits == "313.9164765016");
    CHECK(*r.eta.digits == "1307654429611.2775941595");

    TableArtifact tn = emit_tables(15, 10, cfg, RoundMode::Nearest);
    CHECK(*tn.rows[15].delta_tilde.digits == "-7109255026416.1913290094");
    CHECK(*tn.rows[15].eta_tilde.digits == "-1307694336767.4617097988");
}

TEST_CASE("requesting more digits never widens an enclosure") {
    PrecisionConfig cfg(96);
    TableArtifact t10 = emit_tables(6, 10, cfg);
    TableArtifact t25 = emit_tables(6, 25, cfg);
    for (size_t i = 0; i < t10.rows.size(); ++i) {
        CHECK(!t25.rows[i].indeterminate);
        CHECK(t25.rows[i].bits_used >= t10.rows[i].bits_used);
    }
    // widths shrink (or stay point) when recomputed at the escalated bits
    for (long n = 0; n <= 6; ++n) {
        double w10 = eta_n(n, PrecisionConfig(t10.rows[static_cast<size_t>(n)].bits_used))
                         .width_double();
        double w25 = eta_n(n, PrecisionConfig(t25.rows[static_cast<size_t>(n)].bits_used))
                         .width_double();
        CHECK(w25 <= w10);
    }
}

TEST_CASE("escalation exhaustion yields INDETERMINATE rows, not guesses") {
    // 64 bits resolves ~19 decimal digits; with escalation disabled a
    // 40-digit request cannot certify
    PrecisionConfig cfg(64, 0);
    TableArtifact t = emit_tables(2, 40, cfg, RoundMode::Truncate);
    CHECK(!t.fully_certified());
    bool any_null = false;
    for (const auto& r : t.rows)
        if (r.indeterminate) {
            any_null = true;
            CHECK(!r.eta.digits.has_value());
        }
    CHECK(any_null);

    std::ostringstream csv;
    write_tables_csv(t, csv);
    CHECK(csv.str().find("INDETERMINATE") != std::string::npos);

    // with escalation allowed the same request certifies
    TableArtifact ok = emit_tables(2, 40, PrecisionConfig(64, 3), RoundMode::Truncate);
    CHECK(ok.fully_certified());
}

TEST_CASE("artifact serialization") {
    PrecisionConfig cfg(96);
    TableArtifact t = emit_tables(2, 10, cfg);
    std::ostringstream csv;
    write_tables_csv(t, csv);
    std::string text = csv.str();
    CHECK(text.find("n,gamma_n,delta_n,eta_n,delta_tilde_n,eta_tilde_n,bits_used") == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);  // header + 3 rows

    auto js = tables_to_json(t);
    CHECK(js["rows"].size() == 3);
    CHECK(js["rows"][0]["gamma_n"]["digits"] == "1.0000000000");
    CHECK(js["rows"][0]["gamma_n"].contains("lo"));
    CHECK(js["rows"][0]["gamma_n"].contains("hi"));
    CHECK(t.fully_certified());
}
