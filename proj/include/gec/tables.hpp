#pragma once

/// Certified table emission for the five sequences.
///
/// A digit string is emitted only when both interval endpoints produce the
/// same string, decided exactly: each dyadic endpoint is scaled by 10^digits
/// as a rational and reduced to an integer with pure GMP arithmetic (no
/// float formatting anywhere). Two render modes exist because published
/// reference tables disagree on this: Truncate (toward zero) and Nearest
/// (half away from zero). Rows escalate precision until every column
/// certifies or escalations run out, in which case the row is marked
/// INDETERMINATE.

#include <gec/interval.hpp>
#include <gec/sequences.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace gec {

enum class RoundMode { Truncate, Nearest };

namespace detail {

// q * 10^f reduced to an integer under `mode`, exactly.
inline Integer scaled_integer(const Rational& q, long f, RoundMode mode) {
    Integer ten_f;
    mpz_ui_pow_ui(ten_f.get_mpz_t(), 10, static_cast<unsigned long>(f));
    Rational s = q * Rational(ten_f);
    const Integer& num = s.get_num();
    const Integer& den = s.get_den();
    Integer out;
    if (mode == RoundMode::Truncate) {
        mpz_tdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    } else {
        // round to nearest, ties away from zero: sign * floor((2|num| + den) / (2 den))
        Integer two_num = 2 * abs(num);
        Integer two_den = 2 * den;
        Integer t = two_num + den;
        mpz_fdiv_q(out.get_mpz_t(), t.get_mpz_t(), two_den.get_mpz_t());
        if (sgn(num) < 0) out = -out;
    }
    return out;
}

inline std::string render_scaled(const Integer& z, long f) {
    const bool neg = sgn(z) < 0;
    const Integer mag = abs(z);
    std::string digits = mag.get_str();
    if (static_cast<long>(digits.size()) <= f)
        digits.insert(0, static_cast<size_t>(f + 1 - digits.size()), '0');
    digits.insert(digits.size() - static_cast<size_t>(f), ".");
    return neg ? "-" + digits : digits;
}

}  // namespace detail

/// The certified digit string of v at `frac_digits` decimals, or nullopt
/// when the endpoints disagree at that precision.
inline std::optional<std::string> certified_decimal(const Interval& v, long frac_digits,
                                                    RoundMode mode) {
    Integer z_lo = detail::scaled_integer(v.lo_rational(), frac_digits, mode);
    Integer z_hi = detail::scaled_integer(v.hi_rational(), frac_digits, mode);
    if (z_lo != z_hi) return std::nullopt;
    return detail::render_scaled(z_lo, frac_digits);
}

struct TableCell {
    std::optional<std::string> digits;
    std::string lo;
    std::string hi;
};

struct TableRow {
    long n = 0;
    TableCell gamma, delta, eta, delta_tilde, eta_tilde;
    long bits_used = 0;
    bool indeterminate = false;
};

struct TableArtifact {
    long n_max = 0;
    long digits = 10;
    RoundMode mode = RoundMode::Truncate;
    std::vector<TableRow> rows;

    bool fully_certified() const {
        for (const auto& r : rows)
            if (r.indeterminate) return false;
        return true;
    }
};

/// Compute rows n = 0..n_max with per-row precision escalation.
inline TableArtifact emit_tables(long n_max, long digits, const PrecisionConfig& cfg,
                                 RoundMode mode = RoundMode::Truncate) {
    if (n_max < 0 || digits < 1) throw std::invalid_argument("emit_tables: bad arguments");
    TableArtifact art;
    art.n_max = n_max;
    art.digits = digits;
    art.mode = mode;
    for (long n = 0; n <= n_max; ++n) {
        TableRow row;
        row.n = n;
        PrecisionConfig level = cfg;
        for (int esc = 0;; ++esc) {
            Interval g = gamma_n(n, level);
            Interval et = eta_n(n, level);
            Interval d = delta_n(n, level);
            Interval ett = eta_tilde_n(n, level);
            Interval dt = delta_tilde_n(n, level);

            auto fill = [&](TableCell& cell, const Interval& v) {
                cell.digits = certified_decimal(v, digits, mode);
                cell.lo = v.lo_string(digits + 10);
                cell.hi = v.hi_string(digits + 10);
                return cell.digits.has_value();
            };
            bool ok = true;
            ok &= fill(row.gamma, g);
            ok &= fill(row.delta, d);
            ok &= fill(row.eta, et);
            ok &= fill(row.delta_tilde, dt);
            ok &= fill(row.eta_tilde, ett);
            row.bits_used = level.bits;
            if (ok) {
                row.indeterminate = false;
                break;
            }
            if (esc >= cfg.max_escalations) {
                row.indeterminate = true;
                break;
            }
            level = level.escalated();
        }
        art.rows.push_back(std::move(row));
    }
    return art;
}

inline std::string cell_text(const TableCell& c) {
    return c.digits ? *c.digits : std::string("INDETERMINATE");
}

inline void write_tables_csv(const TableArtifact& art, std::ostream& os) {
    os << "n,gamma_n,delta_n,eta_n,delta_tilde_n,eta_tilde_n,bits_used\n";
    for (const auto& r : art.rows) {
        os << r.n << "," << cell_text(r.gamma) << "," << cell_text(r.delta) << ","
           << cell_text(r.eta) << "," << cell_text(r.delta_tilde) << ","
           << cell_text(r.eta_tilde) << "," << r.bits_used << "\n";
    }
}

inline nlohmann::json tables_to_json(const TableArtifact& art) {
    auto cell = [](const TableCell& c) {
        nlohmann::json j{{"lo", c.lo}, {"hi", c.hi}};
        if (c.digits) j["digits"] = *c.digits;
        else j["digits"] = nullptr;
        return j;
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : art.rows) {
        rows.push_back(nlohmann::json{
            {"n", r.n},
            {"gamma_n", cell(r.gamma)},
            {"delta_n", cell(r.delta)},
            {"eta_n", cell(r.eta)},
            {"delta_tilde_n", cell(r.delta_tilde)},
            {"eta_tilde_n", cell(r.eta_tilde)},
            {"bits_used", r.bits_used},
            {"indeterminate", r.indeterminate},
        });
    }
    return nlohmann::json{{"format", "gec-tables-v1"},
                          {"digits", art.digits},
                          {"mode", art.mode == RoundMode::Truncate ? "truncate" : "nearest"},
                          {"rows", rows}};
}

}  // namespace gec
