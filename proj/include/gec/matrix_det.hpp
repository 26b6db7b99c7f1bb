#pragma once

/// Determinants three ways:
///   * bareiss_det     -- fraction-free elimination over the polynomial ring,
///                        exact divisions by the previous pivot;
///   * minor_expansion_det -- division-free cofactor expansion with memoized
///                        column-subset minors;
///   * interval_lu_det -- enclosure of the determinant of an interval matrix
///                        by Gaussian elimination with mignitude pivoting
///                        (fails soft when no pivot excludes zero).
///
/// symbolic_det picks a strategy by size; both symbolic paths are exact and
/// agree, so the choice is purely performance.

#include <gec/interval.hpp>
#include <gec/poly.hpp>

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace gec {

using PolyMatrix = std::vector<std::vector<Poly>>;
using IntervalMatrix = std::vector<std::vector<Interval>>;

namespace detail {

inline void check_square(size_t rows, size_t cols) {
    if (rows == 0 || rows != cols) throw std::invalid_argument("determinant: matrix not square");
}

}  // namespace detail

inline Poly bareiss_det(PolyMatrix m) {
    const size_t n = m.size();
    detail::check_square(n, n == 0 ? 0 : m[0].size());
    int sign = 1;
    Poly prev = Poly::constant(Rational(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Poly::zero();
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num.exact_divide(prev);
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign == 1 ? det : -det;
}

/// Expansion along columns with minors keyed by the row subset (bitmask);
/// effective when entries share monomials. n <= ~20 rows.
inline Poly minor_expansion_det(const PolyMatrix& m) {
    const size_t n = m.size();
    detail::check_square(n, n == 0 ? 0 : m[0].size());
    if (n > 20) throw std::invalid_argument("minor_expansion_det: matrix too large");

    std::unordered_map<unsigned long, Poly> memo;
    // rows_mask: rows still unused; column index = n - popcount(rows_mask)
    auto rec = [&](auto&& self, unsigned long rows_mask) -> Poly {
        if (rows_mask == 0) return Poly::constant(Rational(1));
        auto it = memo.find(rows_mask);
        if (it != memo.end()) return it->second;
        const size_t col = n - static_cast<size_t>(__builtin_popcountl(rows_mask));
        Poly acc;
        int sign = 1;
        for (size_t r = 0; r < n; ++r) {
            if (!(rows_mask & (1ul << r))) continue;
            if (!m[r][col].is_zero()) {
                Poly sub = self(self, rows_mask & ~(1ul << r));
                Poly contrib = m[r][col] * sub;
                acc += (sign == 1) ? contrib : -contrib;
            }
            sign = -sign;
        }
        return memo.emplace(rows_mask, std::move(acc)).first->second;
    };
    return rec(rec, (n == 64 ? ~0ul : (1ul << n) - 1));
}

enum class DetStrategy { Auto, Bareiss, MinorExpansion };

inline Poly symbolic_det(const PolyMatrix& m, DetStrategy strategy = DetStrategy::Auto) {
    switch (strategy) {
        case DetStrategy::Bareiss: return bareiss_det(m);
        case DetStrategy::MinorExpansion: return minor_expansion_det(m);
        case DetStrategy::Auto: break;
    }
    // Minor expansion wins when many entries are shared/sparse and the
    // matrix is small; Bareiss otherwise.
    return m.size() <= 6 ? bareiss_det(m) : minor_expansion_det(m);
}

/// Enclosure of det for an interval matrix; nullopt when elimination hits a
/// column whose candidate pivots all contain zero (caller should escalate
/// precision).
inline std::optional<Interval> interval_lu_det(IntervalMatrix m, long prec) {
    const size_t n = m.size();
    detail::check_square(n, n == 0 ? 0 : m[0].size());
    Interval det = Interval::point(1, prec);
    for (size_t k = 0; k < n; ++k) {
        // pivot: row maximizing min(|lo|,|hi|) among those excluding zero
        size_t best = n;
        double best_mig = -1;
        for (size_t i = k; i < n; ++i) {
            if (m[i][k].contains_zero()) continue;
            Interval a = m[i][k].abs();
            double mig = mpfr_get_d(a.lo(), MPFR_RNDD);
            if (mig > best_mig) {
                best_mig = mig;
                best = i;
            }
        }
        if (best == n) return std::nullopt;
        if (best != k) {
            std::swap(m[best], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k].contains_zero() && m[i][k].width_double() == 0.0) continue;
            Interval factor = m[i][k] / m[k][k];
            for (size_t j = k + 1; j < n; ++j) m[i][j] -= factor * m[k][j];
            m[i][k] = Interval::point(0, prec);
        }
    }
    return det;
}

/// Brute-force exact determinant of a rational matrix (Bareiss over Q).
inline Rational rational_det(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    detail::check_square(n, n == 0 ? 0 : m[0].size());
    Rational det(1);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rational f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

}  // namespace gec
