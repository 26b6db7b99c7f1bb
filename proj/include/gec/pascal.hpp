#pragma once

/// Exact combinatorial side of the certification: the binomial submatrices
/// M_{-theta} of the lower-triangular Pascal matrix, the row/column index
/// condition that makes them strictly positive, and the cumulant-coordinate
/// Jacobian specialized at K* = {k1 = 1, k2 = k3 = k5 = ... = 0}, which must
/// collapse to exactly those binomial entries.

#include <gec/bell.hpp>
#include <gec/exact.hpp>
#include <gec/matrix_det.hpp>
#include <gec/poly.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace gec {

/// theta is either gamma itself (k == 1) or a gamma-moment index k.
struct ThetaChoice {
    long k = 1;

    static ThetaChoice gamma() { return {1}; }
    static ThetaChoice gamma_var(long k) {
        if (k < 2) throw std::invalid_argument("ThetaChoice: moment index must be >= 2");
        return {k};
    }

    bool is_gamma() const { return k == 1; }
    std::string name() const { return is_gamma() ? "gamma" : "gamma^(" + std::to_string(k) + ")"; }
    bool operator==(const ThetaChoice&) const = default;
};

/// theta in G_n^U u {gamma}: k == 1 or n <= k <= 2n.
inline void check_theta(long n, ThetaChoice theta) {
    if (n < 2) throw std::invalid_argument("theta context n must be >= 2");
    if (!(theta.k == 1 || (theta.k >= n && theta.k <= 2 * n)))
        throw std::invalid_argument("theta " + theta.name() + " invalid for n=" +
                                    std::to_string(n));
}

/// All admissible theta for a given n, in the deterministic order
/// gamma, gamma^(n), ..., gamma^(2n).  |result| = n + 2.
inline std::vector<ThetaChoice> all_thetas(long n) {
    std::vector<ThetaChoice> ts{ThetaChoice::gamma()};
    for (long k = n; k <= 2 * n; ++k) ts.push_back(ThetaChoice::gamma_var(k));
    return ts;
}

/// Row indices {1, n, n+1, ..., 2n} \ {k(theta)} and column indices
/// {1, 2, 3, 5, ..., 2n-1}, both ascending; each has n+1 entries.
inline std::pair<std::vector<long>, std::vector<long>> pascal_indices(long n,
                                                                      ThetaChoice theta) {
    check_theta(n, theta);
    std::vector<long> rows;
    if (theta.k != 1) rows.push_back(1);
    for (long j = n; j <= 2 * n; ++j)
        if (j != theta.k) rows.push_back(j);
    std::vector<long> cols{1, 2};
    for (long l = 3; l <= 2 * n - 1; l += 2) cols.push_back(l);
    return {rows, cols};
}

/// Exact determinant of [C(j_i, l_i)]; strictly positive by the LSTP
/// property whenever j_i >= l_i for all i.
inline Rational pascal_submatrix_det(long n, ThetaChoice theta) {
    auto [rows, cols] = pascal_indices(n, theta);
    std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            m[i][j] = Rational(binomial(rows[i], cols[j]));
    return rational_det(std::move(m));
}

struct LstpWitness {
    bool ok = false;
    std::vector<long> rows;
    std::vector<long> cols;
};

/// j_i >= l_i for every i -- the index condition behind det > 0.
inline LstpWitness lstp_index_check(long n, ThetaChoice theta) {
    auto [rows, cols] = pascal_indices(n, theta);
    LstpWitness w{true, rows, cols};
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i] < cols[i]) {
            w.ok = false;
            break;
        }
    return w;
}

/// Full-derivative cumulant Jacobian d gamma^(j) / d k_l with the chain-rule
/// contributions of the even-cumulant constraints k_{2m} = b_m k_2^m
/// (b_m = (2m-1)! times the even-zeta ratio), built symbolically and then
/// specialized at K*. Must equal [C(j, l)] entrywise.
inline std::vector<std::vector<Rational>> bell_jacobian_at_Kstar(long n, ThetaChoice theta) {
    auto [rows, cols] = pascal_indices(n, theta);

    std::map<VarId, Rational> kstar;
    kstar[VarId::kappa(1)] = Rational(1);
    for (long l = 2; l <= 2 * n; ++l) kstar[VarId::kappa(l)] = Rational(0);

    // explicit return type: gmpxx expression templates must not outlive
    // their operands
    auto cumulant_b = [](long m) -> Rational {
        return Rational(factorial(2 * m - 1)) * even_zeta_coeff(m);
    };

    std::vector<std::vector<Rational>> out(rows.size(),
                                           std::vector<Rational>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        Poly Bj = moment_from_cumulants(rows[i]);
        for (size_t c = 0; c < cols.size(); ++c) {
            const long l = cols[c];
            Poly d = Bj.derivative(VarId::kappa(l));
            if (l == 2) {
                for (long m = 2; m <= n; ++m) {
                    Poly chain = Bj.derivative(VarId::kappa(2 * m)) *
                                 (Rational(m) * cumulant_b(m) *
                                  Poly::variable(VarId::kappa(2)).pow(m - 1));
                    d += chain;
                }
            }
            out[i][c] = d.eval_rational(kstar);
        }
    }
    return out;
}

}  // namespace gec
