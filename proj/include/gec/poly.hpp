#pragma once

/// Sparse multivariate polynomials over exact rationals.
///
/// Variables are gamma-moments g<k> (g1 is gamma itself), cumulants k<l>, or
/// symbolic zeta values z<l>. Terms live in a std::map keyed by monomial
/// under the canonical order -- total degree ascending, ties broken by the
/// exponent of the highest-index variable (larger exponent first) -- so map
/// iteration *is* the serialization order and equality is structural.
/// No zero coefficients and no zero exponents are ever stored.

#include <gec/interval.hpp>
#include <gec/rational.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gec {

struct VarId {
    enum class Kind : int { Gamma = 0, Kappa = 1, Zeta = 2 };

    Kind kind = Kind::Gamma;
    long index = 1;  // >= 1; Gamma index k means gamma^(k), k=1 meaning gamma

    VarId() = default;
    VarId(Kind k, long i) : kind(k), index(i) {
        if (i < 1) throw std::invalid_argument("VarId: index must be >= 1");
    }

    static VarId gamma(long k) { return VarId(Kind::Gamma, k); }
    static VarId kappa(long l) { return VarId(Kind::Kappa, l); }
    static VarId zeta(long l) { return VarId(Kind::Zeta, l); }

    friend auto operator<=>(const VarId&, const VarId&) = default;

    std::string name() const {
        switch (kind) {
            case Kind::Gamma: return "g" + std::to_string(index);
            case Kind::Kappa: return "k" + std::to_string(index);
            case Kind::Zeta: return "z" + std::to_string(index);
        }
        return "?";
    }

    static VarId parse(const std::string& s) {
        if (s.size() < 2) throw std::invalid_argument("VarId: bad token '" + s + "'");
        long idx = std::stol(s.substr(1));
        switch (s[0]) {
            case 'g': return gamma(idx);
            case 'k': return kappa(idx);
            case 'z': return zeta(idx);
        }
        throw std::invalid_argument("VarId: bad token '" + s + "'");
    }
};

/// Product of variable powers; factors sorted by VarId ascending, powers > 0.
class Monomial {
  public:
    Monomial() = default;

    explicit Monomial(std::vector<std::pair<VarId, long>> factors)
        : factors_(std::move(factors)) {
        normalize();
    }

    static Monomial one() { return Monomial(); }
    static Monomial var(VarId v, long power = 1) {
        return Monomial({{v, power}});
    }

    const std::vector<std::pair<VarId, long>>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    long total_degree() const {
        long d = 0;
        for (const auto& [v, p] : factors_) d += p;
        return d;
    }

    long power_of(VarId v) const {
        for (const auto& [w, p] : factors_)
            if (w == v) return p;
        return 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        std::vector<std::pair<VarId, long>> merged;
        merged.reserve(a.factors_.size() + b.factors_.size());
        auto ia = a.factors_.begin();
        auto ib = b.factors_.begin();
        while (ia != a.factors_.end() && ib != b.factors_.end()) {
            if (ia->first < ib->first) merged.push_back(*ia++);
            else if (ib->first < ia->first) merged.push_back(*ib++);
            else {
                merged.emplace_back(ia->first, ia->second + ib->second);
                ++ia;
                ++ib;
            }
        }
        merged.insert(merged.end(), ia, a.factors_.end());
        merged.insert(merged.end(), ib, b.factors_.end());
        Monomial m;
        m.factors_ = std::move(merged);
        return m;
    }

    /// this / b, or nullopt when b does not divide this.
    std::pair<bool, Monomial> divide(const Monomial& b) const {
        std::vector<std::pair<VarId, long>> out;
        auto ia = factors_.begin();
        for (const auto& [v, p] : b.factors_) {
            while (ia != factors_.end() && ia->first < v) out.push_back(*ia++);
            if (ia == factors_.end() || ia->first != v || ia->second < p)
                return {false, Monomial()};
            if (ia->second > p) out.emplace_back(v, ia->second - p);
            ++ia;
        }
        out.insert(out.end(), ia, factors_.end());
        Monomial m;
        m.factors_ = std::move(out);
        return {true, m};
    }

    /// Set power of v to p-1 (p must be >= 1) -- helper for derivatives.
    Monomial lower_power(VarId v) const {
        std::vector<std::pair<VarId, long>> out;
        for (const auto& [w, p] : factors_) {
            if (w == v) {
                if (p > 1) out.emplace_back(w, p - 1);
            } else {
                out.emplace_back(w, p);
            }
        }
        Monomial m;
        m.factors_ = std::move(out);
        return m;
    }

    /// Drop v entirely.
    Monomial without(VarId v) const {
        std::vector<std::pair<VarId, long>> out;
        for (const auto& [w, p] : factors_)
            if (w != v) out.emplace_back(w, p);
        Monomial m;
        m.factors_ = std::move(out);
        return m;
    }

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

    std::string str() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& [v, p] : factors_) {
            if (!s.empty()) s += " ";
            s += v.name() + ":" + std::to_string(p);
        }
        return s;
    }

  private:
    void normalize() {
        std::sort(factors_.begin(), factors_.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<std::pair<VarId, long>> out;
        for (const auto& [v, p] : factors_) {
            if (p < 0) throw std::invalid_argument("Monomial: negative power");
            if (p == 0) continue;
            if (!out.empty() && out.back().first == v) out.back().second += p;
            else out.emplace_back(v, p);
        }
        factors_ = std::move(out);
    }

    std::vector<std::pair<VarId, long>> factors_;
};

/// Canonical term order: total degree ascending; within a degree, compare
/// exponents from the highest variable downward, larger exponent first.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const long da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        auto ia = a.factors().rbegin(), ea = a.factors().rend();
        auto ib = b.factors().rbegin(), eb = b.factors().rend();
        while (ia != ea || ib != eb) {
            if (ia == ea) return false;  // b still has a higher variable
            if (ib == eb) return true;   // a has a variable b lacks up here
            if (ia->first != ib->first) return ib->first < ia->first;
            if (ia->second != ib->second) return ia->second > ib->second;
            ++ia;
            ++ib;
        }
        return false;
    }
};

class Poly {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    Poly() = default;

    static Poly zero() { return Poly(); }

    static Poly constant(const Rational& c) {
        Poly p;
        if (c != 0) p.terms_.emplace(Monomial::one(), c);
        return p;
    }

    static Poly variable(VarId v) {
        Poly p;
        p.terms_.emplace(Monomial::var(v), Rational(1));
        return p;
    }

    static Poly term(const Monomial& m, const Rational& c) {
        Poly p;
        if (c != 0) p.terms_.emplace(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("Poly: not a constant");
        return terms_.begin()->second;
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long total_degree() const {
        long d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    long degree_in(VarId v) const {
        long d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.power_of(v));
        return d;
    }

    bool contains_var(VarId v) const {
        for (const auto& [m, c] : terms_)
            if (m.power_of(v) > 0) return true;
        return false;
    }

    std::set<VarId> variables() const {
        std::set<VarId> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, p] : m.factors()) vs.insert(v);
        return vs;
    }

    // -- ring operations ----------------------------------------------------

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend Poly operator*(const Rational& c, const Poly& a) {
        if (c == 0) return Poly();
        Poly r = a;
        for (auto& [m, v] : r.terms_) v *= c;
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly pow(long n) const {
        if (n < 0) throw std::invalid_argument("Poly::pow: negative exponent");
        Poly r = constant(Rational(1));
        Poly b = *this;
        while (n > 0) {
            if (n & 1) r *= b;
            n >>= 1;
            if (n > 0) b *= b;
        }
        return r;
    }

    /// Formal partial derivative.
    Poly derivative(VarId v) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            long p = m.power_of(v);
            if (p > 0) r.add_term(m.lower_power(v), c * Rational(p));
        }
        return r;
    }

    /// Substitute each mapped variable by a polynomial; unmapped variables
    /// pass through.
    Poly substitute(const std::map<VarId, Poly>& subs) const {
        Poly result;
        // cache powers of each substituted polynomial
        std::map<VarId, std::vector<Poly>> pows;
        for (const auto& [m, c] : terms_) {
            Poly t = constant(c);
            for (const auto& [v, p] : m.factors()) {
                auto it = subs.find(v);
                if (it == subs.end()) {
                    t *= term(Monomial::var(v, p), Rational(1));
                    continue;
                }
                auto& cached = pows[v];
                if (cached.empty()) cached.push_back(constant(Rational(1)));
                while (static_cast<long>(cached.size()) <= p)
                    cached.push_back(cached.back() * it->second);
                t *= cached[static_cast<size_t>(p)];
            }
            result += t;
        }
        return result;
    }

    /// Exact evaluation with rational assignments for every variable present.
    Rational eval_rational(const std::map<VarId, Rational>& assign) const {
        Rational total(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (const auto& [v, p] : m.factors()) {
                auto it = assign.find(v);
                if (it == assign.end())
                    throw std::invalid_argument("eval_rational: missing variable " + v.name());
                t *= detail::pow_rational(it->second, p);
            }
            total += t;
        }
        return total;
    }

    /// Interval evaluation by nested Horner over one variable at a time,
    /// highest variable outermost, to limit dependency blowup.
    Interval eval_interval(const std::map<VarId, Interval>& assign, long prec) const {
        if (terms_.empty()) return Interval::point(0, prec);
        if (is_constant()) return Interval::from_rational(constant_value(), prec);

        VarId top = highest_variable();
        auto it = assign.find(top);
        if (it == assign.end())
            throw std::invalid_argument("eval_interval: missing variable " + top.name());
        const Interval& x = it->second;

        // group terms by power of `top`
        std::map<long, Poly> groups;
        for (const auto& [m, c] : terms_) {
            long p = m.power_of(top);
            groups[p].add_term(m.without(top), c);
        }
        long maxp = groups.rbegin()->first;
        Interval acc = Interval::point(0, prec);
        for (long p = maxp; p >= 0; --p) {
            acc = acc * x;
            auto g = groups.find(p);
            if (g != groups.end()) acc += g->second.eval_interval(assign, prec);
        }
        return acc;
    }

    VarId highest_variable() const {
        bool found = false;
        VarId best = VarId::gamma(1);
        for (const auto& [m, c] : terms_)
            for (const auto& [v, p] : m.factors())
                if (!found || best < v) {
                    best = v;
                    found = true;
                }
        if (!found) throw std::logic_error("highest_variable: constant polynomial");
        return best;
    }

    /// Leading term under the canonical order (the map's last element).
    std::pair<Monomial, Rational> leading_term() const {
        if (terms_.empty()) throw std::logic_error("leading_term of zero");
        auto it = std::prev(terms_.end());
        return {it->first, it->second};
    }

    /// Exact quotient this / b; throws if the division is not exact.
    Poly exact_divide(const Poly& b) const {
        if (b.is_zero()) throw std::invalid_argument("exact_divide by zero");
        Poly rem = *this;
        Poly quot;
        auto [lm, lc] = b.leading_term();
        while (!rem.is_zero()) {
            auto [rm, rc] = rem.leading_term();
            auto [ok, qm] = rm.divide(lm);
            if (!ok) throw std::logic_error("exact_divide: division not exact");
            Rational qc = rc / lc;
            Poly t = term(qm, qc);
            quot += t;
            rem -= t * b;
        }
        return quot;
    }

    /// content = gcd of numerators / lcm of denominators; dividing by it
    /// yields the primitive integer-coefficient multiple.
    Rational content() const {
        if (terms_.empty()) return Rational(1);
        Integer num_gcd(0), den_lcm(1);
        for (const auto& [m, c] : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational r(num_gcd, den_lcm);
        r.canonicalize();
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            os << "(" << c.get_str() << ")";
            if (!m.is_one()) os << "*" << m.str();
            first = false;
        }
        return os.str();
    }

  private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

enum class PolyOp { Add, Sub, Mul };

inline Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
    switch (op) {
        case PolyOp::Add: return a + b;
        case PolyOp::Sub: return a - b;
        case PolyOp::Mul: return a * b;
    }
    throw std::invalid_argument("poly_arith: bad op");
}

inline Poly partial_derivative(const Poly& p, VarId v) { return p.derivative(v); }

inline Interval eval_poly_interval(const Poly& p, const std::map<VarId, Interval>& assign,
                                   long prec) {
    return p.eval_interval(assign, prec);
}

}  // namespace gec
