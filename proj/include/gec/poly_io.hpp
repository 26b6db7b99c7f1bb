#pragma once

/// Canonical on-disk polynomial format, bit-exact and deterministic:
///
///   # gec-poly-v1 normalization=primitive-positive-lead order=deg-asc-hivar-desc
///   5 ; g4:1
///   -20 ; g1:1 g3:1
///   ...
///
/// One monomial per line as "<coefficient> ; <var:power> ...", factors in
/// ascending variable order, lines in the canonical term order (map order).
/// The constant monomial is written as "1". The header doubles as the cache
/// invalidation key: readers reject files whose header line differs.

#include <gec/poly.hpp>

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gec {

inline constexpr const char* kPolyFormatHeader =
    "# gec-poly-v1 normalization=primitive-positive-lead order=deg-asc-hivar-desc";

inline void write_poly(std::ostream& os, const Poly& p) {
    os << kPolyFormatHeader << "\n";
    for (const auto& [m, c] : p.terms()) os << c.get_str() << " ; " << m.str() << "\n";
}

inline std::string poly_to_text(const Poly& p) {
    std::ostringstream os;
    write_poly(os, p);
    return os.str();
}

inline Poly read_poly(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header != kPolyFormatHeader)
        throw std::invalid_argument("poly file: unrecognized header '" + header + "'");
    Poly p;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto sep = line.find(';');
        if (sep == std::string::npos)
            throw std::invalid_argument("poly file: malformed line '" + line + "'");
        std::string coeff = line.substr(0, sep);
        coeff.erase(coeff.find_last_not_of(' ') + 1);
        coeff.erase(0, coeff.find_first_not_of(' '));
        Rational c = rational_from_string(coeff);
        std::istringstream rest(line.substr(sep + 1));
        std::vector<std::pair<VarId, long>> factors;
        std::string tok;
        while (rest >> tok) {
            if (tok == "1") continue;
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("poly file: malformed factor '" + tok + "'");
            factors.emplace_back(VarId::parse(tok.substr(0, colon)),
                                 std::stol(tok.substr(colon + 1)));
        }
        p += Poly::term(Monomial(std::move(factors)), c);
    }
    return p;
}

inline Poly poly_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_poly(is);
}

}  // namespace gec
