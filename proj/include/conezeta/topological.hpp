#ifndef CONEZETA_TOPOLOGICAL_HPP
#define CONEZETA_TOPOLOGICAL_HPP

#include <string>

#include "cone.hpp"
#include "cone_integral.hpp"
#include "motivic_rational.hpp"
#include "rational_function_s.hpp"

namespace conezeta {

struct TopZeta {
    RationalFunctionS value;

    friend bool operator==(const TopZeta&, const TopZeta&) = default;
    std::string to_string() const { return value.to_string(); }
};

/// Sum over the pieces with |I_k| = |M_k| of chi(E°_I_k) prod_{j in M_k} 1/(A_j s + B_j).
inline TopZeta top_zeta_direct(const ResolutionData& r, const Decomposition& d, const EdgeConstants& e)
{
    RationalFunctionS total;
    for (const auto& p : d.pieces) {
        if (p.I.size() != p.M.size()) {
            continue;
        }
        auto it = r.strata.find(p.I);
        if (it == r.strata.end()) {
            throw std::invalid_argument("no stratum for a piece with |I| = |M|");
        }
        RationalFunctionS term(static_cast<long>(it->second.euler));
        for (int j : p.M) {
            const EdgeConstant& c = e.at(static_cast<std::size_t>(j - 1));
            term *= RationalFunctionS::inverse_linear(c.A, c.B);
        }
        total += term;
    }
    return {total};
}

/// The L -> 1 limit of each tagged term of an assembled Z_geom:
/// (L-1)^|I| [E°_I] prod fractions tends to 0 when |I| > |M| and to
/// chi(E°_I) prod 1/(A_j s + B_j) when |I| = |M|.
inline TopZeta top_zeta_limit(const MotivicRational& z)
{
    RationalFunctionS total;
    for (const auto& t : z.terms()) {
        if (!t.piece) {
            throw std::invalid_argument("top_zeta_limit needs terms produced by assemble_geom");
        }
        const PieceTag& tag = *t.piece;
        if (tag.I.size() < tag.M.size() || t.factors.size() != tag.M.size()) {
            throw std::invalid_argument("term violates |I| >= |M|; input is corrupted");
        }
        if (tag.I.size() > tag.M.size()) {
            continue;
        }
        RationalFunctionS term(static_cast<long>(tag.euler));
        for (const auto& f : t.factors) {
            term *= RationalFunctionS::inverse_linear(f.A, f.B);
        }
        total += term;
    }
    return {total};
}

} // namespace conezeta

#endif // CONEZETA_TOPOLOGICAL_HPP
