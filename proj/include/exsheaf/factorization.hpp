#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "exsheaf/atom.hpp"
#include "exsheaf/cohom.hpp"
#include "exsheaf/lattice.hpp"

namespace exsheaf {

/// One filtration quotient G^{+mult}. `with_previous` makes it a direct summand of the
/// factor before it, i.e. both sit at the same filtration step.
template <class Deg>
struct BasicFactor {
    BasicAtom<Deg> atom;
    int multiplicity = 1;
    bool with_previous = false;

    auto operator<=>(const BasicFactor&) const = default;
};

template <class Deg>
struct BasicFactorization {
    std::vector<BasicFactor<Deg>> factors;

    auto operator<=>(const BasicFactorization&) const = default;
};

using Factor = BasicFactor<int>;
using Factorization = BasicFactorization<int>;

template <class Deg>
DivisorClass class_of(const CurveConfig& cfg, const BasicFactorization<Deg>& f) {
    auto c = zero_class(cfg);
    for (const auto& g : f.factors) c += class_of(cfg, g.atom) * g.multiplicity;
    return c;
}

inline Factorization instantiate(const BasicFactorization<AffineDegree>& f, const std::map<std::string, int>& params) {
    Factorization out;
    for (const auto& g : f.factors) out.factors.push_back({instantiate(g.atom, params), g.multiplicity, g.with_previous});
    return out;
}

inline std::string describe(const CurveConfig& cfg, const Factorization& f) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        const auto& g = f.factors[i];
        if (i > 0) s += g.with_previous ? " + " : ", ";
        s += describe(cfg, g.atom);
        if (g.multiplicity != 1) s += "^" + std::to_string(g.multiplicity);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Perfectness
// ---------------------------------------------------------------------------

struct PerfectnessReport {
    bool perfect = true;
    bool indeterminate = false;  // some required value was only bounded
    std::vector<std::string> diagnostics;
};

namespace detail {
inline std::vector<int> positions(const Factorization& f) {
    std::vector<int> pos;
    int p = -1;
    for (const auto& g : f.factors) {
        if (!g.with_previous || p < 0) ++p;
        pos.push_back(p);
    }
    return pos;
}
}  // namespace detail

/// h0(G_i, G_j) = h2(G_j, G_i) = 0 for factors at positions i < j. Summands sharing a
/// position must have h1 = 0 in both directions.
inline PerfectnessReport perfectness_check(const CurveConfig& cfg, const Factorization& f) {
    PerfectnessReport rep;
    const auto pos = detail::positions(f);
    auto need_zero = [&](Interval v, const std::string& what) {
        if (v.is_zero()) return;
        rep.perfect = false;
        if (!v.exact()) rep.indeterminate = true;
        rep.diagnostics.push_back(what + " = " + to_string(v));
    };
    for (std::size_t i = 0; i < f.factors.size(); ++i)
        for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
            const auto& gi = f.factors[i].atom;
            const auto& gj = f.factors[j].atom;
            auto label = [&](const char* h, std::size_t x, std::size_t y) {
                return std::string(h) + "(G" + std::to_string(x + 1) + ",G" + std::to_string(y + 1) + ")";
            };
            if (pos[i] == pos[j]) {
                need_zero(hom_dims(cfg, gi, gj).h1, label("h1", i, j));
                need_zero(hom_dims(cfg, gj, gi).h1, label("h1", j, i));
            } else {
                need_zero(hom_dims(cfg, gi, gj).h0, label("h0", i, j));
                need_zero(hom_dims(cfg, gj, gi).h2, label("h2", j, i));
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Constructions and rewrites
// ---------------------------------------------------------------------------

/// Harder-Narasimhan shape (O_C(a_1)^{r_1}, ..., O_C(a_n)^{r_n}) with a_1 > ... > a_n.
inline Factorization hn_factorization(Component c, const std::map<int, int>& degree_multiplicity) {
    Factorization f;
    for (auto it = degree_multiplicity.rbegin(); it != degree_multiplicity.rend(); ++it) {
        require(it->second >= 0, Errc::invalid_input, "negative multiplicity");
        if (it->second == 0) continue;
        f.factors.push_back({AtomicSheaf::line_bundle({c}, {it->first}), it->second, false});
    }
    return f;
}

namespace detail {
inline bool is_forest_support(const CurveConfig& cfg, const Support& s) {
    std::size_t edges = 0;
    for (const auto& e : cfg.edges())
        if (in(s, e.a) && in(s, e.b)) ++edges;
    return edges + connected_pieces(cfg, s).size() == s.size();
}

inline bool grouped(const Factorization& f, std::size_t i) {
    return f.factors[i].with_previous || (i + 1 < f.factors.size() && f.factors[i + 1].with_previous);
}
}  // namespace detail

/// Exchanges factors i and i+1 (0-based); allowed when h1(G_{i+1}, G_i) = 0.
inline Factorization swap(const CurveConfig& cfg, const Factorization& f, std::size_t i) {
    require(i + 1 < f.factors.size(), Errc::invalid_input, "swap position out of range");
    require(!detail::grouped(f, i) && !detail::grouped(f, i + 1), Errc::precondition,
            "cannot swap a direct summand");
    auto h1 = hom_dims(cfg, f.factors[i + 1].atom, f.factors[i].atom).h1;
    require(h1.is_zero(), Errc::precondition, "swap needs h1(G_{i+1}, G_i) = 0, got " + to_string(h1));
    Factorization out = f;
    std::swap(out.factors[i], out.factors[i + 1]);
    return out;
}

/// The unique non-trivial extension 0 -> sub -> E -> quot -> 0 when h1(quot, sub) = 1.
///
/// Supported geometries: disjoint supports meeting in one node, or supports sharing a single
/// reduced component (which becomes thickened), with the union free of cycles. E is the line
/// bundle on supp(sub) + supp(quot) restricting to quot on supp(quot), so
///   deg_E(c) = deg_quot(c)                 on supp(quot),
///   deg_E(c) = deg_sub(c) + supp(quot).c   elsewhere,
/// and on the shared component deg_sub(c) must equal deg_quot(c) - supp(quot).c.
inline AtomicSheaf extension_atom(const CurveConfig& cfg, const AtomicSheaf& sub, const AtomicSheaf& quot) {
    check_atom(cfg, sub);
    check_atom(cfg, quot);
    auto h1 = hom_dims(cfg, quot, sub).h1;
    require(h1 == Interval::exactly(1), Errc::precondition, "extension needs h1(quot, sub) = 1, got " + to_string(h1));

    const Support ss = sub.support(), sq = quot.support();
    Support shared;
    for (auto c : ss)
        if (quot.find(c)) shared.push_back(c);
    if (shared.empty()) {
        int nodes = 0;
        for (const auto& e : cfg.edges())
            if ((detail::in(ss, e.a) && detail::in(sq, e.b)) || (detail::in(ss, e.b) && detail::in(sq, e.a))) ++nodes;
        require(nodes == 1, Errc::unsupported, "no extension rule: disjoint supports meeting in " +
                                                   std::to_string(nodes) + " nodes");
    } else {
        require(shared.size() == 1, Errc::unsupported, "no extension rule: supports share several components");
        require(sub.multiplicity(shared[0]) == 1 && quot.multiplicity(shared[0]) == 1, Errc::unsupported,
                "no extension rule: shared component already thickened");
    }

    auto quot_dot = [&](Component c) {
        int s = 0;
        for (const auto& p : quot.parts) s += p.mult * cfg.intersection(p.comp, c);
        return s;
    };
    std::vector<AtomPart<int>> parts;
    for (auto c : cfg.components()) {
        const auto* ps = sub.find(c);
        const auto* pq = quot.find(c);
        if (!ps && !pq) continue;
        if (pq && ps) {
            require(ps->deg == pq->deg - quot_dot(c), Errc::unsupported,
                    "no extension rule: degrees on the shared component do not glue to a line bundle");
            parts.push_back({c, ps->mult + pq->mult, pq->deg});
        } else if (pq) {
            parts.push_back({c, pq->mult, pq->deg});
        } else {
            parts.push_back({c, ps->mult, ps->deg + quot_dot(c)});
        }
    }
    auto out = AtomicSheaf::make(std::move(parts));
    require(detail::is_forest_support(cfg, out.support()), Errc::unsupported,
            "no extension rule: the union contains a cycle");
    return out;
}

/// Absorption of one copy of a spherical factor S^{+r} at `position` (0-based).
/// direction 1: (.., G, S^r, ..) -> (.., S^{r-1}, G', ..), G' = ext of S by G; needs h0(S,G) = 0, chi(S,G) = -1.
/// direction 2: (.., S^r, H, ..) -> (.., H', S^{r-1}, ..), H' = ext of H by S; needs h0(H,S) = 0, chi(H,S) = -1.
inline Factorization absorb(const CurveConfig& cfg, const Factorization& f, std::size_t position, int direction) {
    require(position < f.factors.size(), Errc::invalid_input, "absorb position out of range");
    require(direction == 1 || direction == 2, Errc::invalid_input, "direction must be 1 or 2");
    const auto& s = f.factors[position];
    require(s.atom.reduced() && is_numerically_spherical(cfg, class_of(cfg, s.atom)), Errc::precondition,
            "absorb needs a spherical line bundle at the position");
    require(!detail::grouped(f, position), Errc::precondition, "cannot absorb a direct summand");

    Factorization out;
    if (direction == 1) {
        require(position >= 1, Errc::precondition, "no factor before the spherical one");
        const std::size_t g = position - 1;
        require(!detail::grouped(f, g), Errc::precondition, "cannot absorb into a direct summand");
        auto d = hom_dims(cfg, s.atom, f.factors[g].atom);
        require(d.h0.is_zero(), Errc::precondition, "absorb needs h0(S, G) = 0, got " + to_string(d.h0));
        require(d.chi == -1, Errc::precondition, "absorb needs chi(S, G) = -1, got " + std::to_string(d.chi));
        auto ext = extension_atom(cfg, f.factors[g].atom, s.atom);
        out.factors.assign(f.factors.begin(), f.factors.begin() + g);
        if (s.multiplicity > 1) out.factors.push_back({s.atom, s.multiplicity - 1, false});
        out.factors.push_back({ext, f.factors[g].multiplicity, false});
        out.factors.insert(out.factors.end(), f.factors.begin() + position + 1, f.factors.end());
    } else {
        const std::size_t h = position + 1;
        require(h < f.factors.size(), Errc::precondition, "no factor after the spherical one");
        require(!detail::grouped(f, h), Errc::precondition, "cannot absorb into a direct summand");
        auto d = hom_dims(cfg, f.factors[h].atom, s.atom);
        require(d.h0.is_zero(), Errc::precondition, "absorb needs h0(H, S) = 0, got " + to_string(d.h0));
        require(d.chi == -1, Errc::precondition, "absorb needs chi(H, S) = -1, got " + std::to_string(d.chi));
        auto ext = extension_atom(cfg, s.atom, f.factors[h].atom);
        out.factors.assign(f.factors.begin(), f.factors.begin() + position);
        out.factors.push_back({ext, f.factors[h].multiplicity, false});
        if (s.multiplicity > 1) out.factors.push_back({s.atom, s.multiplicity - 1, false});
        out.factors.insert(out.factors.end(), f.factors.begin() + h + 1, f.factors.end());
    }
    return out;
}

/// One applied rewrite, for traces.
struct RewriteStep {
    std::string rule;  // "swap" or "absorb"
    std::size_t position = 0;
    int direction = 0;
    Factorization result;
};

inline RewriteStep rewrite(const CurveConfig& cfg, const Factorization& f, const std::string& rule,
                           std::size_t position, int direction = 1) {
    if (rule == "swap") return {rule, position, 0, swap(cfg, f, position)};
    if (rule == "absorb") return {rule, position, direction, absorb(cfg, f, position, direction)};
    fail(Errc::invalid_input, "unknown rewrite rule '" + rule + "'");
}

}  // namespace exsheaf
