#pragma once

#include <map>
#include <string>
#include <vector>

#include "exsheaf/factorization.hpp"

namespace exsheaf {

using SymbolicFactorization = BasicFactorization<AffineDegree>;

/// One catalog entry. `decreasing` lists the parameters that must strictly decrease
/// in the given order (a3 > b3 > c3), restricted to those the shape uses.
struct CatalogShape {
    std::string label;
    SymbolicFactorization shape;
    std::vector<std::string> params;
    std::vector<std::string> decreasing;
};

struct Catalog {
    std::string pattern;
    std::vector<CatalogShape> shapes;
    std::vector<std::vector<int>> l_supports;  // chain positions of L in a (G, L) split
    std::vector<std::string> notes;
};

inline const std::vector<std::string>& catalog_patterns() {
    static const std::vector<std::string> p{"12", "123", "12321", "123321"};
    return p;
}

inline int catalog_length(const std::string& pattern) {
    if (pattern == "12") return 2;
    if (pattern == "123") return 3;
    if (pattern == "12321") return 5;
    if (pattern == "123321") return 6;
    fail(Errc::invalid_input, "unknown catalog pattern '" + pattern + "'");
}

/// Supports (chain positions) of the line bundle L in a perfect factorization (G, L).
/// For 12321 the chains C_i..C_3 are read for i on either side of C_3.
inline std::vector<std::vector<int>> l_supports(const std::string& pattern) {
    if (pattern == "12") return {{2}, {1, 2}};
    if (pattern == "123") return {{1, 2, 3}, {2, 3}, {3}};
    if (pattern == "12321") return {{1, 2, 3}, {2, 3}, {3}, {3, 4}, {3, 4, 5}, {1, 2, 3, 4, 5}};
    if (pattern == "123321") return {{1, 2, 3}, {2, 3}, {3}, {2, 3, 4}, {2, 3, 4, 5}, {2, 3, 4, 5, 6}, {3, 4}};
    fail(Errc::invalid_input, "unknown catalog pattern '" + pattern + "'");
}

namespace detail {

struct ShapeBuilder {
    int chain = 1;

    using P = AffineDegree;

    SymbolicAtom atom(std::vector<std::pair<int, int>> comps, std::vector<P> degs) const {
        std::vector<AtomPart<P>> parts;
        for (std::size_t i = 0; i < comps.size(); ++i)
            parts.push_back({Component::curve(chain, comps[i].first), comps[i].second, degs[i]});
        return SymbolicAtom::make(std::move(parts));
    }
    SymbolicAtom line(std::vector<int> pos, std::vector<P> degs) const {
        std::vector<std::pair<int, int>> c;
        for (int x : pos) c.emplace_back(x, 1);
        return atom(c, std::move(degs));
    }
};

inline std::vector<std::string> used_params(const SymbolicFactorization& f) {
    std::vector<std::string> out;
    for (const auto& g : f.factors)
        for (const auto& part : g.atom.parts)
            for (const auto& [name, k] : part.deg.coefficients())
                if (k != 0 && std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    std::sort(out.begin(), out.end());
    return out;
}

inline CatalogShape shape(std::string label, std::vector<BasicFactor<AffineDegree>> factors) {
    CatalogShape s{std::move(label), {std::move(factors)}, {}, {}};
    s.params = used_params(s.shape);
    for (const char* n : {"a3", "b3", "c3"})
        if (std::find(s.params.begin(), s.params.end(), n) != s.params.end()) s.decreasing.push_back(n);
    return s;
}

}  // namespace detail

/// Perfect-factorization shapes for rigid sheaves with c_1 = C1+2C2 and C1+2C2+3C3, and
/// the supports of the peelable line bundle L for the longer patterns. Components live
/// on chain `chain` of cfg, which must be at least as long as the pattern.
inline Catalog catalog(const CurveConfig& cfg, const std::string& pattern, int chain = 1) {
    const int n = catalog_length(pattern);
    require(chain >= 1 && chain <= cfg.chain_count() && cfg.chain_length(chain) >= n, Errc::shape_mismatch,
            "catalog pattern needs a chain of length " + std::to_string(n));
    detail::ShapeBuilder b{chain};
    using detail::shape;
    auto p = [](const char* name, int off = 0) { return AffineDegree::param(name, off); };
    auto F = [](SymbolicAtom a, int mult = 1, bool with_prev = false) {
        return BasicFactor<AffineDegree>{std::move(a), mult, with_prev};
    };
    Catalog c{pattern, {}, l_supports(pattern), {}};

    if (pattern == "12") {
        auto l12 = b.line({1, 2}, {p("a1"), p("a2")});
        c.shapes.push_back(shape("1", {F(b.line({2}, {p("a2")})), F(l12)}));
        c.shapes.push_back(shape("2", {F(l12), F(b.line({2}, {p("a2", -1)}))}));
        c.shapes.push_back(shape("3", {F(l12), F(b.line({2}, {p("a2", -2)}))}));
    } else if (pattern == "123") {
        auto c3 = [&](const char* name, int off = 0) { return b.line({3}, {p(name, off)}); };
        auto c23 = [&](AffineDegree x, AffineDegree y) { return b.line({2, 3}, {x, y}); };
        auto c123 = [&](AffineDegree x, AffineDegree y, AffineDegree z) { return b.line({1, 2, 3}, {x, y, z}); };
        auto thick = [&](AffineDegree x, AffineDegree y, AffineDegree z) {
            return b.atom({{1, 1}, {2, 2}, {3, 1}}, {x, y, z});
        };
        const auto a1 = p("a1"), a2 = p("a2"), a3 = p("a3"), b3 = p("b3");
        c.shapes.push_back(shape("1-1", {F(c3("a3")), F(c23(a2, a3)), F(c123(a1, a2, a3))}));
        c.shapes.push_back(shape("1-2", {F(c3("a3")), F(c123(a1, a2, a3)), F(c23(a2 - 1, a3))}));
        c.shapes.push_back(shape("1-3", {F(c3("a3")), F(c123(a1, a2, a3)), F(c23(a2 - 2, a3))}));
        c.shapes.push_back(shape("2-1", {F(c23(a2, a3)), F(c123(a1, a2, a3)), F(c3("b3"))}));
        c.shapes.push_back(shape("2-2", {F(c123(a1, a2, a3)), F(c23(a2 - 1, a3)), F(c3("b3"))}));
        c.shapes.push_back(shape("2-3", {F(c123(a1, a2, a3)), F(c23(a2 - 2, a3)), F(c3("b3"))}));
        c.shapes.push_back(shape("3-1", {F(c123(a1, a2, a3)), F(c3("b3")), F(c23(a2, b3))}));
        c.shapes.push_back(shape("3-2", {F(c23(a2, a3)), F(c3("b3")), F(c123(a1, a2 + 1, b3))}));
        c.shapes.push_back(shape("3-3", {F(c123(a1, a2, a3)), F(c3("b3")), F(c23(a2 - 1, b3))}));
        c.shapes.push_back(shape("3-4", {F(thick(a1, a2, a3)), F(c3("a3", -1), 2, true)}));
        c.shapes.push_back(shape("4-1", {F(c123(a1, a2, a3)), F(c23(a2, b3)), F(c3("c3"))}));
        c.shapes.push_back(shape("4-2", {F(c23(a2, a3)), F(c123(a1, a2 + 1, b3)), F(c3("c3"))}));
        c.shapes.push_back(shape("4-3", {F(c123(a1, a2, b3 + 1)), F(c23(a2 - 1, b3)), F(c3("c3"))}));
        c.shapes.push_back(shape("4-4", {F(thick(a1, a2, b3 + 1)), F(c3("b3"), 1, true), F(c3("c3"))}));
        c.notes.push_back("shape 3-4 is a direct sum with no (G, L) split");
    }
    return c;
}

/// Parameter assignments for a shape: free parameters over {-1, 0, 1}, and each later
/// parameter of the decreasing list 1, 2 or 3 below the previous one.
inline std::vector<std::map<std::string, int>> degree_grid(const CatalogShape& s) {
    std::vector<std::map<std::string, int>> out;
    std::map<std::string, int> cur;
    std::vector<std::string> order;
    for (const auto& q : s.params)
        if (std::find(s.decreasing.begin(), s.decreasing.end(), q) == s.decreasing.end()) order.push_back(q);
    order.insert(order.end(), s.decreasing.begin(), s.decreasing.end());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == order.size()) {
            out.push_back(cur);
            return;
        }
        const auto& name = order[i];
        auto pos = std::find(s.decreasing.begin(), s.decreasing.end(), name);
        if (pos != s.decreasing.begin() && pos != s.decreasing.end()) {
            int prev = cur.at(*(pos - 1));
            for (int step = 1; step <= 3; ++step) {
                cur[name] = prev - step;
                self(self, i + 1);
            }
        } else {
            for (int v = -1; v <= 1; ++v) {
                cur[name] = v;
                self(self, i + 1);
            }
        }
    };
    rec(rec, 0);
    return out;
}

inline std::string describe(const CurveConfig& cfg, const SymbolicFactorization& f) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        const auto& g = f.factors[i];
        if (i > 0) s += g.with_previous ? " + " : ", ";
        s += describe(cfg, g.atom);
        if (g.multiplicity != 1) s += "^" + std::to_string(g.multiplicity);
    }
    return s + ")";
}

}  // namespace exsheaf
