#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <string>
#include <vector>

#include "exsheaf/atom.hpp"
#include "exsheaf/config.hpp"
#include "exsheaf/lattice.hpp"
#include "exsheaf/linear.hpp"

namespace exsheaf {

// ---------------------------------------------------------------------------
// Node coordinates
// ---------------------------------------------------------------------------

/// A point on a component P^1 in a fixed affine coordinate t; `infinity` means t = oo.
struct NodePoint {
    bool infinity = false;
    int t = 0;
};

/// Chain nodes C_i n C_{i+1} sit at oo on C_i and at 0 on C_{i+1}. The node D n C^j_k sits
/// at t = 1 on C^j_k and at t = (attachment index + 1) on D.
inline NodePoint node_point(const CurveConfig& cfg, const Edge& e, Component side) {
    if (!e.a.is_minus_one()) return side == e.a ? NodePoint{true, 0} : NodePoint{false, 0};
    if (side == e.b) return {false, 1};
    int idx = 0;
    for (const auto& f : cfg.edges()) {
        if (f.a == e.a && f.b == e.b) break;
        if (f.a.is_minus_one()) ++idx;
    }
    return {false, idx + 1};
}

/// Value at `p` of the polynomial with coefficients coeff[0..deg] (leading coefficient at oo).
inline std::vector<Rational> evaluation_row(int deg, NodePoint p) {
    std::vector<Rational> row(static_cast<std::size_t>(deg + 1), 0);
    if (p.infinity) {
        row.back() = 1;
        return row;
    }
    Rational power = 1;
    for (int i = 0; i <= deg; ++i) {
        row[i] = power;
        power *= p.t;
    }
    return row;
}

using GluingScalar = std::function<Rational(const Edge&)>;

namespace detail {

inline bool in(const Support& s, Component c) { return std::binary_search(s.begin(), s.end(), c); }

inline Support overlap(const AtomicSheaf& a, const AtomicSheaf& b) {
    Support w;
    for (const auto& p : a.parts)
        if (b.find(p.comp)) w.push_back(p.comp);
    return w;
}

inline void check_reduced_pair(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b) {
    require(a.reduced() && b.reduced(), Errc::unsupported, "h0 of thickened atoms needs hom_dims");
    for (const auto* x : {&a, &b}) {
        require(!x->parts.empty(), Errc::invalid_input, "atom has empty support");
        for (const auto& p : x->parts) require(cfg.contains(p.comp), Errc::shape_mismatch, "atom not in configuration");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reduced atoms: brute-force oracle and closed form
// ---------------------------------------------------------------------------

/// dim Hom(A, B) for line bundles on reduced curves, as the solution space of the
/// section-matching system. A map A -> B is a section of B tensor A^-1 on the common
/// components W that agrees across nodes inside W and vanishes at every node where the
/// support of B continues past W. Nodes where only A continues impose nothing.
inline int oracle_h0(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b,
                     const GluingScalar& gluing = {}) {
    detail::check_reduced_pair(cfg, a, b);
    const Support w = detail::overlap(a, b);
    if (w.empty()) return 0;
    const Support sa = a.support(), sb = b.support();

    std::vector<int> degree(w.size()), offset(w.size());
    int unknowns = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        degree[i] = b.find(w[i])->deg - a.find(w[i])->deg;
        offset[i] = unknowns;
        unknowns += std::max(0, degree[i] + 1);
    }
    if (unknowns == 0) return 0;

    auto index = [&](Component c) -> int {
        auto it = std::lower_bound(w.begin(), w.end(), c);
        return (it != w.end() && *it == c) ? static_cast<int>(it - w.begin()) : -1;
    };
    auto add_value = [&](std::vector<Rational>& row, int i, NodePoint p, const Rational& scale) {
        if (degree[i] < 0) return;
        auto ev = evaluation_row(degree[i], p);
        for (std::size_t k = 0; k < ev.size(); ++k) row[offset[i] + k] += scale * ev[k];
    };

    Matrix m;
    for (const auto& e : cfg.edges()) {
        int ia = index(e.a), ib = index(e.b);
        if (ia < 0 && ib < 0) continue;
        std::vector<Rational> row(static_cast<std::size_t>(unknowns), 0);
        if (ia >= 0 && ib >= 0) {
            Rational lambda = gluing ? gluing(e) : Rational(1);
            add_value(row, ia, node_point(cfg, e, e.a), 1);
            add_value(row, ib, node_point(cfg, e, e.b), -lambda);
        } else {
            int i = ia >= 0 ? ia : ib;
            Component here = ia >= 0 ? e.a : e.b;
            Component there = ia >= 0 ? e.b : e.a;
            bool b_continues = detail::in(sb, there) && !detail::in(sa, there);
            if (!b_continues) continue;
            add_value(row, i, node_point(cfg, e, here), 1);
        }
        if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; })) m.push_back(std::move(row));
    }
    return nullity(std::move(m), unknowns);
}

/// Same value as oracle_h0, from degrees alone. Each common component gets degree
/// deg_B - deg_A minus the number of nodes where B continues; components of negative
/// degree carry no sections and force vanishing at their neighbours, repeatedly. A
/// surviving tree piece contributes (sum of degrees + 1); a piece with one cycle
/// contributes its degree sum, plus one when the cycle core has all degrees zero.
inline int closed_form_h0(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b) {
    detail::check_reduced_pair(cfg, a, b);
    const Support w = detail::overlap(a, b);
    if (w.empty()) return 0;
    const Support sa = a.support(), sb = b.support();

    std::vector<int> deg(w.size());
    std::vector<std::vector<int>> adj(w.size());
    auto index = [&](Component c) -> int {
        auto it = std::lower_bound(w.begin(), w.end(), c);
        return (it != w.end() && *it == c) ? static_cast<int>(it - w.begin()) : -1;
    };
    for (std::size_t i = 0; i < w.size(); ++i) deg[i] = b.find(w[i])->deg - a.find(w[i])->deg;
    for (const auto& e : cfg.edges()) {
        int ia = index(e.a), ib = index(e.b);
        if (ia >= 0 && ib >= 0) {
            adj[ia].push_back(ib);
            adj[ib].push_back(ia);
        } else if (ia >= 0 || ib >= 0) {
            int i = ia >= 0 ? ia : ib;
            Component there = ia >= 0 ? e.b : e.a;
            if (detail::in(sb, there) && !detail::in(sa, there)) --deg[i];
        }
    }

    std::vector<bool> alive(w.size(), true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!alive[i] || deg[i] >= 0) continue;
            alive[i] = false;
            changed = true;
            for (int n : adj[i])
                if (alive[n]) --deg[n];
        }
    }

    int total = 0;
    std::vector<bool> seen(w.size(), false);
    for (std::size_t s = 0; s < w.size(); ++s) {
        if (!alive[s] || seen[s]) continue;
        std::vector<int> piece{static_cast<int>(s)};
        seen[s] = true;
        for (std::size_t i = 0; i < piece.size(); ++i)
            for (int n : adj[piece[i]])
                if (alive[n] && !seen[n]) {
                    seen[n] = true;
                    piece.push_back(n);
                }
        int edges = 0, sum = 0;
        for (int v : piece) {
            sum += deg[v];
            for (int n : adj[v])
                if (alive[n]) ++edges;
        }
        edges /= 2;
        const int betti = edges - static_cast<int>(piece.size()) + 1;
        if (betti == 0) {
            total += sum + 1;
        } else if (betti == 1) {
            // prune leaves to find the cycle core
            std::vector<int> valence(w.size(), 0);
            std::vector<bool> core(w.size(), false);
            for (int v : piece) {
                core[v] = true;
                for (int n : adj[v])
                    if (alive[n]) ++valence[v];
            }
            for (bool pruned = true; pruned;) {
                pruned = false;
                for (int v : piece) {
                    if (!core[v] || valence[v] > 1) continue;
                    core[v] = false;
                    pruned = true;
                    for (int n : adj[v])
                        if (alive[n] && core[n]) --valence[n];
                }
            }
            bool flat = true;
            for (int v : piece)
                if (core[v] && deg[v] != 0) flat = false;
            total += sum + (flat ? 1 : 0);
        } else {
            return oracle_h0(cfg, a, b);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Hom/Ext dimensions with interval propagation for thickened atoms
// ---------------------------------------------------------------------------

struct Interval {
    int lo = 0;
    int hi = INT_MAX / 4;

    static Interval exactly(int v) { return {v, v}; }
    bool exact() const { return lo == hi; }
    bool contains(int v) const { return lo <= v && v <= hi; }
    bool is_zero() const { return lo == 0 && hi == 0; }
    Interval meet(Interval o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
    bool operator==(const Interval&) const = default;
};

inline std::string to_string(Interval i) {
    if (i.exact()) return std::to_string(i.lo);
    return "[" + std::to_string(i.lo) + "," + std::to_string(i.hi) + "]";
}

struct HomDims {
    Interval h0, h1, h2;
    int chi = 0;
    bool determinate = false;
};

struct HomTriple {
    int h0 = 0, h1 = 0, h2 = 0;
    int chi() const { return h0 - h1 + h2; }
    bool operator==(const HomTriple&) const = default;
};

inline HomTriple exact(const HomDims& d) {
    require(d.determinate, Errc::unsupported, "hom dimensions are not determined");
    return {d.h0.lo, d.h1.lo, d.h2.lo};
}

namespace detail {

inline void check_atom_loose(const CurveConfig& cfg, const AtomicSheaf& a) {
    require(!a.parts.empty(), Errc::invalid_input, "atom has empty support");
    for (const auto& p : a.parts) {
        require(cfg.contains(p.comp), Errc::shape_mismatch, "atom component not in configuration");
        require(p.mult == 1 || p.mult == 2, Errc::unsupported, "no presentation for thickening " + std::to_string(p.mult));
        require(p.mult == 1 || !p.comp.is_minus_one(), Errc::unsupported, "no presentation for a thickened D");
    }
}

inline HomDims hom_dims_impl(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b);

/// Bounds on dim Hom(A, B). Thickened arguments are split by every reduced two-step
/// presentation; each gives a long exact sequence whose connecting map has unknown
/// rank between 0 and the smaller of its two neighbours. All bounds are intersected.
inline Interval h0_bounds(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b) {
    if (a.reduced() && b.reduced()) return Interval::exactly(closed_form_h0(cfg, a, b));
    Interval r{0, INT_MAX / 4};
    if (!a.reduced()) {
        // 0 -> Hom(Q,B) -> Hom(A,B) -> Hom(K,B) -> Ext1(Q,B)
        for (const auto& f : reduced_filtrations(cfg, a)) {
            HomDims q = hom_dims_impl(cfg, f.quot, b);
            Interval k0 = h0_bounds(cfg, f.sub, b);
            int lo = std::max(q.h0.lo, q.h0.lo + k0.lo - std::min(k0.hi, q.h1.hi));
            r = r.meet({lo, q.h0.hi + k0.hi});
        }
    }
    if (!b.reduced()) {
        // 0 -> Hom(A,K) -> Hom(A,B) -> Hom(A,Q) -> Ext1(A,K)
        for (const auto& f : reduced_filtrations(cfg, b)) {
            HomDims k = hom_dims_impl(cfg, a, f.sub);
            Interval q0 = h0_bounds(cfg, a, f.quot);
            int lo = std::max(k.h0.lo, k.h0.lo + q0.lo - std::min(q0.hi, k.h1.hi));
            r = r.meet({lo, k.h0.hi + q0.hi});
        }
    }
    require(r.lo <= r.hi, Errc::unsupported, "inconsistent hom bounds");
    return r;
}

inline HomDims hom_dims_impl(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b) {
    HomDims d;
    d.chi = -pair(cfg, class_of(cfg, a), class_of(cfg, b));
    d.h0 = h0_bounds(cfg, a, b);
    d.h2 = h0_bounds(cfg, b, twist_by_canonical(cfg, a));  // Serre duality
    // h1 >= 0 gives h0 + h2 >= chi
    d.h0.lo = std::max(d.h0.lo, d.chi - d.h2.hi);
    d.h2.lo = std::max(d.h2.lo, d.chi - d.h0.hi);
    d.h1 = {std::max(0, d.h0.lo + d.h2.lo - d.chi), d.h0.hi + d.h2.hi - d.chi};
    require(d.h1.lo <= d.h1.hi, Errc::unsupported, "inconsistent hom bounds");
    d.determinate = d.h0.exact() && d.h2.exact();
    return d;
}

}  // namespace detail

/// h^i(A, B) = dim Ext^i(A, B) for atoms on the same configuration.
inline HomDims hom_dims(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b) {
    detail::check_atom_loose(cfg, a);
    detail::check_atom_loose(cfg, b);
    return detail::hom_dims_impl(cfg, a, b);
}

/// Exact h^0(A, B) or an error when the bounds do not pin it.
inline int h0(const CurveConfig& cfg, const AtomicSheaf& a, const AtomicSheaf& b) {
    auto d = hom_dims(cfg, a, b);
    require(d.h0.exact(), Errc::unsupported, "h0 is not determined");
    return d.h0.lo;
}

// ---------------------------------------------------------------------------
// Mukai's lemma
// ---------------------------------------------------------------------------

/// Ext data for an extension 0 -> G2 -> R -> G1 -> 0.
struct MukaiData {
    HomTriple g1g1, g2g2, rr, g1g2, g2g1;
};

/// Checks, under h1(R,R) = h0(G2,G1) = h2(G1,G2) = 0:
///   h1(G1,G1) = h1(G2,G2) = 0,
///   h0(R,R) = h0(G1,G1) + h0(G2,G2) + chi(G1,G2),
///   h2(R,R) = h2(G1,G1) + h2(G2,G2) + chi(G2,G1),
///   h1(G1,G2) <= h0(G1,G1) + h0(G2,G2) - 1.
inline bool mukai_check(const MukaiData& m) {
    require(m.rr.h1 == 0 && m.g2g1.h0 == 0 && m.g1g2.h2 == 0, Errc::hypothesis,
            "Mukai hypotheses h1(R,R) = h0(G2,G1) = h2(G1,G2) = 0 not met");
    if (m.g1g1.h1 != 0 || m.g2g2.h1 != 0) return false;
    if (m.rr.h0 != m.g1g1.h0 + m.g2g2.h0 + m.g1g2.chi()) return false;
    if (m.rr.h2 != m.g1g1.h2 + m.g2g2.h2 + m.g2g1.chi()) return false;
    return m.g1g2.h1 <= m.g1g1.h0 + m.g2g2.h0 - 1;
}

/// Collects MukaiData via hom_dims; the sub is G2, the quotient G1.
inline MukaiData mukai_data(const CurveConfig& cfg, const AtomicSheaf& quot, const AtomicSheaf& sub,
                            const AtomicSheaf& ext) {
    return {exact(hom_dims(cfg, quot, quot)), exact(hom_dims(cfg, sub, sub)), exact(hom_dims(cfg, ext, ext)),
            exact(hom_dims(cfg, quot, sub)), exact(hom_dims(cfg, sub, quot))};
}

}  // namespace exsheaf
