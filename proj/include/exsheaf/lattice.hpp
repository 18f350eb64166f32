#pragma once

#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "exsheaf/config.hpp"

namespace exsheaf {

/// First Chern class of a torsion sheaf: d*D + sum r^j_i C^j_i.
struct DivisorClass {
    int d = 0;
    std::vector<std::vector<int>> chains;  // chains[j-1][i-1] = r^j_i

    int coefficient(Component c) const {
        return c.is_minus_one() ? d : chains.at(c.chain - 1).at(c.pos - 1);
    }
    int& coefficient(Component c) { return c.is_minus_one() ? d : chains.at(c.chain - 1).at(c.pos - 1); }

    /// Sum of the (-2)-curve multiplicities.
    int chain_total() const {
        int s = 0;
        for (const auto& ch : chains) s = std::accumulate(ch.begin(), ch.end(), s);
        return s;
    }

    DivisorClass& operator+=(const DivisorClass& o) {
        d += o.d;
        for (std::size_t j = 0; j < chains.size(); ++j)
            for (std::size_t i = 0; i < chains[j].size(); ++i) chains[j][i] += o.chains.at(j).at(i);
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o) { return *this += o * -1; }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(DivisorClass a, int k) {
        a.d *= k;
        for (auto& ch : a.chains)
            for (auto& r : ch) r *= k;
        return a;
    }
    friend DivisorClass operator*(int k, const DivisorClass& a) { return a * k; }

    auto operator<=>(const DivisorClass&) const = default;
};

inline DivisorClass zero_class(const CurveConfig& cfg) {
    DivisorClass z;
    for (int j = 1; j <= cfg.chain_count(); ++j) z.chains.emplace_back(cfg.chain_length(j), 0);
    return z;
}

inline bool fits(const CurveConfig& cfg, const DivisorClass& a) {
    if (static_cast<int>(a.chains.size()) != cfg.chain_count()) return false;
    for (int j = 1; j <= cfg.chain_count(); ++j)
        if (static_cast<int>(a.chains[j - 1].size()) != cfg.chain_length(j)) return false;
    return true;
}

inline void check_shape(const CurveConfig& cfg, const DivisorClass& a) {
    require(fits(cfg, a), Errc::shape_mismatch, "divisor class does not match configuration shape");
}

inline DivisorClass class_of(const CurveConfig& cfg, const Support& support) {
    auto c = zero_class(cfg);
    for (auto comp : support) {
        require(cfg.contains(comp), Errc::invalid_input, "unknown component in support");
        c.coefficient(comp) += 1;
    }
    return c;
}

inline DivisorClass minus_one_class(const CurveConfig& cfg) { return class_of(cfg, {Component::minus_one()}); }

/// Components with nonzero coefficient.
inline Support support_of(const CurveConfig& cfg, const DivisorClass& a) {
    Support s;
    for (auto c : cfg.components())
        if (a.coefficient(c) != 0) s.push_back(c);
    return s;
}

/// All coefficients nonnegative.
inline bool is_effective(const DivisorClass& a) {
    if (a.d < 0) return false;
    for (const auto& ch : a.chains)
        for (int r : ch)
            if (r < 0) return false;
    return true;
}

/// Intersection pairing extended bilinearly.
inline int pair(const CurveConfig& cfg, const DivisorClass& a, const DivisorClass& b) {
    check_shape(cfg, a);
    check_shape(cfg, b);
    const auto& comps = cfg.components();
    const auto& m = cfg.matrix();
    int total = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        int ai = a.coefficient(comps[i]);
        if (ai == 0) continue;
        for (std::size_t j = 0; j < comps.size(); ++j) total += ai * m[i][j] * b.coefficient(comps[j]);
    }
    return total;
}

/// Euler pairing of two torsion sheaves, -c1(a).c1(b).
inline int chi(const CurveConfig& cfg, const DivisorClass& a, const DivisorClass& b) {
    require(is_effective(a) && is_effective(b), Errc::precondition, "chi expects classes of torsion sheaves");
    return -pair(cfg, a, b);
}

inline bool is_numerically_exceptional(const CurveConfig& cfg, const DivisorClass& e) {
    check_shape(cfg, e);
    require(e.d == 1, Errc::precondition, "exceptional check requires coefficient 1 on D");
    return pair(cfg, e, e) == -1;
}

/// Reduced connected subchain of a single chain: the class of a spherical line bundle.
inline bool is_numerically_spherical(const CurveConfig& cfg, const DivisorClass& s) {
    if (!fits(cfg, s) || s.d != 0) return false;
    int chains_used = 0;
    for (const auto& ch : s.chains) {
        int first = -1, last = -1;
        for (int i = 0; i < static_cast<int>(ch.size()); ++i) {
            if (ch[i] != 0 && ch[i] != 1) return false;
            if (ch[i] == 1) {
                if (first < 0) first = i;
                last = i;
            }
        }
        if (first < 0) continue;
        ++chains_used;
        for (int i = first; i <= last; ++i)
            if (ch[i] != 1) return false;
    }
    return chains_used == 1 && pair(cfg, s, s) == -2;
}

/// Class-level action of the spherical twist: e - chi(s, e) s.
inline DivisorClass twist_class(const CurveConfig& cfg, const DivisorClass& e, const DivisorClass& s) {
    require(is_numerically_spherical(cfg, s), Errc::precondition, "twist_class: s is not spherical");
    check_shape(cfg, e);
    return e - s * (-pair(cfg, s, e));
}

}  // namespace exsheaf
