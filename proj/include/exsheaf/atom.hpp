#pragma once

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "exsheaf/config.hpp"
#include "exsheaf/lattice.hpp"

namespace exsheaf {

/// Degree written as an affine expression in named integer parameters, e.g. a2 - 1.
class AffineDegree {
public:
    AffineDegree() = default;
    AffineDegree(int constant) : constant_(constant) {}  // NOLINT(implicit)
    static AffineDegree param(const std::string& name, int offset = 0) {
        AffineDegree d(offset);
        d.coeffs_[name] = 1;
        return d;
    }

    int constant() const { return constant_; }
    const std::map<std::string, int>& coefficients() const { return coeffs_; }
    bool is_constant() const { return coeffs_.empty(); }

    int evaluate(const std::map<std::string, int>& params) const {
        int v = constant_;
        for (const auto& [name, k] : coeffs_) {
            auto it = params.find(name);
            require(it != params.end(), Errc::invalid_input, "unbound degree parameter '" + name + "'");
            v += k * it->second;
        }
        return v;
    }

    friend AffineDegree operator+(AffineDegree a, int k) {
        a.constant_ += k;
        return a;
    }
    friend AffineDegree operator-(AffineDegree a, int k) { return a + (-k); }

    std::string to_string() const {
        std::string s;
        for (const auto& [name, k] : coeffs_) {
            if (k == 0) continue;
            if (!s.empty()) s += k > 0 ? "+" : "-";
            else if (k < 0) s += "-";
            if (std::abs(k) != 1) s += std::to_string(std::abs(k));
            s += name;
        }
        if (s.empty()) return std::to_string(constant_);
        if (constant_ > 0) s += "+" + std::to_string(constant_);
        if (constant_ < 0) s += std::to_string(constant_);
        return s;
    }

    auto operator<=>(const AffineDegree&) const = default;

private:
    std::map<std::string, int> coeffs_;
    int constant_ = 0;
};

template <class Deg>
struct AtomPart {
    Component comp;
    int mult = 1;  // 1, or 2 for an order-2 thickening of a (-2)-curve
    Deg deg{};

    auto operator<=>(const AtomPart&) const = default;
};

/// A line bundle on a connected, possibly thickened, union of curves sum mult(c)*c.
/// deg(c) is the degree of the restriction to the reduced curve c; for a thickened
/// component this is the a of O_{2C}(a).
template <class Deg>
struct BasicAtom {
    std::vector<AtomPart<Deg>> parts;  // sorted by component

    static BasicAtom make(std::vector<AtomPart<Deg>> parts) {
        BasicAtom a{std::move(parts)};
        std::sort(a.parts.begin(), a.parts.end(),
                  [](const auto& x, const auto& y) { return x.comp < y.comp; });
        for (std::size_t i = 1; i < a.parts.size(); ++i)
            require(a.parts[i - 1].comp != a.parts[i].comp, Errc::invalid_input, "repeated component in atom");
        return a;
    }

    /// Reduced line bundle O_{c_1 u ... u c_n}(d_1, ..., d_n).
    static BasicAtom line_bundle(const Support& support, const std::vector<Deg>& degs) {
        require(support.size() == degs.size(), Errc::invalid_input, "support/degree length mismatch");
        std::vector<AtomPart<Deg>> parts;
        for (std::size_t i = 0; i < support.size(); ++i) parts.push_back({support[i], 1, degs[i]});
        return make(std::move(parts));
    }

    Support support() const {
        Support s;
        for (const auto& p : parts) s.push_back(p.comp);
        return s;
    }

    bool reduced() const {
        return std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.mult == 1; });
    }

    const AtomPart<Deg>* find(Component c) const {
        for (const auto& p : parts)
            if (p.comp == c) return &p;
        return nullptr;
    }

    int multiplicity(Component c) const {
        auto p = find(c);
        return p ? p->mult : 0;
    }

    auto operator<=>(const BasicAtom&) const = default;
};

using AtomicSheaf = BasicAtom<int>;
using SymbolicAtom = BasicAtom<AffineDegree>;

inline AtomicSheaf instantiate(const SymbolicAtom& s, const std::map<std::string, int>& params) {
    std::vector<AtomPart<int>> parts;
    for (const auto& p : s.parts) parts.push_back({p.comp, p.mult, p.deg.evaluate(params)});
    return AtomicSheaf::make(std::move(parts));
}

template <class Deg>
DivisorClass class_of(const CurveConfig& cfg, const BasicAtom<Deg>& a) {
    auto c = zero_class(cfg);
    for (const auto& p : a.parts) {
        require(cfg.contains(p.comp), Errc::shape_mismatch, "atom component not in configuration");
        c.coefficient(p.comp) += p.mult;
    }
    return c;
}

inline bool is_connected(const CurveConfig& cfg, const Support& s) {
    if (s.empty()) return false;
    std::vector<Component> seen{s.front()};
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (auto n : cfg.neighbors(seen[i]))
            if (std::binary_search(s.begin(), s.end(), n) &&
                std::find(seen.begin(), seen.end(), n) == seen.end())
                seen.push_back(n);
    return seen.size() == s.size();
}

/// Splits a support into connected pieces, each sorted; pieces ordered by first component.
inline std::vector<Support> connected_pieces(const CurveConfig& cfg, const Support& s) {
    std::vector<Support> out;
    std::vector<bool> used(s.size(), false);
    for (std::size_t start = 0; start < s.size(); ++start) {
        if (used[start]) continue;
        Support piece{s[start]};
        used[start] = true;
        for (std::size_t i = 0; i < piece.size(); ++i)
            for (auto n : cfg.neighbors(piece[i])) {
                auto it = std::lower_bound(s.begin(), s.end(), n);
                if (it != s.end() && *it == n && !used[it - s.begin()]) {
                    used[it - s.begin()] = true;
                    piece.push_back(n);
                }
            }
        std::sort(piece.begin(), piece.end());
        out.push_back(piece);
    }
    return out;
}

template <class Deg>
void check_atom(const CurveConfig& cfg, const BasicAtom<Deg>& a) {
    require(!a.parts.empty(), Errc::invalid_input, "atom has empty support");
    for (const auto& p : a.parts) {
        require(cfg.contains(p.comp), Errc::shape_mismatch, "atom component not in configuration");
        require(p.mult == 1 || p.mult == 2, Errc::unsupported, "thickening must be 1 or 2");
        require(p.mult == 1 || !p.comp.is_minus_one(), Errc::unsupported, "D cannot be thickened");
    }
    require(is_connected(cfg, a.support()), Errc::invalid_input, "atom support is not connected");
}

/// A tensor omega_X: degree drops by one on D, unchanged on (-2)-curves.
inline AtomicSheaf twist_by_canonical(const CurveConfig& cfg, AtomicSheaf a) {
    for (auto& p : a.parts) p.deg += cfg.canonical(p.comp);
    return a;
}

/// Two-step filtration 0 -> sub -> atom -> quot -> 0 with both pieces reduced.
struct Filtration {
    AtomicSheaf sub;
    AtomicSheaf quot;
};

/// Every presentation of a thickened line bundle R on G as
///   0 -> R(-G')|_{G-G'} -> R -> R|_{G'} -> 0
/// with G' and G-G' both reduced. The kernel has degree deg(c) - G'.c on c.
/// Pieces may have disconnected support.
inline std::vector<Filtration> reduced_filtrations(const CurveConfig& cfg, const AtomicSheaf& a) {
    std::vector<Filtration> out;
    std::vector<std::size_t> free;  // reduced components: either side
    for (std::size_t i = 0; i < a.parts.size(); ++i)
        if (a.parts[i].mult == 1) free.push_back(i);
    require(free.size() < 20, Errc::unsupported, "atom too large");
    for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
        std::vector<int> quot_mult(a.parts.size(), 0);
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            if (a.parts[i].mult == 2) quot_mult[i] = 1;
        for (std::size_t b = 0; b < free.size(); ++b)
            if (mask & (1u << b)) quot_mult[free[b]] = 1;

        std::vector<AtomPart<int>> qparts, kparts;
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            if (quot_mult[i] == 1) qparts.push_back({a.parts[i].comp, 1, a.parts[i].deg});
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
            if (a.parts[i].mult - quot_mult[i] != 1) continue;
            int shift = 0;
            for (std::size_t q = 0; q < a.parts.size(); ++q)
                if (quot_mult[q] == 1) shift += cfg.intersection(a.parts[q].comp, a.parts[i].comp);
            kparts.push_back({a.parts[i].comp, 1, a.parts[i].deg - shift});
        }
        if (qparts.empty() || kparts.empty()) continue;
        out.push_back({AtomicSheaf::make(std::move(kparts)), AtomicSheaf::make(std::move(qparts))});
    }
    return out;
}

template <class Deg>
std::string degree_string(const Deg& d) {
    if constexpr (std::is_same_v<Deg, int>) return std::to_string(d);
    else return d.to_string();
}

/// Human-readable form such as O_{C1+2C2+C3}(0,-1,0).
template <class Deg>
std::string describe(const CurveConfig& cfg, const BasicAtom<Deg>& a) {
    std::string sup, deg;
    for (const auto& p : a.parts) {
        if (!sup.empty()) sup += "+";
        if (p.mult != 1) sup += std::to_string(p.mult);
        sup += component_name(cfg, p.comp);
        if (!deg.empty()) deg += ",";
        deg += degree_string(p.deg);
    }
    return "O_{" + sup + "}(" + deg + ")";
}

}  // namespace exsheaf
