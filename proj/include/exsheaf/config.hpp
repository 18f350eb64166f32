#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exsheaf/error.hpp"

namespace exsheaf {

/// A curve in the configuration: the (-1)-curve D, or component `pos` of chain `chain`.
/// Chains and positions are 1-based so that C^j_i reads the same as in the literature.
struct Component {
    int chain = 0;  // 0 marks D
    int pos = 0;

    static constexpr Component minus_one() { return {0, 0}; }
    static constexpr Component curve(int chain, int pos) { return {chain, pos}; }

    constexpr bool is_minus_one() const { return chain == 0; }
    auto operator<=>(const Component&) const = default;
};

using Support = std::vector<Component>;  // sorted, no duplicates

enum class Mode { strict, relaxed };

struct ChainSpec {
    int length = 0;
    std::vector<int> attach;  // 1-based positions where D meets this chain
};

struct ConfigSpec {
    Mode mode = Mode::strict;
    std::vector<ChainSpec> chains;
    std::optional<int> surface_degree;
};

struct Edge {
    Component a, b;  // a < b
};

/// Chains of (-2)-curves together with one (-1)-curve D. Immutable once built.
class CurveConfig {
public:
    const ConfigSpec& spec() const { return spec_; }
    Mode mode() const { return spec_.mode; }
    std::optional<int> surface_degree() const { return spec_.surface_degree; }

    int chain_count() const { return static_cast<int>(spec_.chains.size()); }
    int chain_length(int chain) const { return spec_.chains.at(chain - 1).length; }
    int minus_two_count() const {
        int n = 0;
        for (const auto& c : spec_.chains) n += c.length;
        return n;
    }

    /// D first, then (chain, position) lexicographically.
    const std::vector<Component>& components() const { return components_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool contains(Component c) const {
        if (c.is_minus_one()) return c.pos == 0;
        return c.chain >= 1 && c.chain <= chain_count() && c.pos >= 1 && c.pos <= chain_length(c.chain);
    }

    int index_of(Component c) const {
        require(contains(c), Errc::invalid_input, "unknown component");
        auto it = std::lower_bound(components_.begin(), components_.end(), c);
        return static_cast<int>(it - components_.begin());
    }

    /// Positions (1-based) at which D meets the given chain, ascending.
    const std::vector<int>& attachments(int chain) const { return spec_.chains.at(chain - 1).attach; }

    /// The attachment position when the chain has exactly one, else nullopt.
    std::optional<int> attachment(int chain) const {
        const auto& a = attachments(chain);
        if (a.size() == 1) return a.front();
        return std::nullopt;
    }

    std::vector<Component> neighbors(Component c) const {
        std::vector<Component> out;
        for (const auto& e : edges_) {
            if (e.a == c) out.push_back(e.b);
            if (e.b == c) out.push_back(e.a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    int intersection(Component a, Component b) const {
        return matrix_[index_of(a)][index_of(b)];
    }

    /// K.c: zero on (-2)-curves, -1 on D.
    int canonical(Component c) const {
        require(contains(c), Errc::invalid_input, "unknown component");
        return c.is_minus_one() ? -1 : 0;
    }

    const std::vector<std::vector<int>>& matrix() const { return matrix_; }

private:
    friend CurveConfig build_config(ConfigSpec spec);

    ConfigSpec spec_;
    std::vector<Component> components_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> matrix_;
};

inline CurveConfig build_config(ConfigSpec spec) {
    CurveConfig cfg;
    for (std::size_t j = 0; j < spec.chains.size(); ++j) {
        auto& ch = spec.chains[j];
        require(ch.length >= 1, Errc::invalid_input, "chain " + std::to_string(j + 1) + " has length < 1");
        std::sort(ch.attach.begin(), ch.attach.end());
        for (std::size_t i = 0; i < ch.attach.size(); ++i) {
            int k = ch.attach[i];
            require(k >= 1 && k <= ch.length, Errc::invalid_input,
                    "attachment index " + std::to_string(k) + " out of range on chain " + std::to_string(j + 1));
            require(i == 0 || ch.attach[i - 1] != k, Errc::invalid_input,
                    "duplicate attachment to C" + std::to_string(j + 1) + "." + std::to_string(k));
        }
    }
    cfg.spec_ = std::move(spec);

    cfg.components_.push_back(Component::minus_one());
    for (int j = 1; j <= cfg.chain_count(); ++j)
        for (int i = 1; i <= cfg.chain_length(j); ++i) cfg.components_.push_back(Component::curve(j, i));

    for (int j = 1; j <= cfg.chain_count(); ++j) {
        for (int i = 1; i < cfg.chain_length(j); ++i)
            cfg.edges_.push_back({Component::curve(j, i), Component::curve(j, i + 1)});
        for (int k : cfg.attachments(j)) cfg.edges_.push_back({Component::minus_one(), Component::curve(j, k)});
    }

    const auto n = cfg.components_.size();
    cfg.matrix_.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) cfg.matrix_[i][i] = cfg.components_[i].is_minus_one() ? -1 : -2;
    for (const auto& e : cfg.edges_) {
        auto a = static_cast<std::size_t>(cfg.index_of(e.a));
        auto b = static_cast<std::size_t>(cfg.index_of(e.b));
        cfg.matrix_[a][b] += 1;
        cfg.matrix_[b][a] += 1;
    }
    return cfg;
}

/// Shorthand: D plus one chain per entry of `lengths`, chain j attached at `attach[j]` (0 = unattached).
inline CurveConfig make_chains(const std::vector<int>& lengths, const std::vector<int>& attach,
                               Mode mode = Mode::strict) {
    ConfigSpec spec;
    spec.mode = mode;
    for (std::size_t j = 0; j < lengths.size(); ++j) {
        ChainSpec c{lengths[j], {}};
        if (j < attach.size() && attach[j] > 0) c.attach.push_back(attach[j]);
        spec.chains.push_back(c);
    }
    return build_config(std::move(spec));
}

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    bool violates(std::string_view rule) const {
        return std::find(violations.begin(), violations.end(), rule) != violations.end();
    }
};

namespace rule {
inline constexpr std::string_view chain_nonempty = "chain length >= 1";
inline constexpr std::string_view total_count = "total (-2)-curves <= 9-d";
inline constexpr std::string_view chain_length = "chain length <= 6";
inline constexpr std::string_view one_attachment = "attachment <= 1 per chain";
inline constexpr std::string_view tree = "component graph is a forest";
inline constexpr std::string_view degree = "surface degree > 2";
}  // namespace rule

namespace detail {

inline bool is_forest(const CurveConfig& cfg) {
    // union-find over component indices
    std::vector<int> parent(cfg.components().size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : cfg.edges()) {
        int a = find(cfg.index_of(e.a));
        int b = find(cfg.index_of(e.b));
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

}  // namespace detail

/// Count and shape rules. Strict configs must fit a weak del Pezzo surface of degree > 2
/// of type A; relaxed configs only need well-formed chains.
inline ValidationReport validate(const CurveConfig& cfg) {
    ValidationReport rep;
    auto add = [&](std::string_view r) {
        if (!rep.violates(r)) rep.violations.emplace_back(r);
    };
    for (int j = 1; j <= cfg.chain_count(); ++j)
        if (cfg.chain_length(j) < 1) add(rule::chain_nonempty);
    if (cfg.mode() == Mode::relaxed) return rep;

    int bound = 6;
    if (auto d = cfg.surface_degree()) {
        if (*d <= 2) add(rule::degree);
        bound = std::min(bound, 9 - *d);
    }
    if (cfg.minus_two_count() > bound) add(rule::total_count);
    for (int j = 1; j <= cfg.chain_count(); ++j) {
        if (cfg.chain_length(j) > 6) add(rule::chain_length);
        if (cfg.attachments(j).size() > 1) add(rule::one_attachment);
    }
    if (!detail::is_forest(cfg)) add(rule::tree);
    return rep;
}

inline int intersection(const CurveConfig& cfg, Component a, Component b) { return cfg.intersection(a, b); }

/// "D", "C<i>" on single-chain configs, "C<j>.<i>" otherwise.
inline std::string component_name(const CurveConfig& cfg, Component c) {
    if (c.is_minus_one()) return "D";
    if (cfg.chain_count() <= 1) return "C" + std::to_string(c.pos);
    return "C" + std::to_string(c.chain) + "." + std::to_string(c.pos);
}

/// Accepts "D", "C<i>" (chain 1) and "C<j>.<i>".
inline Component parse_component(const CurveConfig& cfg, std::string_view s) {
    auto bad = [&] { fail(Errc::invalid_input, "bad component name '" + std::string(s) + "'"); };
    if (s == "D") return Component::minus_one();
    if (s.size() < 2 || s[0] != 'C') bad();
    auto body = s.substr(1);
    auto to_int = [&](std::string_view t) {
        if (t.empty() || t.size() > 6) bad();
        int v = 0;
        for (char ch : t) {
            if (ch < '0' || ch > '9') bad();
            v = v * 10 + (ch - '0');
        }
        return v;
    };
    Component c;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        c = Component::curve(to_int(body.substr(0, dot)), to_int(body.substr(dot + 1)));
    } else {
        c = Component::curve(1, to_int(body));
    }
    require(cfg.contains(c), Errc::invalid_input, "component '" + std::string(s) + "' not in configuration");
    return c;
}

}  // namespace exsheaf
