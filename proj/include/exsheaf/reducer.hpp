#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exsheaf/catalog.hpp"
#include "exsheaf/cohom.hpp"
#include "exsheaf/factorization.hpp"
#include "exsheaf/lattice.hpp"
#include "exsheaf/rigidity.hpp"

namespace exsheaf {

/// One spherical twist T_L. `sheaf` carries concrete degrees when known.
struct TwistStep {
    Support support;
    std::optional<AtomicSheaf> sheaf;
};

/// E = T_{L_1} o ... o T_{L_n}(O_D(d)), stored outermost first: twists[0] is L_1 and the
/// last entry is applied to the seed first.
struct TwistCertificate {
    std::optional<int> seed_degree;
    std::vector<TwistStep> twists;
    bool generated = false;  // produced by the reducer rather than supplied
};

// ---------------------------------------------------------------------------
// Peeling
// ---------------------------------------------------------------------------

namespace detail {

inline void check_reducible(const CurveConfig& cfg, const DivisorClass& e) {
    require(cfg.mode() == Mode::strict, Errc::precondition, "the reducer needs a strict configuration");
    check_shape(cfg, e);
    require(e.d == 1, Errc::precondition, "class must have coefficient 1 on D");
    require(is_numerically_exceptional(cfg, e), Errc::precondition, "class is not numerically exceptional");
}

/// Local L-supports (positions in the oriented block) for each case.
inline std::vector<std::vector<int>> case_supports(int which) {
    switch (which) {
        case 1:
        case 2: return {{1}};
        case 3:
        case 4: return l_supports("12");
        case 5: return l_supports("12321");
        default: return l_supports("123321");
    }
}

}  // namespace detail

/// Candidate supports L with e.L = -1. Case-derived options (per chain, both
/// orientations) come first in lexicographic order, followed by whole blocks of
/// multiplicity one, which restrict E to a reduced chain.
inline std::vector<Support> peel_options(const CurveConfig& cfg, const DivisorClass& e) {
    detail::check_reducible(cfg, e);
    require(e != minus_one_class(cfg), Errc::precondition, "nothing to peel from [D]");
    std::vector<Support> from_cases, blocks;
    auto add = [](std::vector<Support>& v, Support s) {
        std::sort(s.begin(), s.end());
        if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
    };
    for (int j = 1; j <= cfg.chain_count(); ++j) {
        auto block = chain_block(cfg, e, j);
        if (!block) continue;
        require(block->k != 0, Errc::precondition, "chain block not attached to D");
        const int n = static_cast<int>(block->r.size());
        require(f_value(block->r, block->k) == 0, Errc::precondition, "f > 0 on chain " + std::to_string(j));
        for (const auto& tag : matching_cases(block->r, block->k))
            for (const auto& local : detail::case_supports(tag.number)) {
                Support s;
                for (int p : local) {
                    require(p <= n, Errc::precondition, "case support exceeds block");
                    s.push_back(Component::curve(j, tag.reversed ? block->hi - p + 1 : block->lo + p - 1));
                }
                add(from_cases, s);
            }
        if (std::all_of(block->r.begin(), block->r.end(), [](int x) { return x == 1; })) {
            Support s;
            for (int i = block->lo; i <= block->hi; ++i) s.push_back(Component::curve(j, i));
            add(blocks, s);
        }
    }
    std::sort(from_cases.begin(), from_cases.end());
    std::sort(blocks.begin(), blocks.end());
    for (auto& s : blocks) add(from_cases, s);
    for (const auto& s : from_cases)
        require(pair(cfg, e, class_of(cfg, s)) == -1, Errc::precondition, "peel option does not pair to -1");
    return from_cases;
}

/// e' = e - [L], with e.L = -1 required and e'^2 = -1 asserted.
inline DivisorClass peel(const CurveConfig& cfg, const DivisorClass& e, const Support& l) {
    check_shape(cfg, e);
    const auto lc = class_of(cfg, l);
    require(pair(cfg, e, lc) == -1, Errc::precondition, "peel needs e.L = -1");
    auto out = e - lc;
    require(pair(cfg, out, out) == -1, Errc::precondition, "peeled class is not numerically exceptional");
    return out;
}

// ---------------------------------------------------------------------------
// Reduction trees
// ---------------------------------------------------------------------------

enum class Strategy { first, all };

/// Node of the reduction DAG; equal classes share one node.
struct ReductionNode {
    DivisorClass e;
    std::vector<std::pair<Support, std::shared_ptr<const ReductionNode>>> children;
};

struct ReductionTree {
    std::shared_ptr<const ReductionNode> root;

    /// Number of root-to-leaf paths.
    std::size_t branch_count() const {
        std::map<const ReductionNode*, std::size_t> memo;
        auto rec = [&](auto&& self, const ReductionNode* n) -> std::size_t {
            if (n->children.empty()) return 1;
            if (auto it = memo.find(n); it != memo.end()) return it->second;
            std::size_t s = 0;
            for (const auto& [l, c] : n->children) s += self(self, c.get());
            return memo[n] = s;
        };
        return rec(rec, root.get());
    }

    /// Every branch as a certificate, at most `limit` of them, in canonical order.
    std::vector<TwistCertificate> certificates(std::size_t limit = SIZE_MAX) const {
        std::vector<TwistCertificate> out;
        TwistCertificate cur;
        cur.generated = true;
        auto rec = [&](auto&& self, const ReductionNode* n) -> void {
            if (out.size() >= limit) return;
            if (n->children.empty()) {
                out.push_back(cur);
                return;
            }
            for (const auto& [l, c] : n->children) {
                cur.twists.push_back({l, std::nullopt});
                self(self, c.get());
                cur.twists.pop_back();
            }
        };
        rec(rec, root.get());
        return out;
    }

    /// Whether the peel sequence (outermost first) is a branch.
    bool contains(const std::vector<Support>& path) const {
        const ReductionNode* n = root.get();
        for (const auto& l : path) {
            auto it = std::find_if(n->children.begin(), n->children.end(), [&](const auto& ch) { return ch.first == l; });
            if (it == n->children.end()) return false;
            n = it->second.get();
        }
        return n->children.empty();
    }
};

/// Peels until [D] remains. `first` follows the first option at every step; `all`
/// explores every option. Each step lowers the total multiplicity, so this terminates.
inline ReductionTree reduce_class(const CurveConfig& cfg, const DivisorClass& e, Strategy strategy = Strategy::first) {
    detail::check_reducible(cfg, e);
    const DivisorClass d = minus_one_class(cfg);
    std::map<DivisorClass, std::shared_ptr<const ReductionNode>> memo;
    auto rec = [&](auto&& self, const DivisorClass& x) -> std::shared_ptr<const ReductionNode> {
        if (auto it = memo.find(x); it != memo.end()) return it->second;
        auto node = std::make_shared<ReductionNode>();
        node->e = x;
        if (x != d) {
            auto options = peel_options(cfg, x);
            if (strategy == Strategy::first) options.resize(1);
            for (auto& l : options) {
                auto next = peel(cfg, x, l);
                require(next.chain_total() < x.chain_total(), Errc::precondition, "peel did not shrink the class");
                node->children.emplace_back(std::move(l), self(self, next));
            }
        }
        return memo[x] = node;
    };
    return {rec(rec, e)};
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

enum class CheckStatus { pass, fail, unchecked, guaranteed };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::unchecked: return "unchecked";
        default: return "guaranteed";
    }
}

struct CertificateCheck {
    int step = 0;  // 1-based index into twists; 0 for whole-certificate checks
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct VerificationReport {
    std::vector<CertificateCheck> checks;
    std::optional<AtomicSheaf> sheaf;  // E rebuilt from sheaf data, when every extension had a rule

    bool ok() const {
        return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
    }
    std::size_t count(CheckStatus s) const {
        return std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.status == s; });
    }
};

/// Checks a certificate against e, innermost twist first. Never throws on a bad
/// certificate; every problem becomes a failed check. Sheaf-level checks run when the
/// seed degree and every twist sheaf are given.
inline VerificationReport verify_certificate(const CurveConfig& cfg, const DivisorClass& e,
                                             const TwistCertificate& cert) {
    VerificationReport rep;
    auto add = [&](int step, std::string name, CheckStatus st, std::string detail = {}) {
        rep.checks.push_back({step, std::move(name), st, std::move(detail)});
    };
    auto status = [](bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; };

    if (!fits(cfg, e)) {
        add(0, "class shape", CheckStatus::fail, "class does not match the configuration");
        return rep;
    }
    const bool sheaf_level = cert.seed_degree &&
                             std::all_of(cert.twists.begin(), cert.twists.end(), [](const auto& t) { return t.sheaf.has_value(); });

    DivisorClass cur = minus_one_class(cfg);
    std::optional<AtomicSheaf> sheaf;
    if (sheaf_level) sheaf = AtomicSheaf::line_bundle({Component::minus_one()}, {*cert.seed_degree});
    bool sheaf_chain_open = sheaf_level;

    const int n = static_cast<int>(cert.twists.size());
    for (int i = n; i >= 1; --i) {
        const auto& t = cert.twists[i - 1];
        Support sup = t.support;
        std::sort(sup.begin(), sup.end());
        bool known = std::all_of(sup.begin(), sup.end(), [&](Component c) { return cfg.contains(c); }) &&
                     !sup.empty() && std::adjacent_find(sup.begin(), sup.end()) == sup.end();
        if (!known) {
            add(i, "support", CheckStatus::fail, "empty, repeated or unknown components");
            sheaf_chain_open = false;
            continue;
        }
        if (t.sheaf) {
            bool same = t.sheaf->support() == sup && t.sheaf->reduced();
            add(i, "sheaf support", status(same), same ? "" : "sheaf does not match the support");
        }
        const auto lc = class_of(cfg, sup);
        const bool spherical = is_numerically_spherical(cfg, lc);
        add(i, "spherical", status(spherical), spherical ? "" : "L^2 != -2 or support not a reduced chain");
        const int x = chi(cfg, lc, cur);
        add(i, "pairing", status(x == -1), "chi(L, E') = " + std::to_string(x));
        DivisorClass next = cur + lc;
        if (spherical) {
            const bool additive = twist_class(cfg, cur, lc) == next;
            add(i, "class additivity", status(additive), additive ? "" : "T_L(E') != E' + L at class level");
        } else {
            add(i, "class additivity", CheckStatus::unchecked, "no twist along a non-spherical class");
        }
        const bool exc = next.d == 1 && is_numerically_exceptional(cfg, next);
        add(i, "exceptional", status(exc), "E^2 = " + std::to_string(pair(cfg, next, next)));

        if (sheaf_level && sheaf_chain_open && sheaf && t.sheaf) {
            const auto& l = *t.sheaf;
            try {
                auto lp = hom_dims(cfg, *sheaf, l);  // (E', L)
                auto pl = hom_dims(cfg, l, *sheaf);  // (L, E')
                add(i, "h0(E',L) = 0", status(lp.h0.is_zero()), "h0 = " + to_string(lp.h0));
                add(i, "h0(L,E') = 0", status(pl.h0.is_zero()), "h0 = " + to_string(pl.h0));
                add(i, "chi(L,E') = -1", status(pl.chi == -1), "chi = " + std::to_string(pl.chi));
                add(i, "h1(L,E') = 1", status(pl.h1 == Interval::exactly(1)), "h1 = " + to_string(pl.h1));
            } catch (const Error& err) {
                add(i, "sheaf homs", CheckStatus::fail, err.what());
                sheaf_chain_open = false;
            }
            if (sheaf_chain_open) {
                try {
                    sheaf = extension_atom(cfg, *sheaf, l);
                } catch (const Error& err) {
                    sheaf.reset();
                    sheaf_chain_open = false;
                    if (i > 1) add(i, "extension", CheckStatus::unchecked, err.what());
                }
            }
        } else if (sheaf_level) {
            add(i, "sheaf homs", CheckStatus::unchecked, "previous extension has no rule");
        } else {
            add(i, "h0(E',L) = 0", cert.generated ? CheckStatus::guaranteed : CheckStatus::unchecked,
                cert.generated ? "by construction of the peel" : "no sheaf data");
        }
        cur = next;
    }
    add(0, "telescoping", status(cur == e), "[D] + sum L_i vs E");
    if (sheaf_chain_open && sheaf) rep.sheaf = sheaf;
    return rep;
}

/// Attaches concrete sheaves and a seed degree to a class-level certificate.
inline TwistCertificate with_sheaves(TwistCertificate cert, int seed, const std::vector<AtomicSheaf>& sheaves) {
    require(sheaves.size() == cert.twists.size(), Errc::invalid_input, "need one sheaf per twist");
    cert.seed_degree = seed;
    for (std::size_t i = 0; i < sheaves.size(); ++i) cert.twists[i].sheaf = sheaves[i];
    return cert;
}

}  // namespace exsheaf
