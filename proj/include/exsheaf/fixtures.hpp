#pragma once

#include <string>
#include <vector>

#include "exsheaf/cohom.hpp"
#include "exsheaf/config.hpp"
#include "exsheaf/reducer.hpp"

namespace exsheaf::fixtures {

/// A_3 chain with D meeting the middle curve.
inline CurveConfig example2_config() { return make_chains({3}, {2}); }

/// A_3 chain with D meeting both ends, closing a loop.
inline CurveConfig loop_config() { return build_config({Mode::relaxed, {{3, {1, 3}}}, std::nullopt}); }

/// D + C1 + 2C2 + C3.
inline DivisorClass thick_class(const CurveConfig& cfg) {
    DivisorClass e = zero_class(cfg);
    e.d = 1;
    e.chains[0] = {1, 2, 1};
    return e;
}

inline AtomicSheaf line(const std::vector<int>& positions, const std::vector<int>& degs, bool with_d = false, int d = 0) {
    Support s;
    std::vector<int> all;
    if (with_d) {
        s.push_back(Component::minus_one());
        all.push_back(d);
    }
    for (int p : positions) s.push_back(Component::curve(1, p));
    all.insert(all.end(), degs.begin(), degs.end());
    return AtomicSheaf::line_bundle(s, all);
}

/// T_{O_{C2}} o T_{O_{C1 u C2 u C3}(-1,2,-1)}(O_D(-2)).
inline TwistCertificate example2_certificate() {
    TwistCertificate c;
    c.seed_degree = -2;
    c.twists.push_back({line({2}, {0}).support(), line({2}, {0})});
    c.twists.push_back({line({1, 2, 3}, {-1, 2, -1}).support(), line({1, 2, 3}, {-1, 2, -1})});
    return c;
}

/// T_{O_{C2 u C3}} o T_{O_{C1 u C2}}(O_D(-1)).
inline TwistCertificate example3_certificate() {
    TwistCertificate c;
    c.seed_degree = -1;
    c.twists.push_back({line({2, 3}, {0, 0}).support(), line({2, 3}, {0, 0})});
    c.twists.push_back({line({1, 2}, {0, 0}).support(), line({1, 2}, {0, 0})});
    return c;
}

struct FixtureResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Replays the three worked examples: reduced sheaves on A_1 configurations, the
/// non-reduced structure sheaf on A_3, and the loop.
inline std::vector<FixtureResult> replay() {
    std::vector<FixtureResult> out;

    {
        // three A_1 chains meeting D: each class D + sum C_i peels one curve at a time
        auto cfg = make_chains({1, 1, 1}, {1, 1, 1});
        auto classes = enumerate_exceptional_classes(cfg);
        bool ok = classes.size() == 8;
        for (const auto& e : classes) {
            auto certs = reduce_class(cfg, e, Strategy::all).certificates();
            for (const auto& c : certs) {
                ok = ok && verify_certificate(cfg, e, c).ok();
                for (const auto& t : c.twists) ok = ok && t.support.size() == 1;
            }
            ok = ok && !certs.empty();
        }
        out.push_back({"example 1: A_1 chains", ok, std::to_string(classes.size()) + " classes, single-curve peels"});
    }
    {
        auto cfg = example2_config();
        auto e = thick_class(cfg);
        auto tree = reduce_class(cfg, e, Strategy::all);
        const Support c2{Component::curve(1, 2)};
        const Support c123{Component::curve(1, 1), Component::curve(1, 2), Component::curve(1, 3)};
        bool branch = tree.contains({c2, c123});
        auto rep = verify_certificate(cfg, e, example2_certificate());
        auto expect = AtomicSheaf::make({{Component::minus_one(), 1, 0},
                                         {Component::curve(1, 1), 1, 0},
                                         {Component::curve(1, 2), 2, 0},
                                         {Component::curve(1, 3), 1, 0}});
        bool rebuilt = rep.sheaf && *rep.sheaf == expect;
        bool ok = branch && rep.ok() && rep.count(CheckStatus::unchecked) == 0 && rebuilt;
        out.push_back({"example 2: O_{D+C1+2C2+C3}", ok,
                       std::string(branch ? "branch found" : "branch missing") + ", certificate " +
                           (rep.ok() ? "verifies" : "fails") + ", sheaf " + (rebuilt ? "rebuilt" : "not rebuilt")});
    }
    {
        auto cfg = loop_config();
        auto e = thick_class(cfg);
        auto strict = cfg.spec();
        strict.mode = Mode::strict;
        bool rejected = validate(build_config(strict)).violates(rule::one_attachment);
        auto rep = verify_certificate(cfg, e, example3_certificate());
        auto l = line({2, 3}, {0, 0});
        auto ep = line({1, 2}, {0, 0}, true, 0);
        auto d = hom_dims(cfg, l, ep);
        bool quoted = d.chi == -1 && d.h0.is_zero() && d.h1 == Interval::exactly(1) &&
                      hom_dims(cfg, ep, l).h0.is_zero();
        bool ok = rejected && rep.ok() && quoted;
        out.push_back({"example 3: loop", ok,
                       std::string(rejected ? "strict rejects" : "strict accepts") + ", certificate " +
                           (rep.ok() ? "verifies" : "fails") + ", quoted homs " + (quoted ? "match" : "differ")});
    }
    return out;
}

}  // namespace exsheaf::fixtures
