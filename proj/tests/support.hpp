#pragma once

#include <initializer_list>
#include <vector>

#include <catch_amalgamated.hpp>

#include "exsheaf/exsheaf.hpp"

namespace t {

using namespace exsheaf;

inline Component C(int i) { return Component::curve(1, i); }
inline Component C(int j, int i) { return Component::curve(j, i); }
inline const Component D = Component::minus_one();

/// Reduced line bundle on chain-1 curves, optionally with D first.
inline AtomicSheaf O(std::vector<int> pos, std::vector<int> degs) {
    Support s;
    for (int p : pos) s.push_back(C(p));
    return AtomicSheaf::line_bundle(s, degs);
}

inline AtomicSheaf OD(int d, std::vector<int> pos, std::vector<int> degs) {
    Support s{D};
    std::vector<int> all{d};
    for (int p : pos) s.push_back(C(p));
    all.insert(all.end(), degs.begin(), degs.end());
    return AtomicSheaf::line_bundle(s, all);
}

/// d*D + chain-1 multiplicities.
inline DivisorClass cls(const CurveConfig& cfg, int d, std::vector<int> r) {
    auto c = zero_class(cfg);
    c.d = d;
    for (std::size_t i = 0; i < r.size(); ++i) c.chains[0][i] = r[i];
    return c;
}

inline Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exsheaf::Error");
    return Errc::invalid_input;
}

}  // namespace t
