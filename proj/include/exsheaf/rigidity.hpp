#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "exsheaf/config.hpp"
#include "exsheaf/lattice.hpp"

namespace exsheaf {

namespace detail {
inline void check_f_args(std::span<const int> r, int k) {
    require(!r.empty(), Errc::precondition, "empty multiplicity vector");
    require(k >= 1 && k <= static_cast<int>(r.size()), Errc::precondition, "k out of range");
    for (int x : r) require(x >= 1, Errc::precondition, "multiplicities must be positive");
}
}  // namespace detail

/// f(r; k) = sum r_i^2 - sum r_i r_{i+1} - r_k, k 1-based.
inline int f_value(std::span<const int> r, int k) {
    detail::check_f_args(r, k);
    int f = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        f += r[i] * r[i];
        if (i + 1 < r.size()) f -= r[i] * r[i + 1];
    }
    return f - r[k - 1];
}

/// r_1 = r_n = 1, steps of 0 or 1 rising up to k and falling after it.
inline bool equality_conditions(std::span<const int> r, int k) {
    detail::check_f_args(r, k);
    const int n = static_cast<int>(r.size());
    if (r[0] != 1 || r[n - 1] != 1) return false;
    for (int i = 1; i < n; ++i) {  // i is 1-based index of r_i, compare with r_{i+1}
        int step = r[i] - r[i - 1];
        if (i < k && (step < 0 || step > 1)) return false;
        if (i >= k && (-step < 0 || -step > 1)) return false;
    }
    return true;
}

struct CaseTag {
    int number = 0;         // 1..6
    bool reversed = false;  // chain read from C_n down to C_1
    bool operator==(const CaseTag&) const = default;
};

namespace detail {

/// Case membership for a vector already in the chosen orientation.
inline bool matches_case(int which, std::span<const int> r, int k) {
    const int n = static_cast<int>(r.size());
    auto at = [&](int i) { return i <= n ? r[i - 1] : 0; };
    switch (which) {
        case 1: return k == 1 && n == 1 && at(1) == 1;
        case 2: return k >= 2 && at(1) == 1 && at(2) == 1;
        case 3: return k == 2 && at(1) == 1 && at(2) == 2 && at(3) == 1;
        case 4: return k >= 3 && at(1) == 1 && at(2) == 2 && at(3) == 2;
        case 5: return k == 3 && std::ranges::equal(r, std::vector<int>{1, 2, 3, 2, 1});
        case 6: return k == 4 && std::ranges::equal(r, std::vector<int>{1, 2, 3, 3, 2, 1});
        default: return false;
    }
}

}  // namespace detail

/// Every (case, orientation) the vector falls into. Several may apply, e.g. (1,1,2,2,1) at
/// k = 3 is case 2 as written and case 4 reversed.
inline std::vector<CaseTag> matching_cases(std::span<const int> r, int k) {
    require(f_value(r, k) == 0, Errc::precondition, "f(r; k) != 0");
    require(r.size() <= 6, Errc::precondition, "chains longer than 6 are outside the case list");
    std::vector<int> rev(r.rbegin(), r.rend());
    const int krev = static_cast<int>(r.size()) + 1 - k;
    std::vector<CaseTag> out;
    for (int c = 1; c <= 6; ++c) {
        if (detail::matches_case(c, r, k)) out.push_back({c, false});
        if (detail::matches_case(c, rev, krev)) out.push_back({c, true});
    }
    return out;
}

/// The lowest-numbered matching case; ties between orientations go to the unreversed one.
inline CaseTag classify_case(std::span<const int> r, int k) {
    auto all = matching_cases(r, k);
    require(!all.empty(), Errc::precondition, "no case matches");  // cannot happen for n <= 6
    return all.front();
}

/// The nonzero stretch of one chain in a class.
struct ChainBlock {
    int chain = 0;
    int lo = 0, hi = 0;  // 1-based, inclusive
    std::vector<int> r;
    int k = 0;  // attachment position relative to lo (1-based), 0 if D does not meet the block
};

/// Nonzero block of `chain`, or nullopt when the chain is untouched. Errors on gaps.
inline std::optional<ChainBlock> chain_block(const CurveConfig& cfg, const DivisorClass& e, int chain) {
    const auto& row = e.chains.at(chain - 1);
    int lo = 0, hi = 0;
    for (int i = 1; i <= static_cast<int>(row.size()); ++i)
        if (row[i - 1] != 0) {
            if (lo == 0) lo = i;
            hi = i;
        }
    if (lo == 0) return std::nullopt;
    ChainBlock b{chain, lo, hi, {row.begin() + lo - 1, row.begin() + hi}, 0};
    for (int x : b.r) require(x > 0, Errc::precondition, "chain multiplicities must be positive and contiguous");
    if (auto k = cfg.attachment(chain); k && *k >= lo && *k <= hi) b.k = *k - lo + 1;
    return b;
}

namespace detail {

inline std::vector<std::vector<int>> block_vectors(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> r(n, 1);
    // r_i <= min(i, n+1-i) is forced by the equality conditions
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            if (equality_conditions(r, k)) out.push_back(r);
            return;
        }
        for (int v = 1; v <= std::min(i + 1, n - i); ++v) {
            r[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace detail

/// All classes D + sum r^j with f = 0 on every attached chain's block, in lexicographic order.
inline std::vector<DivisorClass> enumerate_exceptional_classes(const CurveConfig& cfg) {
    require(cfg.mode() == Mode::strict, Errc::precondition, "enumeration needs a strict configuration");
    std::vector<std::vector<std::vector<int>>> options(cfg.chain_count());
    for (int j = 1; j <= cfg.chain_count(); ++j) {
        const int n = cfg.chain_length(j);
        auto& opt = options[j - 1];
        opt.emplace_back(n, 0);
        auto k = cfg.attachment(j);
        if (!k) continue;
        for (int lo = 1; lo <= *k; ++lo)
            for (int hi = *k; hi <= n; ++hi)
                for (const auto& block : detail::block_vectors(hi - lo + 1, *k - lo + 1)) {
                    std::vector<int> row(n, 0);
                    std::copy(block.begin(), block.end(), row.begin() + lo - 1);
                    opt.push_back(row);
                }
    }
    std::vector<DivisorClass> out;
    DivisorClass cur = zero_class(cfg);
    cur.d = 1;
    auto rec = [&](auto&& self, int j) -> void {
        if (j == cfg.chain_count()) {
            out.push_back(cur);
            return;
        }
        for (const auto& row : options[j]) {
            cur.chains[j] = row;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace exsheaf
