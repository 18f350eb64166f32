#pragma once

#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace exsheaf {

using Rational = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<Rational>>;

/// Rank by Gaussian elimination over Q. Destroys its argument.
inline int rank(Matrix m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return static_cast<int>(r);
}

/// Dimension of the solution space of m x = 0 with `unknowns` columns.
inline int nullity(Matrix m, int unknowns) { return unknowns - rank(std::move(m)); }

}  // namespace exsheaf
