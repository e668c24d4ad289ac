#pragma once

// Test-only oracle: determinants by recursive cofactor expansion.

#include <vector>

#include "dal/rational.hpp"

namespace test_oracle {

inline dal::Int cofactor_det(const std::vector<std::vector<dal::Int>>& m) {
    using dal::Int;
    const size_t n = m.size();
    if (n == 0) return Int(1);
    if (n == 1) return m[0][0];
    Int acc(0);
    int sign = 1;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Int>> sub;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Int> row;
            for (size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            sub.push_back(std::move(row));
        }
        acc += sign * m[0][c] * cofactor_det(sub);
        sign = -sign;
    }
    return acc;
}

inline std::vector<std::vector<dal::Int>> hankel_matrix(const std::vector<dal::Int>& p, int m,
                                                        int k) {
    std::vector<std::vector<dal::Int>> mat(static_cast<size_t>(m),
                                           std::vector<dal::Int>(static_cast<size_t>(m)));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
            mat[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                p[static_cast<size_t>(k - m + 1 + r + c)];
    return mat;
}

}  // namespace test_oracle
