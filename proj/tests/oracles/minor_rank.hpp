#ifndef QHOM_ORACLE_MINOR_RANK_HPP
#define QHOM_ORACLE_MINOR_RANK_HPP

// Rank as the size of the largest nonvanishing minor. Exponential, so only
// for small matrices; independent of any elimination code.

#include <gmpxx.h>

#include <vector>

namespace oracle {

using Grid = std::vector<std::vector<mpq_class>>;

/// Determinant by cofactor expansion along the first row.
inline mpq_class determinant(const Grid &m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    mpq_class det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        Grid minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpq_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        mpq_class term = m[0][j] * determinant(minor);
        det += j % 2 ? -term : term;
    }
    return det;
}

namespace detail_minor {

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t> &cur,
                    std::vector<std::vector<std::size_t>> &out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail_minor

inline std::size_t minor_rank(const Grid &m) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t k = std::min(rows, cols); k > 0; --k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        detail_minor::subsets(rows, k, 0, cur, rs);
        detail_minor::subsets(cols, k, 0, cur, cs);
        for (const auto &r : rs)
            for (const auto &c : cs) {
                Grid sub(k, std::vector<mpq_class>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
                if (determinant(sub) != 0) return k;
            }
    }
    return 0;
}

}  // namespace oracle

#endif  // QHOM_ORACLE_MINOR_RANK_HPP
