#ifndef QHOM_ORACLE_MONOMIAL_HOCHSCHILD_HPP
#define QHOM_ORACLE_MONOMIAL_HOCHSCHILD_HPP

// Hochschild homology of a monomial path algebra from the normalized
// Hochschild complex relative to the vertex idempotents:
//   C_n = A (x)_E rad^{(x)_E n}, cyclically tensored over E (x) E^op.
// Self-contained: own path arithmetic, own exact sparse elimination.
// Shares nothing with the library under test.

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

class MonomialAlgebra {
public:
    struct Path {
        int source, target;
        std::vector<int> arrows;  // in traversal order
    };

    /// zero_relations: arrow sequences in traversal order, e.g. {beta, alpha} for "alpha*beta".
    MonomialAlgebra(int vertices, std::vector<std::pair<int, int>> arrows, std::vector<std::vector<int>> zero_relations)
        : arrows_(std::move(arrows)), relations_(std::move(zero_relations)) {
        for (int v = 0; v < vertices; ++v) add({v, v, {}});
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_.size() > 5000) throw std::runtime_error("oracle: algebra too large or not finite-dimensional");
            for (int a = 0; a < static_cast<int>(arrows_.size()); ++a) {
                Path p = basis_[i];
                if (arrows_[a].first != p.target) continue;
                p.arrows.push_back(a);
                p.target = arrows_[a].second;
                if (!killed(p.arrows)) add(p);
            }
        }
    }

    std::size_t dim() const { return basis_.size(); }
    const Path &path(int i) const { return basis_[i]; }
    bool in_radical(int i) const { return !basis_[i].arrows.empty(); }
    int length(int i) const { return static_cast<int>(basis_[i].arrows.size()); }

    /// Index of x*y (y traversed first), or -1 when zero.
    int multiply(int x, int y) const {
        const Path &px = basis_[x], &py = basis_[y];
        if (py.target != px.source) return -1;
        std::vector<int> w = py.arrows;
        w.insert(w.end(), px.arrows.begin(), px.arrows.end());
        auto it = index_.find({py.source, w});
        return it == index_.end() ? -1 : it->second;
    }

private:
    bool killed(const std::vector<int> &w) const {
        for (const auto &r : relations_)
            for (std::size_t s = 0; s + r.size() <= w.size(); ++s)
                if (std::equal(r.begin(), r.end(), w.begin() + static_cast<long>(s))) return true;
        return false;
    }
    void add(Path p) {
        index_[{p.source, p.arrows}] = static_cast<int>(basis_.size());
        basis_.push_back(std::move(p));
    }

    std::vector<std::pair<int, int>> arrows_;
    std::vector<std::vector<int>> relations_;
    std::vector<Path> basis_;
    std::map<std::pair<int, std::vector<int>>, int> index_;
};

/// Exact rank of a sparse rational matrix given by rows.
inline std::size_t sparse_rank(std::vector<std::map<int, mpq_class>> rows) {
    std::map<int, std::map<int, mpq_class>> pivots;  // leading column -> normalized row
    std::size_t r = 0;
    for (auto &row : rows) {
        while (!row.empty()) {
            auto lead = row.begin();
            auto p = pivots.find(lead->first);
            if (p == pivots.end()) {
                mpq_class inv = 1 / lead->second;
                for (auto &[c, v] : row) v *= inv;
                pivots.emplace(lead->first, std::move(row));
                ++r;
                break;
            }
            mpq_class f = lead->second;
            for (const auto &[c, v] : p->second) {
                mpq_class &x = row[c];
                x -= f * v;
                if (x == 0) row.erase(c);
            }
        }
    }
    return r;
}

/// dim HH_n(A) for n = 0..n_max.
inline std::vector<std::size_t> hochschild_dims(const MonomialAlgebra &a, int n_max) {
    // chains[n][length] = list of tuples (a0, r1, ..., rn)
    using Chain = std::vector<int>;
    std::vector<std::map<int, std::vector<Chain>>> chains(n_max + 2);
    std::vector<std::map<int, std::map<Chain, int>>> index(n_max + 2);
    const int d = static_cast<int>(a.dim());
    for (int n = 0; n <= n_max + 1; ++n) {
        Chain c(n + 1);
        // extend r_k with t(r_k) = s(r_{k-1}), closing with s(r_n) = t(a0)
        auto rec = [&](auto &&self, int k, int len) -> void {
            if (k == n + 1) {
                int last_source = n == 0 ? a.path(c[0]).source : a.path(c[n]).source;
                if (last_source != a.path(c[0]).target) return;
                index[n][len].emplace(c, static_cast<int>(chains[n][len].size()));
                chains[n][len].push_back(c);
                return;
            }
            for (int x = 0; x < d; ++x) {
                if (k > 0 && !a.in_radical(x)) continue;
                if (k > 0 && a.path(x).target != a.path(c[k - 1]).source) continue;
                c[k] = x;
                self(self, k + 1, len + a.length(x));
            }
        };
        rec(rec, 0, 0);
    }
    // rank of the differential C_n -> C_{n-1}, per total length
    auto boundary_rank = [&](int n) -> std::size_t {
        if (n <= 0) return 0;
        std::size_t total = 0;
        for (const auto &[len, list] : chains[n]) {
            auto tgt = index[n - 1].find(len);
            std::vector<std::map<int, mpq_class>> rows;
            for (const auto &c : list) {
                std::map<int, mpq_class> row;
                auto emit = [&](const Chain &f, int sign) {
                    if (tgt == index[n - 1].end()) throw std::logic_error("oracle: face outside the complex");
                    int col = tgt->second.at(f);
                    mpq_class &x = row[col];
                    x += sign;
                    if (x == 0) row.erase(col);
                };
                for (int i = 0; i < n; ++i) {
                    int prod = a.multiply(c[i], c[i + 1]);
                    if (prod < 0) continue;
                    Chain f;
                    for (int k = 0; k < i; ++k) f.push_back(c[k]);
                    f.push_back(prod);
                    for (int k = i + 2; k <= n; ++k) f.push_back(c[k]);
                    emit(f, i % 2 ? -1 : 1);
                }
                int prod = a.multiply(c[n], c[0]);
                if (prod >= 0) {
                    Chain f{prod};
                    for (int k = 1; k < n; ++k) f.push_back(c[k]);
                    emit(f, n % 2 ? -1 : 1);
                }
                rows.push_back(std::move(row));
            }
            total += sparse_rank(std::move(rows));
        }
        return total;
    };
    std::vector<std::size_t> ranks(n_max + 2);
    for (int n = 1; n <= n_max + 1; ++n) ranks[n] = boundary_rank(n);
    std::vector<std::size_t> out;
    for (int n = 0; n <= n_max; ++n) {
        std::size_t size = 0;
        for (const auto &[len, list] : chains[n]) size += list.size();
        out.push_back(size - ranks[n] - ranks[n + 1]);
    }
    return out;
}

}  // namespace oracle

#endif  // QHOM_ORACLE_MONOMIAL_HOCHSCHILD_HPP
