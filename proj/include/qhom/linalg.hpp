#ifndef QHOM_LINALG_HPP
#define QHOM_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace qhom {

template <class S>
struct RrefResult {
    Matrix<S> reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

namespace detail {

/// Multiply each row by the lcm of its denominators so every entry is integral.
inline void clear_denominators(Matrix<Rational> &m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        bool all_int = true;
        for (const auto &x : row)
            if (!x.is_integer()) {
                all_int = false;
                break;
            }
        if (all_int) continue;
        mpz_class l(1);
        for (const auto &x : row)
            if (!x.is_integer()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
        Rational scale{mpq_class(l)};
        for (auto &x : row)
            if (!x.is_zero()) x *= scale;
    }
}

/**
 * Bareiss fraction-free forward elimination on an integral matrix. Every
 * intermediate entry is a minor of the input, so coefficient growth stays
 * polynomial. Rows whose update factor is 1 and whose pivot-column entry is
 * zero are skipped.
 */
inline std::vector<std::size_t> bareiss_forward(Matrix<Rational> &m) {
    std::vector<std::size_t> pivots;
    Rational prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const Rational piv = m(r, c);
        const bool unit_step = piv == prev;
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Rational a = m(i, c);
            if (a.is_zero() && unit_step) continue;
            for (std::size_t j = c + 1; j < m.cols(); ++j) {
                const Rational &x = m(i, j);
                const Rational &y = m(r, j);
                if (x.is_zero() && (a.is_zero() || y.is_zero())) continue;
                Rational v = piv * x - a * y;
                if (!prev.is_one()) v /= prev;
                m(i, j) = std::move(v);
            }
            m(i, c) = Rational(0);
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class S>
void back_substitute(Matrix<S> &m, const std::vector<std::size_t> &pivots) {
    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t c = pivots[k];
        const S inv = S(1) / m(k, c);
        if (!(inv == S(1)))
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(k, j))) m(k, j) *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            const S f = m(i, c);
            if (is_zero(f)) continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(k, j))) m(i, j) -= f * m(k, j);
        }
    }
}

template <class S>
std::vector<std::size_t> gauss_forward(Matrix<S> &m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const S inv = S(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!is_zero(m(r, j))) m(r, j) *= inv;
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const S f = m(i, c);
            if (is_zero(f)) continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Reduced row echelon form. Over Q the forward pass is fraction-free.
template <class S>
RrefResult<S> rref(const Matrix<S> &m) {
    RrefResult<S> res;
    res.reduced = m;
    if constexpr (ScalarTraits<S>::fraction_free) {
        detail::clear_denominators(res.reduced);
        res.pivots = detail::bareiss_forward(res.reduced);
    } else {
        res.pivots = detail::gauss_forward(res.reduced);
    }
    detail::back_substitute(res.reduced, res.pivots);
    res.rank = res.pivots.size();
    return res;
}

template <class S>
std::size_t rank(const Matrix<S> &m) {
    if (m.empty()) return 0;
    Matrix<S> w = m;
    if constexpr (ScalarTraits<S>::fraction_free) {
        detail::clear_denominators(w);
        return detail::bareiss_forward(w).size();
    } else {
        return detail::gauss_forward(w).size();
    }
}

/// Columns span the null space of m.
template <class S>
Matrix<S> kernel_basis(const Matrix<S> &m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return Matrix<S>::identity(n);
    auto r = rref(m);
    std::vector<char> is_pivot(n, 0);
    for (auto c : r.pivots) is_pivot[c] = 1;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix<S> k(n, free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        k(free[f], f) = S(1);
        for (std::size_t row = 0; row < r.pivots.size(); ++row) {
            const S &x = r.reduced(row, free[f]);
            if (!is_zero(x)) k(r.pivots[row], f) = -x;
        }
    }
    return k;
}

/// Some x with a * x = b, or nothing when the system is inconsistent.
template <class S>
std::optional<Matrix<S>> solve_linear(const Matrix<S> &a, const Matrix<S> &b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: row counts differ");
    const std::size_t n = a.cols();
    if (a.rows() == 0) return Matrix<S>(n, b.cols());
    auto r = rref(hstack(a, b));
    Matrix<S> x(n, b.cols());
    for (std::size_t row = 0; row < r.pivots.size(); ++row) {
        if (r.pivots[row] >= n) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[row], j) = r.reduced(row, n + j);
    }
    return x;
}

template <class S>
struct QuotientSpace {
    Matrix<S> projection;  ///< (ambient - rank) x ambient
    Matrix<S> section;     ///< ambient x (ambient - rank)
    std::vector<std::size_t> complement;  ///< ambient coordinates used as the quotient basis
};

/**
 * Quotient of k^ambient by the column span of `subspace`. The quotient basis
 * is the set of standard basis vectors at non-pivot coordinates, so the
 * section is a coordinate inclusion.
 */
template <class S>
QuotientSpace<S> quotient_space(std::size_t ambient_dim, const Matrix<S> &subspace) {
    if (subspace.cols() > 0 && subspace.rows() != ambient_dim)
        throw std::invalid_argument("quotient_space: subspace does not live in the ambient space");
    QuotientSpace<S> q;
    std::vector<char> is_pivot(ambient_dim, 0);
    RrefResult<S> r;
    if (subspace.cols() > 0) {
        r = rref(subspace.transpose());
        for (auto c : r.pivots) is_pivot[c] = 1;
    }
    for (std::size_t c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c]) q.complement.push_back(c);
    const std::size_t qd = q.complement.size();
    q.projection = Matrix<S>(qd, ambient_dim);
    q.section = Matrix<S>(ambient_dim, qd);
    for (std::size_t k = 0; k < qd; ++k) {
        q.projection(k, q.complement[k]) = S(1);
        q.section(q.complement[k], k) = S(1);
        for (std::size_t row = 0; row < r.pivots.size(); ++row) {
            const S &x = r.reduced(row, q.complement[k]);
            if (!is_zero(x)) q.projection(k, r.pivots[row]) = -x;
        }
    }
    return q;
}

/// Indices of a maximal independent set of columns (greedy, left to right).
template <class S>
std::vector<std::size_t> independent_columns(const Matrix<S> &m) {
    if (m.empty()) return {};
    return rref(m).pivots;
}

/**
 * Subspace of k^N with a fixed basis and a left inverse that reads off
 * coordinates of vectors lying in it.
 */
template <class S>
class Subspace {
public:
    Subspace() = default;
    /// `basis` must have independent columns.
    explicit Subspace(Matrix<S> basis) : basis_(std::move(basis)) {
        const std::size_t d = basis_.cols();
        left_inverse_ = Matrix<S>(d, basis_.rows());
        if (d == 0) return;
        auto r = rref(basis_.transpose());
        if (r.rank != d) throw std::invalid_argument("Subspace: basis columns are dependent");
        rows_ = r.pivots;
        Matrix<S> square = basis_.select_rows(rows_);
        auto inv = solve_linear(square, Matrix<S>::identity(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) left_inverse_(i, rows_[k]) = (*inv)(i, k);
    }
    /// Basis taken from a spanning set of columns.
    static Subspace spanned_by(const Matrix<S> &spanning) {
        return Subspace(spanning.select_columns(independent_columns(spanning)));
    }

    std::size_t dim() const { return basis_.cols(); }
    std::size_t ambient() const { return basis_.rows(); }
    const Matrix<S> &basis() const { return basis_; }
    const Matrix<S> &left_inverse() const { return left_inverse_; }

    /// Coordinates of a vector assumed to lie in the subspace.
    Vector<S> coordinates(const Vector<S> &v) const {
        Vector<S> c(dim(), S(0));
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t k = 0; k < rows_.size(); ++k)
                if (!is_zero(left_inverse_(i, rows_[k])) && !is_zero(v[rows_[k]]))
                    c[i] += left_inverse_(i, rows_[k]) * v[rows_[k]];
        return c;
    }
    Matrix<S> coordinates(const Matrix<S> &m) const { return left_inverse_ * m; }

    bool contains(const Vector<S> &v) const { return basis_ * coordinates(v) == v; }

private:
    Matrix<S> basis_;
    Matrix<S> left_inverse_;
    std::vector<std::size_t> rows_;
};

template <class S>
using SparseVector = std::vector<std::pair<std::size_t, S>>;

/**
 * Incremental row echelon basis with sparse rows. Rows are kept with unit
 * leading coefficient and entries only at or after their pivot column.
 * Used for large sparse relation spaces (tensor coequalizers, bar complexes).
 */
template <class S>
class SparseEchelon {
public:
    explicit SparseEchelon(std::size_t n) : n_(n), pivot_row_(n, -1), work_(n, S(0)) {}

    std::size_t ambient() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::size_t c) const { return pivot_row_[c] >= 0; }

    /// Adds v to the span; returns true when it was independent.
    bool insert(const SparseVector<S> &v) {
        load(v);
        reduce_work();
        return commit();
    }
    bool insert_dense(const Vector<S> &v) {
        for (std::size_t i = 0; i < n_; ++i) work_[i] = v[i];
        reduce_work();
        return commit();
    }

    /// Canonical remainder of v modulo the span (no entries at pivot columns).
    Vector<S> reduce(const Vector<S> &v) const {
        Vector<S> w = v;
        reduce_into(w);
        return w;
    }

    std::vector<std::size_t> non_pivots() const {
        std::vector<std::size_t> r;
        for (std::size_t c = 0; c < n_; ++c)
            if (pivot_row_[c] < 0) r.push_back(c);
        return r;
    }

    /// Quotient of k^n by the span, with coordinate-inclusion section.
    QuotientSpace<S> quotient() const {
        QuotientSpace<S> q;
        q.complement = non_pivots();
        const std::size_t qd = q.complement.size();
        std::vector<long> index(n_, -1);
        for (std::size_t k = 0; k < qd; ++k) index[q.complement[k]] = static_cast<long>(k);
        q.projection = Matrix<S>(qd, n_);
        q.section = Matrix<S>(n_, qd);
        for (std::size_t k = 0; k < qd; ++k) {
            q.projection(k, q.complement[k]) = S(1);
            q.section(q.complement[k], k) = S(1);
        }
        Vector<S> e(n_, S(0));
        for (std::size_t c = 0; c < n_; ++c) {
            if (pivot_row_[c] < 0) continue;
            std::fill(e.begin(), e.end(), S(0));
            e[c] = S(1);
            reduce_into(e);
            for (std::size_t j = 0; j < n_; ++j)
                if (!is_zero(e[j])) q.projection(static_cast<std::size_t>(index[j]), c) = e[j];
        }
        return q;
    }

private:
    void load(const SparseVector<S> &v) {
        std::fill(work_.begin(), work_.end(), S(0));
        for (const auto &[i, x] : v) work_[i] += x;
    }
    void reduce_into(Vector<S> &w) const {
        for (std::size_t c = 0; c < n_; ++c) {
            if (is_zero(w[c]) || pivot_row_[c] < 0) continue;
            const S f = w[c];
            for (const auto &[j, x] : rows_[static_cast<std::size_t>(pivot_row_[c])]) w[j] -= f * x;
        }
    }
    void reduce_work() { reduce_into(work_); }
    bool commit() {
        std::size_t lead = n_;
        for (std::size_t c = 0; c < n_; ++c)
            if (!is_zero(work_[c])) {
                lead = c;
                break;
            }
        if (lead == n_) return false;
        const S inv = S(1) / work_[lead];
        SparseVector<S> row;
        for (std::size_t c = lead; c < n_; ++c)
            if (!is_zero(work_[c])) row.emplace_back(c, work_[c] * inv);
        pivot_row_[lead] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(row));
        return true;
    }

    std::size_t n_;
    std::vector<long> pivot_row_;
    std::vector<SparseVector<S>> rows_;
    Vector<S> work_;
};

/// Rank of a matrix given as sparse columns, via the incremental echelon.
template <class S>
std::size_t sparse_rank(std::size_t rows, const std::vector<SparseVector<S>> &columns) {
    SparseEchelon<S> e(rows);
    for (const auto &c : columns) e.insert(c);
    return e.rank();
}

}  // namespace qhom

#endif  // QHOM_LINALG_HPP
