#ifndef QHOM_TENSOR_HPP
#define QHOM_TENSOR_HPP

#include <map>
#include <utility>
#include <vector>

#include "module.hpp"

namespace qhom {

/// m (x)_A n together with the maps relating it to the k-tensor m (x)_k n.
template <class S>
struct TensorProduct {
    Bimodule<S> result;
    Matrix<S> projection;  ///< dim result x (dim m * dim n)
    Matrix<S> section;     ///< (dim m * dim n) x dim result
    std::size_t left_dim = 0, right_dim = 0;

    /// Class of x (x) y.
    Vector<S> pure(const Vector<S> &x, const Vector<S> &y) const {
        Vector<S> v(result.dim(), S(0));
        for (std::size_t i = 0; i < left_dim; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < right_dim; ++j) {
                if (is_zero(y[j])) continue;
                const S c = x[i] * y[j];
                const std::size_t col = i * right_dim + j;
                for (std::size_t r = 0; r < v.size(); ++r)
                    if (!is_zero(projection(r, col))) v[r] += c * projection(r, col);
            }
        }
        return v;
    }
};

namespace detail {

/// (a (x) I) v for v in k^{p * q}, a acting on the first factor.
template <class S>
Vector<S> apply_left_factor(const Matrix<S> &a, const Vector<S> &v, std::size_t q) {
    const std::size_t p = a.rows();
    Vector<S> w(p * q, S(0));
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < q; ++j) {
            const S &x = v[i * q + j];
            if (is_zero(x)) continue;
            for (std::size_t r = 0; r < p; ++r)
                if (!is_zero(a(r, i))) w[r * q + j] += a(r, i) * x;
        }
    return w;
}

/// (I (x) b) v for v in k^{p * q}, b acting on the second factor.
template <class S>
Vector<S> apply_right_factor(const Matrix<S> &b, const Vector<S> &v, std::size_t p) {
    const std::size_t q = b.rows();
    Vector<S> w(p * q, S(0));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const S &x = v[i * b.cols() + j];
            if (is_zero(x)) continue;
            for (std::size_t s = 0; s < q; ++s)
                if (!is_zero(b(s, j))) w[i * q + s] += b(s, j) * x;
        }
    return w;
}

template <class S>
Matrix<S> induced_action(const QuotientSpace<S> &qs, const std::vector<Vector<S>> &images) {
    return qs.projection * Matrix<S>::from_columns(qs.projection.cols(), images);
}

}  // namespace detail

/**
 * m (x)_A n for an (L, A)-bimodule m and an (A, R)-bimodule n: the k-tensor
 * modulo m.a (x) y - x (x) a.y for the algebra generators a. The residual
 * L- and R-actions are carried over.
 */
template <class S>
TensorProduct<S> tensor_over(const Bimodule<S> &m, const Bimodule<S> &n) {
    if (!same_algebra(m.right().algebra(), opposite(n.left_algebra())))
        throw ModuleError("tensor_over: right algebra of the first factor differs from left algebra of the second");
    const std::size_t dm = m.dim(), dn = n.dim(), total = dm * dn;
    const auto &a = *n.left_algebra();
    SparseEchelon<S> rel(total);
    for (std::size_t g = 0; g < a.generator_count(); ++g) {
        const auto &r = m.right().generator_action(g);
        const auto &l = n.left().generator_action(g);
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t j = 0; j < dn; ++j) {
                std::map<std::size_t, S> acc;
                for (std::size_t p = 0; p < dm; ++p)
                    if (!is_zero(r(p, i))) acc[p * dn + j] += r(p, i);
                for (std::size_t q = 0; q < dn; ++q)
                    if (!is_zero(l(q, j))) acc[i * dn + q] -= l(q, j);
                SparseVector<S> v;
                for (auto &[k, c] : acc)
                    if (!is_zero(c)) v.emplace_back(k, c);
                if (!v.empty()) rel.insert(v);
            }
    }
    auto qs = rel.quotient();
    const std::size_t d = qs.complement.size();
    TensorProduct<S> t;
    t.left_dim = dm;
    t.right_dim = dn;
    std::vector<Matrix<S>> left, right;
    for (const auto &x : m.left().generator_actions()) {
        std::vector<Vector<S>> imgs;
        for (std::size_t k = 0; k < d; ++k) imgs.push_back(detail::apply_left_factor(x, qs.section.column(k), dn));
        left.push_back(d ? detail::induced_action(qs, imgs) : Matrix<S>(0, 0));
    }
    for (const auto &y : n.right().generator_actions()) {
        std::vector<Vector<S>> imgs;
        for (std::size_t k = 0; k < d; ++k) imgs.push_back(detail::apply_right_factor(y, qs.section.column(k), dm));
        right.push_back(d ? detail::induced_action(qs, imgs) : Matrix<S>(0, 0));
    }
    t.result = Bimodule<S>::trusted(Module<S>::trusted(m.left_algebra(), d, std::move(left)),
                                    Module<S>::trusted(n.right().algebra(), d, std::move(right)));
    t.projection = std::move(qs.projection);
    t.section = std::move(qs.section);
    return t;
}

/// Dimension of m (x)_A n for a right module (left A^op-module) and a left module.
template <class S>
std::size_t tensor_dimension(const Module<S> &m_right, const Module<S> &n) {
    return tensor_over(as_right_bimodule(m_right), as_left_bimodule(n)).result.dim();
}

/**
 * Powers m, m (x)_B m, ... up to the j-th; once a power vanishes the
 * remaining entries are zero bimodules without further computation.
 */
template <class S>
std::vector<TensorProduct<S>> tensor_powers(const Bimodule<S> &m, std::size_t j) {
    if (j == 0) throw ModuleError("tensor_powers: exponent must be at least 1");
    std::vector<TensorProduct<S>> out;
    TensorProduct<S> first;
    first.result = m;
    first.projection = Matrix<S>::identity(m.dim());
    first.section = Matrix<S>::identity(m.dim());
    first.left_dim = m.dim();
    first.right_dim = 1;
    out.push_back(std::move(first));
    for (std::size_t k = 2; k <= j; ++k) {
        const auto &prev = out.back().result;
        if (prev.dim() == 0) {
            TensorProduct<S> z;
            z.result = prev;
            z.projection = Matrix<S>(0, 0);
            z.section = Matrix<S>(0, 0);
            out.push_back(std::move(z));
            continue;
        }
        out.push_back(tensor_over(prev, m));
    }
    return out;
}

template <class S>
Bimodule<S> tensor_power(const Bimodule<S> &m, std::size_t j) {
    return tensor_powers(m, j).back().result;
}

// ---------------------------------------------------------------- restriction of scalars

/// Module over b obtained from a module over a through an algebra map f: b -> a (dim a x dim b).
template <class S>
Module<S> restrict_module(const Module<S> &m, const AlgebraPtr<S> &b, const Matrix<S> &f) {
    if (f.rows() != m.algebra()->dim() || f.cols() != b->dim()) throw ModuleError("restrict_module: map has wrong shape");
    auto acts = m.basis_actions();
    std::vector<Matrix<S>> gens;
    for (const auto &g : b->generators()) {
        Vector<S> img = f * g;
        Matrix<S> x(m.dim(), m.dim());
        for (std::size_t i = 0; i < img.size(); ++i)
            if (!is_zero(img[i])) x.add_scaled(acts[i], img[i]);
        gens.push_back(std::move(x));
    }
    return Module<S>::trusted(b, m.dim(), std::move(gens));
}

/// Restricts the left action along fl: L' -> L and the right action along fr: R' -> R.
template <class S>
Bimodule<S> restrict_bimodule(const Bimodule<S> &m, const AlgebraPtr<S> &l, const Matrix<S> &fl,
                              const AlgebraPtr<S> &r, const Matrix<S> &fr) {
    return Bimodule<S>::trusted(restrict_module(m.left(), l, fl), restrict_module(m.right(), opposite(r), fr));
}

}  // namespace qhom

#endif  // QHOM_TENSOR_HPP
