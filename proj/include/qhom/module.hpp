#ifndef QHOM_MODULE_HPP
#define QHOM_MODULE_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace qhom {

class ModuleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Finite-dimensional left module. The action is stored on the algebra's
 * generators; `action` and `orbit` rebuild the action of any element from
 * the word table.
 */
template <class S>
class Module {
public:
    Module() = default;

    /// Validates that the generator matrices define a representation.
    static Module create(AlgebraPtr<S> alg, std::size_t dim, std::vector<Matrix<S>> gens) {
        Module m(std::move(alg), dim, std::move(gens));
        m.verify();
        return m;
    }
    /// For internal constructions that are correct by construction.
    static Module trusted(AlgebraPtr<S> alg, std::size_t dim, std::vector<Matrix<S>> gens) {
        return Module(std::move(alg), dim, std::move(gens));
    }

    const AlgebraPtr<S> &algebra() const { return alg_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Matrix<S>> &generator_actions() const { return gens_; }
    const Matrix<S> &generator_action(std::size_t g) const { return gens_[g]; }
    const Matrix<S> &idempotent_action(std::size_t s) const { return gens_[s]; }
    bool is_zero() const { return dim_ == 0; }

    /// Matrices of all words of the algebra's word table.
    std::vector<Matrix<S>> word_actions() const {
        const auto &words = alg_->words();
        std::vector<Matrix<S>> w;
        w.reserve(words.size());
        for (std::size_t k = 0; k < words.size(); ++k) {
            if (k == 0)
                w.push_back(Matrix<S>::identity(dim_));
            else
                w.push_back(gens_[words[k].generator] * w[words[k].parent]);
        }
        return w;
    }

    /// Action matrix of each basis element of the algebra.
    std::vector<Matrix<S>> basis_actions() const {
        auto w = word_actions();
        std::vector<Matrix<S>> r;
        r.reserve(alg_->dim());
        for (std::size_t i = 0; i < alg_->dim(); ++i) {
            Matrix<S> m(dim_, dim_);
            for (const auto &[k, c] : alg_->basis_in_words()[i]) m.add_scaled(w[k], c);
            r.push_back(std::move(m));
        }
        return r;
    }

    /// Action matrix of an arbitrary algebra element.
    Matrix<S> action(const Vector<S> &element) const {
        auto b = basis_actions();
        Matrix<S> m(dim_, dim_);
        for (std::size_t i = 0; i < element.size(); ++i)
            if (!qhom::is_zero(element[i])) m.add_scaled(b[i], element[i]);
        return m;
    }

    /// Columns: b_i . v for every basis element b_i.
    Matrix<S> orbit(const Vector<S> &v) const {
        const auto &words = alg_->words();
        std::vector<Vector<S>> w;
        w.reserve(words.size());
        for (std::size_t k = 0; k < words.size(); ++k) {
            if (k == 0)
                w.push_back(v);
            else
                w.push_back(gens_[words[k].generator] * w[words[k].parent]);
        }
        Matrix<S> r(dim_, alg_->dim());
        for (std::size_t i = 0; i < alg_->dim(); ++i)
            for (const auto &[k, c] : alg_->basis_in_words()[i])
                for (std::size_t row = 0; row < dim_; ++row)
                    if (!qhom::is_zero(w[k][row])) r(row, i) += c * w[k][row];
        return r;
    }

    /// element . v
    Vector<S> act(const Vector<S> &element, const Vector<S> &v) const { return orbit(v) * element; }

    /// Full representation check: rho(1) = id and rho(g x) = rho(g) rho(x).
    void verify() const {
        if (gens_.size() != alg_->generator_count())
            throw ModuleError("module needs one action matrix per algebra generator");
        for (const auto &g : gens_)
            if (g.rows() != dim_ || g.cols() != dim_) throw ModuleError("action matrix has wrong shape");
        if (dim_ == 0) return;
        Matrix<S> sum(dim_, dim_);
        for (std::size_t s = 0; s < alg_->vertex_count(); ++s) sum = sum + gens_[s];
        if (!(sum == Matrix<S>::identity(dim_))) throw ModuleError("unit does not act as the identity");
        auto b = basis_actions();
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            // generator g itself, via words, must agree with the stored matrix
            const auto &gv = alg_->generators()[g];
            Matrix<S> direct(dim_, dim_);
            for (std::size_t i = 0; i < gv.size(); ++i)
                if (!qhom::is_zero(gv[i])) direct.add_scaled(b[i], gv[i]);
            if (!(direct == gens_[g])) throw ModuleError("generator action inconsistent with the algebra relations");
            for (std::size_t j = 0; j < alg_->dim(); ++j) {
                auto prod = alg_->multiply(gv, alg_->basis_vector(j));
                Matrix<S> rhs(dim_, dim_);
                for (std::size_t i = 0; i < prod.size(); ++i)
                    if (!qhom::is_zero(prod[i])) rhs.add_scaled(b[i], prod[i]);
                if (!(gens_[g] * b[j] == rhs)) throw ModuleError("action is not multiplicative");
            }
        }
    }

    /// dim e_s M for each vertex s.
    std::vector<std::size_t> dimension_vector() const {
        std::vector<std::size_t> d;
        for (std::size_t s = 0; s < alg_->vertex_count(); ++s) d.push_back(rank(gens_[s]));
        return d;
    }

private:
    Module(AlgebraPtr<S> alg, std::size_t dim, std::vector<Matrix<S>> gens)
        : alg_(std::move(alg)), dim_(dim), gens_(std::move(gens)) {}

    AlgebraPtr<S> alg_;
    std::size_t dim_ = 0;
    std::vector<Matrix<S>> gens_;
};

template <class S>
bool same_algebra(const AlgebraPtr<S> &a, const AlgebraPtr<S> &b) {
    return same_algebra(*a, *b);
}

template <class S>
void require_same_algebra(const Module<S> &m, const Module<S> &n, const char *what) {
    if (!same_algebra(m.algebra(), n.algebra())) throw ModuleError(std::string(what) + ": algebra mismatch");
}

/// Linear map between modules over the same algebra.
template <class S>
struct ModuleMap {
    Matrix<S> matrix;  ///< target.dim() x source.dim()
};

template <class S>
bool is_homomorphism(const Module<S> &source, const Module<S> &target, const Matrix<S> &f) {
    if (f.rows() != target.dim() || f.cols() != source.dim()) return false;
    for (std::size_t g = 0; g < source.algebra()->generator_count(); ++g)
        if (!(f * source.generator_action(g) == target.generator_action(g) * f)) return false;
    return true;
}

template <class S>
Module<S> zero_module(const AlgebraPtr<S> &a) {
    return Module<S>::trusted(a, 0, std::vector<Matrix<S>>(a->generator_count(), Matrix<S>(0, 0)));
}

template <class S>
Module<S> regular_module(const AlgebraPtr<S> &a) {
    std::vector<Matrix<S>> gens;
    for (const auto &g : a->generators()) gens.push_back(a->left_multiplication(g));
    return Module<S>::trusted(a, a->dim(), std::move(gens));
}

/// Basis of A e_s inside A, chosen among the columns b_j e_s.
template <class S>
Subspace<S> projective_basis(const Algebra<S> &a, std::size_t s) {
    return Subspace<S>::spanned_by(a.right_multiplication(a.idempotent(s)));
}

/// A e_s with the restricted left regular action.
template <class S>
Module<S> projective_module(const AlgebraPtr<S> &a, std::size_t s) {
    auto basis = projective_basis(*a, s);
    std::vector<Matrix<S>> gens;
    for (const auto &g : a->generators()) gens.push_back(basis.coordinates(a->left_multiplication(g) * basis.basis()));
    return Module<S>::trusted(a, basis.dim(), std::move(gens));
}

template <class S>
std::vector<Module<S>> projective_indecomposables(const AlgebraPtr<S> &a) {
    std::vector<Module<S>> r;
    for (std::size_t s = 0; s < a->vertex_count(); ++s) r.push_back(projective_module(a, s));
    return r;
}

/// Value of the character chi_s on an algebra element.
template <class S>
S character(const Algebra<S> &a, std::size_t s, const Vector<S> &x) {
    S v(0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_zero(x[i])) v += x[i] * a.semisimple_coordinates()(s, i);
    return v;
}

/// One-dimensional simple module at vertex s.
template <class S>
Module<S> simple_module(const AlgebraPtr<S> &a, std::size_t s) {
    std::vector<Matrix<S>> gens;
    for (const auto &g : a->generators()) {
        Matrix<S> m(1, 1);
        m(0, 0) = character(*a, s, g);
        gens.push_back(std::move(m));
    }
    return Module<S>::trusted(a, 1, std::move(gens));
}

/// A / rad A as a left module: the direct sum of the simples.
template <class S>
Module<S> top_of_regular(const AlgebraPtr<S> &a);

template <class S>
Module<S> direct_sum(const std::vector<Module<S>> &parts) {
    if (parts.empty()) throw ModuleError("direct_sum of nothing");
    const auto &a = parts.front().algebra();
    std::size_t d = 0;
    for (const auto &p : parts) {
        if (!same_algebra(p.algebra(), a)) throw ModuleError("direct_sum: algebra mismatch");
        d += p.dim();
    }
    std::vector<Matrix<S>> gens;
    for (std::size_t g = 0; g < a->generator_count(); ++g) {
        std::vector<Matrix<S>> blocks;
        for (const auto &p : parts) blocks.push_back(p.generator_action(g));
        gens.push_back(block_diagonal(blocks));
    }
    return Module<S>::trusted(a, d, std::move(gens));
}

template <class S>
Module<S> top_of_regular(const AlgebraPtr<S> &a) {
    std::vector<Module<S>> s;
    for (std::size_t v = 0; v < a->vertex_count(); ++v) s.push_back(simple_module(a, v));
    return direct_sum(s);
}

/// Submodule with the given basis (columns), which must be invariant.
template <class S>
Module<S> submodule(const Module<S> &m, const Subspace<S> &sub) {
    std::vector<Matrix<S>> gens;
    for (const auto &g : m.generator_actions()) gens.push_back(sub.coordinates(g * sub.basis()));
    return Module<S>::trusted(m.algebra(), sub.dim(), std::move(gens));
}

template <class S>
struct QuotientModule {
    Module<S> module;
    QuotientSpace<S> space;
};

/// m / sub for an invariant subspace given by spanning columns.
template <class S>
QuotientModule<S> quotient_module(const Module<S> &m, const Matrix<S> &spanning) {
    QuotientModule<S> q;
    q.space = quotient_space(m.dim(), spanning);
    std::vector<Matrix<S>> gens;
    for (const auto &g : m.generator_actions()) gens.push_back(q.space.projection * g * q.space.section);
    q.module = Module<S>::trusted(m.algebra(), q.space.projection.rows(), std::move(gens));
    return q;
}

/// Smallest invariant subspace containing the given vectors (columns).
template <class S>
Subspace<S> generated_subspace(const Module<S> &m, const std::vector<Vector<S>> &seeds) {
    SparseEchelon<S> span(m.dim());
    std::vector<Vector<S>> basis;
    for (const auto &v : seeds)
        if (span.insert_dense(v)) basis.push_back(v);
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (const auto &g : m.generator_actions()) {
            auto w = g * basis[k];
            if (span.insert_dense(w)) basis.push_back(std::move(w));
        }
    return Subspace<S>(Matrix<S>::from_columns(m.dim(), basis));
}

/// rad(A) . M
template <class S>
Subspace<S> radical_subspace(const Module<S> &m) {
    const auto &a = *m.algebra();
    std::vector<Vector<S>> seeds;
    for (std::size_t g = a.vertex_count(); g < a.generator_count(); ++g) {
        const auto &act = m.generator_action(g);
        for (std::size_t j = 0; j < m.dim(); ++j) {
            auto c = act.column(j);
            if (!is_zero_vector(c)) seeds.push_back(std::move(c));
        }
    }
    return generated_subspace(m, seeds);
}

/// k-linear dual: a left module over the opposite algebra.
/**
 * m1 (x)_k m2 over t, where t has basis b_i (x) c_j at index i * dim C + j
 * and factorwise products: B (x) C, or its opposite acting through B^op (x) C^op.
 */
template <class S>
Module<S> external_tensor(const AlgebraPtr<S> &t, const Module<S> &m1, const Module<S> &m2) {
    const std::size_t nb = m1.algebra()->dim(), nc = m2.algebra()->dim();
    if (t->dim() != nb * nc) throw ModuleError("external_tensor: algebra dimension mismatch");
    auto b1 = m1.basis_actions();
    auto b2 = m2.basis_actions();
    std::vector<Matrix<S>> gens;
    for (const auto &g : t->generators()) {
        Matrix<S> x(m1.dim() * m2.dim(), m1.dim() * m2.dim());
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                if (!is_zero(g[i * nc + j])) x.add_scaled(kron(b1[i], b2[j]), g[i * nc + j]);
        gens.push_back(std::move(x));
    }
    return Module<S>::create(t, m1.dim() * m2.dim(), std::move(gens));
}

template <class S>
Module<S> dual(const Module<S> &m) {
    std::vector<Matrix<S>> gens;
    for (const auto &g : m.generator_actions()) gens.push_back(g.transpose());
    return Module<S>::trusted(opposite(m.algebra()), m.dim(), std::move(gens));
}

/**
 * Bimodule over (L, R): a left L-module and a left R^op-module (the right
 * R-action) on the same space, with commuting actions.
 */
template <class S>
class Bimodule {
public:
    Bimodule() = default;

    static Bimodule create(Module<S> left, Module<S> right_op) {
        Bimodule b(std::move(left), std::move(right_op));
        b.verify();
        return b;
    }
    static Bimodule trusted(Module<S> left, Module<S> right_op) { return Bimodule(std::move(left), std::move(right_op)); }

    std::size_t dim() const { return left_.dim(); }
    bool is_zero() const { return dim() == 0; }
    const AlgebraPtr<S> &left_algebra() const { return left_.algebra(); }
    /// The algebra acting on the right (not its opposite).
    AlgebraPtr<S> right_algebra() const { return opposite(right_.algebra()); }
    /// Left module over L.
    const Module<S> &left() const { return left_; }
    /// Left module over R^op describing the right R-action.
    const Module<S> &right() const { return right_; }

    void verify() const {
        if (left_.dim() != right_.dim()) throw ModuleError("bimodule sides have different dimensions");
        left_.verify();
        right_.verify();
        for (const auto &x : left_.generator_actions())
            for (const auto &y : right_.generator_actions())
                if (!(x * y == y * x)) throw ModuleError("left and right actions do not commute");
    }

private:
    Bimodule(Module<S> left, Module<S> right_op) : left_(std::move(left)), right_(std::move(right_op)) {
        if (left_.dim() != right_.dim()) throw ModuleError("bimodule sides have different dimensions");
    }

    Module<S> left_;
    Module<S> right_;
};

/// Left A-module viewed as an (A, k)-bimodule.
template <class S>
Bimodule<S> as_left_bimodule(const Module<S> &m) {
    auto k = ground_algebra<S>(m.algebra()->field());
    std::vector<Matrix<S>> gens{Matrix<S>::identity(m.dim())};
    return Bimodule<S>::trusted(m, Module<S>::trusted(opposite(k), m.dim(), std::move(gens)));
}

/// Left A^op-module (= right A-module) viewed as a (k, A)-bimodule.
template <class S>
Bimodule<S> as_right_bimodule(const Module<S> &m_op) {
    auto k = ground_algebra<S>(m_op.algebra()->field());
    std::vector<Matrix<S>> gens{Matrix<S>::identity(m_op.dim())};
    return Bimodule<S>::trusted(Module<S>::trusted(k, m_op.dim(), std::move(gens)), m_op);
}

/**
 * Bimodule over (L, R) as a left module over t = L (x) R^op. The generator
 * layout of tensor_algebra is used directly: e_s (x) f_t, g (x) 1, 1 (x) h.
 */
template <class S>
Module<S> bimodule_to_module(const Bimodule<S> &b, const AlgebraPtr<S> &t) {
    if (!t->is_tensor() || !same_algebra(t->left_factor(), b.left_algebra()) ||
        !same_algebra(t->right_factor(), b.right().algebra()))
        throw ModuleError("bimodule_to_module: algebra is not L (x) R^op for this bimodule");
    const auto &l = *b.left_algebra();
    const auto &r = *b.right().algebra();
    std::vector<Matrix<S>> gens;
    for (std::size_t s = 0; s < l.vertex_count(); ++s)
        for (std::size_t u = 0; u < r.vertex_count(); ++u)
            gens.push_back(b.left().idempotent_action(s) * b.right().idempotent_action(u));
    for (std::size_t g = l.vertex_count(); g < l.generator_count(); ++g) gens.push_back(b.left().generator_action(g));
    for (std::size_t h = r.vertex_count(); h < r.generator_count(); ++h) gens.push_back(b.right().generator_action(h));
    return Module<S>::trusted(t, b.dim(), std::move(gens));
}

/// Inverse of bimodule_to_module for modules over a tensor algebra L (x) R^op.
template <class S>
Bimodule<S> module_to_bimodule(const Module<S> &m) {
    const auto &t = m.algebra();
    if (!t->is_tensor()) throw ModuleError("module_to_bimodule: algebra is not a tensor algebra");
    const auto &l = t->left_factor();
    const auto &rop = t->right_factor();
    const std::size_t vl = l->vertex_count(), vr = rop->vertex_count();
    std::vector<Matrix<S>> left, right;
    for (std::size_t s = 0; s < vl; ++s) {
        Matrix<S> e(m.dim(), m.dim());
        for (std::size_t u = 0; u < vr; ++u) e = e + m.generator_action(s * vr + u);
        left.push_back(std::move(e));
    }
    for (std::size_t u = 0; u < vr; ++u) {
        Matrix<S> e(m.dim(), m.dim());
        for (std::size_t s = 0; s < vl; ++s) e = e + m.generator_action(s * vr + u);
        right.push_back(std::move(e));
    }
    std::size_t g = vl * vr;
    for (std::size_t k = vl; k < l->generator_count(); ++k) left.push_back(m.generator_action(g++));
    for (std::size_t k = vr; k < rop->generator_count(); ++k) right.push_back(m.generator_action(g++));
    return Bimodule<S>::trusted(Module<S>::trusted(l, m.dim(), std::move(left)),
                                Module<S>::trusted(rop, m.dim(), std::move(right)));
}

/// A as an A-bimodule.
template <class S>
Bimodule<S> regular_bimodule(const AlgebraPtr<S> &a) {
    auto aop = opposite(a);
    std::vector<Matrix<S>> right;
    for (const auto &g : aop->generators()) right.push_back(a->right_multiplication(g));
    return Bimodule<S>::trusted(regular_module(a), Module<S>::trusted(aop, a->dim(), std::move(right)));
}

}  // namespace qhom

#endif  // QHOM_MODULE_HPP
