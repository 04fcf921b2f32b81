#ifndef QHOM_ALGEBRA_HPP
#define QHOM_ALGEBRA_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <type_traits>
#include <vector>

#include "linalg.hpp"

namespace qhom {

/// Raised when structure constants, radical or idempotent data are inconsistent.
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class S>
class Algebra;

template <class S>
using AlgebraPtr = std::shared_ptr<const Algebra<S>>;

/// Raw description of an algebra; validated by Algebra::create.
template <class S>
struct AlgebraData {
    Field field;
    std::vector<std::string> labels;
    /// products[i * n + j] = sparse coordinates of b_i * b_j
    std::vector<SparseVector<S>> products;
    Vector<S> unit;
    /// Rows span the Jacobson radical.
    std::vector<Vector<S>> radical;
    /// Complete set of primitive orthogonal idempotents.
    std::vector<Vector<S>> idempotents;
    /// Optional radical generators (spanning rad modulo rad^2); computed when empty.
    std::vector<Vector<S>> radical_generators;
    /// Set by tensor_algebra: the two factors.
    AlgebraPtr<S> left_factor, right_factor;
};

/**
 * Finite-dimensional elementary algebra given by structure constants, with
 * its radical and a complete set of primitive orthogonal idempotents.
 *
 * Besides the basis, every algebra carries a generating set (idempotents
 * followed by radical generators) and a word table expressing each basis
 * element through products of generators. Modules store only generator
 * actions; the word table recovers the action of arbitrary elements.
 */
template <class S>
class Algebra {
public:
    struct Word {
        std::size_t generator;  ///< generator applied on the left
        std::size_t parent;     ///< index of the shorter word (npos for the unit)
    };
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    static AlgebraPtr<S> create(AlgebraData<S> data) {
        auto a = std::shared_ptr<Algebra>(new Algebra(std::move(data)));
        a->verify();
        a->build_generators();
        return a;
    }

    std::size_t dim() const { return n_; }
    const Field &field() const { return data_.field; }
    const std::vector<std::string> &labels() const { return data_.labels; }
    const std::string &label(std::size_t i) const { return data_.labels[i]; }
    std::optional<std::size_t> index_of(const std::string &label) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (data_.labels[i] == label) return i;
        return std::nullopt;
    }

    const SparseVector<S> &product(std::size_t i, std::size_t j) const { return data_.products[i * n_ + j]; }
    const Vector<S> &unit() const { return data_.unit; }
    const std::vector<Vector<S>> &radical() const { return data_.radical; }
    std::size_t radical_dim() const { return data_.radical.size(); }
    const std::vector<Vector<S>> &idempotents() const { return data_.idempotents; }
    std::size_t vertex_count() const { return data_.idempotents.size(); }
    const Vector<S> &idempotent(std::size_t s) const { return data_.idempotents[s]; }

    /// Idempotents first, then radical generators.
    const std::vector<Vector<S>> &generators() const { return generators_; }
    std::size_t generator_count() const { return generators_.size(); }
    const std::vector<Vector<S>> &radical_generators() const { return data_.radical_generators; }
    const std::vector<Word> &words() const { return words_; }
    /// Column i: coordinates of basis element b_i in the word basis.
    const std::vector<SparseVector<S>> &basis_in_words() const { return basis_in_words_; }

    const AlgebraPtr<S> &left_factor() const { return data_.left_factor; }
    const AlgebraPtr<S> &right_factor() const { return data_.right_factor; }
    bool is_tensor() const { return data_.left_factor != nullptr; }

    /// chi(s, i): coefficient of e_s in b_i modulo the radical.
    const Matrix<S> &semisimple_coordinates() const { return chi_; }

    const AlgebraData<S> &data() const { return data_; }

    Vector<S> basis_vector(std::size_t i) const { return unit_vector<S>(n_, i); }

    Vector<S> multiply(const Vector<S> &x, const Vector<S> &y) const {
        Vector<S> r(n_, S(0));
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (is_zero(y[j])) continue;
                const S c = x[i] * y[j];
                for (const auto &[k, v] : product(i, j)) r[k] += c * v;
            }
        }
        return r;
    }

    /// Matrix of y -> x * y.
    Matrix<S> left_multiplication(const Vector<S> &x) const {
        Matrix<S> m(n_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < n_; ++j)
                for (const auto &[k, v] : product(i, j)) m(k, j) += x[i] * v;
        }
        return m;
    }
    /// Matrix of y -> y * x.
    Matrix<S> right_multiplication(const Vector<S> &x) const {
        Matrix<S> m(n_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < n_; ++j)
                for (const auto &[k, v] : product(j, i)) m(k, j) += x[i] * v;
        }
        return m;
    }

    bool in_radical(const Vector<S> &x) const {
        if (is_zero_vector(x)) return true;
        if (!radical_space_) return false;
        return radical_space_->contains(x);
    }

    std::uint64_t fingerprint() const { return fingerprint_; }

    friend bool same_algebra(const Algebra &a, const Algebra &b) {
        if (&a == &b) return true;
        if (a.n_ != b.n_ || a.fingerprint_ != b.fingerprint_ || !(a.data_.field == b.data_.field)) return false;
        for (std::size_t k = 0; k < a.data_.products.size(); ++k)
            if (a.data_.products[k] != b.data_.products[k]) return false;
        return true;
    }

private:
    explicit Algebra(AlgebraData<S> data) : data_(std::move(data)), n_(data_.labels.size()) {}

    void fail(const std::string &what) const { throw AlgebraError(what); }

    void verify() {
        if constexpr (std::is_same_v<S, PrimeField>) {
            if (PrimeField::current_modulus() != data_.field.characteristic)
                fail("arithmetic over " + data_.field.name() + " needs an active ModulusScope for that prime");
        } else if (data_.field.characteristic != 0) {
            fail("rational backend requires characteristic 0");
        }
        if (n_ == 0) fail("unit law: the zero space is not a unital algebra");
        if (data_.products.size() != n_ * n_) fail("structure constant table has wrong size");
        if (data_.unit.size() != n_) fail("unit vector has wrong length");
        for (auto &p : data_.products) {
            // canonical sparse form: sorted, no zeros, no duplicates
            std::sort(p.begin(), p.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
            SparseVector<S> c;
            for (auto &[k, v] : p) {
                if (k >= n_) fail("structure constant index out of range");
                if (!c.empty() && c.back().first == k)
                    c.back().second += v;
                else
                    c.emplace_back(k, v);
            }
            std::erase_if(c, [](const auto &t) { return is_zero(t.second); });
            p = std::move(c);
        }
        // associativity: (b_i b_j) b_k == b_i (b_j b_k); dense scratch, cleared by touched index
        Vector<S> acc(n_, S(0));
        std::vector<std::size_t> touched;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) {
                    touched.clear();
                    for (const auto &[m, c] : product(i, j))
                        for (const auto &[l, d] : product(m, k)) {
                            acc[l] += c * d;
                            touched.push_back(l);
                        }
                    for (const auto &[m, c] : product(j, k))
                        for (const auto &[l, d] : product(i, m)) {
                            acc[l] -= c * d;
                            touched.push_back(l);
                        }
                    bool ok = true;
                    for (auto l : touched) {
                        if (!is_zero(acc[l])) ok = false;
                        acc[l] = S(0);
                    }
                    if (!ok) fail("associativity fails at (" + label(i) + ", " + label(j) + ", " + label(k) + ")");
                }
        // unit law
        if (is_zero_vector(data_.unit)) fail("unit law: unit is zero");
        for (std::size_t i = 0; i < n_; ++i) {
            auto e = basis_vector(i);
            if (multiply(data_.unit, e) != e || multiply(e, data_.unit) != e)
                fail("unit law fails at " + label(i));
        }
        // idempotents
        const std::size_t r = data_.idempotents.size();
        if (r == 0) fail("no idempotents supplied");
        Vector<S> sum(n_, S(0));
        for (std::size_t s = 0; s < r; ++s) {
            if (data_.idempotents[s].size() != n_) fail("idempotent has wrong length");
            for (std::size_t t = 0; t < r; ++t) {
                auto p = multiply(data_.idempotents[s], data_.idempotents[t]);
                auto expect = s == t ? data_.idempotents[s] : Vector<S>(n_, S(0));
                if (p != expect) fail("idempotents are not orthogonal idempotents");
            }
            for (std::size_t k = 0; k < n_; ++k) sum[k] += data_.idempotents[s][k];
        }
        if (sum != data_.unit) fail("idempotents do not sum to the unit");
        // radical: independent rows, two-sided ideal, nilpotent
        for (const auto &h : data_.radical)
            if (h.size() != n_) fail("radical vector has wrong length");
        if (!data_.radical.empty()) {
            Matrix<S> rad = Matrix<S>::from_rows(n_, data_.radical);
            if (rank(rad) != data_.radical.size()) fail("radical basis is dependent");
            radical_space_ = Subspace<S>(rad.transpose());
            for (const auto &h : data_.radical)
                for (std::size_t i = 0; i < n_; ++i) {
                    auto e = basis_vector(i);
                    if (!radical_space_->contains(multiply(e, h)) || !radical_space_->contains(multiply(h, e)))
                        fail("radical is not a two-sided ideal");
                }
            // H^k by iterated products
            std::vector<Vector<S>> power = data_.radical;
            for (std::size_t step = 0; step <= n_ && !power.empty(); ++step) {
                SparseEchelon<S> next(n_);
                std::vector<Vector<S>> kept;
                for (const auto &x : power)
                    for (const auto &h : data_.radical) {
                        auto p = multiply(x, h);
                        if (!is_zero_vector(p) && next.insert_dense(p)) kept.push_back(p);
                    }
                power = std::move(kept);
            }
            if (!power.empty()) fail("radical is not nilpotent");
        }
        // elementary: A = span(idempotents) + rad, direct
        if (r + data_.radical.size() != n_) fail("not elementary: dim A/rad differs from the number of idempotents");
        Matrix<S> full(n_, n_);
        for (std::size_t s = 0; s < r; ++s)
            for (std::size_t k = 0; k < n_; ++k) full(k, s) = data_.idempotents[s][k];
        for (std::size_t h = 0; h < data_.radical.size(); ++h)
            for (std::size_t k = 0; k < n_; ++k) full(k, r + h) = data_.radical[h][k];
        auto inv = solve_linear(full, Matrix<S>::identity(n_));
        if (!inv || rank(full) != n_) fail("not elementary: idempotents are dependent modulo the radical");
        chi_ = Matrix<S>(r, n_);
        for (std::size_t s = 0; s < r; ++s)
            for (std::size_t i = 0; i < n_; ++i) chi_(s, i) = (*inv)(s, i);
    }

    void build_generators() {
        if (data_.radical_generators.empty() && !data_.radical.empty()) {
            // complement of rad^2 inside rad
            SparseEchelon<S> sq(n_);
            for (const auto &x : data_.radical)
                for (const auto &y : data_.radical) {
                    auto p = multiply(x, y);
                    if (!is_zero_vector(p)) sq.insert_dense(p);
                }
            for (const auto &h : data_.radical)
                if (sq.insert_dense(h)) data_.radical_generators.push_back(h);
        }
        generators_ = data_.idempotents;
        for (const auto &g : data_.radical_generators) {
            if (!in_radical(g)) fail("radical generator outside the radical");
            generators_.push_back(g);
        }
        // word table: breadth-first products g * w starting from the unit
        SparseEchelon<S> span(n_);
        std::vector<Vector<S>> values;
        span.insert_dense(data_.unit);
        values.push_back(data_.unit);
        words_.push_back({npos, npos});
        for (std::size_t w = 0; w < values.size() && values.size() < n_; ++w)
            for (std::size_t g = 0; g < generators_.size() && values.size() < n_; ++g) {
                auto v = multiply(generators_[g], values[w]);
                if (span.insert_dense(v)) {
                    values.push_back(std::move(v));
                    words_.push_back({g, w});
                }
            }
        if (values.size() != n_) fail("generators do not generate the algebra");
        Matrix<S> wm = Matrix<S>::from_columns(n_, values);
        auto inv = solve_linear(wm, Matrix<S>::identity(n_));
        basis_in_words_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k)
                if (!is_zero((*inv)(k, i))) basis_in_words_[i].emplace_back(k, (*inv)(k, i));
        // fingerprint of the multiplication table
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ULL;
        };
        mix(n_);
        for (const auto &p : data_.products) {
            mix(p.size());
            for (const auto &[k, v] : p) {
                mix(k);
                for (char c : v.str()) mix(static_cast<unsigned char>(c));
            }
        }
        fingerprint_ = h;
    }

    AlgebraData<S> data_;
    std::size_t n_;
    std::optional<Subspace<S>> radical_space_;
    Matrix<S> chi_;
    std::vector<Vector<S>> generators_;
    std::vector<Word> words_;
    std::vector<SparseVector<S>> basis_in_words_;
    std::uint64_t fingerprint_ = 0;

    // opposite() memoization; the opposite keeps only a weak link back
    mutable std::mutex op_mutex_;
    mutable AlgebraPtr<S> op_cache_;
    mutable std::weak_ptr<const Algebra> op_back_;

    template <class T>
    friend AlgebraPtr<T> opposite(const AlgebraPtr<T> &a);
};

/// k as a one-dimensional algebra.
template <class S>
AlgebraPtr<S> ground_algebra(Field f) {
    AlgebraData<S> d;
    d.field = f;
    d.labels = {"1"};
    d.products = {SparseVector<S>{{0, S(1)}}};
    d.unit = {S(1)};
    d.idempotents = {{S(1)}};
    return Algebra<S>::create(std::move(d));
}

/// Opposite algebra; opposite(opposite(a)) returns a itself.
template <class S>
AlgebraPtr<S> opposite(const AlgebraPtr<S> &a) {
    std::lock_guard<std::mutex> lock(a->op_mutex_);
    if (auto back = a->op_back_.lock()) return back;
    if (a->op_cache_) return a->op_cache_;
    AlgebraData<S> d;
    d.field = a->field();
    d.labels = a->labels();
    const std::size_t n = a->dim();
    d.products.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.products[i * n + j] = a->product(j, i);
    d.unit = a->unit();
    d.radical = a->radical();
    d.idempotents = a->idempotents();
    d.radical_generators = a->radical_generators();
    auto o = Algebra<S>::create(std::move(d));
    o->op_back_ = a;
    a->op_cache_ = o;
    return o;
}

/**
 * a (x) b with basis pairs (i, j) at index i * dim b + j. Generators are
 * e_s (x) f_t, then g (x) 1 for radical generators g of a, then 1 (x) h.
 */
template <class S>
AlgebraPtr<S> tensor_algebra(const AlgebraPtr<S> &a, const AlgebraPtr<S> &b) {
    if (!(a->field() == b->field())) throw AlgebraError("tensor_algebra: field mismatch");
    const std::size_t na = a->dim(), nb = b->dim(), n = na * nb;
    AlgebraData<S> d;
    d.field = a->field();
    d.left_factor = a;
    d.right_factor = b;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) d.labels.push_back(a->label(i) + "|" + b->label(j));
    d.products.resize(n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l) {
                    auto &p = d.products[(i * nb + j) * n + (k * nb + l)];
                    for (const auto &[x, c] : a->product(i, k))
                        for (const auto &[y, e] : b->product(j, l)) p.emplace_back(x * nb + y, c * e);
                }
    auto pair = [&](const Vector<S> &x, const Vector<S> &y) {
        Vector<S> v(n, S(0));
        for (std::size_t i = 0; i < na; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < nb; ++j)
                if (!is_zero(y[j])) v[i * nb + j] = x[i] * y[j];
        }
        return v;
    };
    d.unit = pair(a->unit(), b->unit());
    for (const auto &e : a->idempotents())
        for (const auto &f : b->idempotents()) d.idempotents.push_back(pair(e, f));
    // rad(a) (x) b + a (x) rad(b): the span of r (x) b_j and b_i (x) h, made independent
    SparseEchelon<S> rad(n);
    for (const auto &r : a->radical())
        for (std::size_t j = 0; j < nb; ++j) {
            auto v = pair(r, b->basis_vector(j));
            if (rad.insert_dense(v)) d.radical.push_back(std::move(v));
        }
    for (std::size_t i = 0; i < na; ++i)
        for (const auto &h : b->radical()) {
            auto v = pair(a->basis_vector(i), h);
            if (rad.insert_dense(v)) d.radical.push_back(std::move(v));
        }
    for (const auto &g : a->radical_generators()) d.radical_generators.push_back(pair(g, b->unit()));
    for (const auto &h : b->radical_generators()) d.radical_generators.push_back(pair(a->unit(), h));
    return Algebra<S>::create(std::move(d));
}

/// a (x) a^op.
template <class S>
AlgebraPtr<S> enveloping_algebra(const AlgebraPtr<S> &a) {
    return tensor_algebra(a, opposite(a));
}

/// Block-diagonal product a x b; a's basis first.
template <class S>
AlgebraPtr<S> product_algebra(const AlgebraPtr<S> &a, const AlgebraPtr<S> &b) {
    if (!(a->field() == b->field())) throw AlgebraError("product_algebra: field mismatch");
    const std::size_t na = a->dim(), nb = b->dim(), n = na + nb;
    AlgebraData<S> d;
    d.field = a->field();
    for (const auto &l : a->labels()) d.labels.push_back(l);
    for (const auto &l : b->labels()) d.labels.push_back(l + "'");
    d.products.resize(n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) d.products[i * n + j] = a->product(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (const auto &[k, c] : b->product(i, j)) d.products[(na + i) * n + na + j].emplace_back(na + k, c);
    auto left = [&](const Vector<S> &x) {
        Vector<S> v(n, S(0));
        std::copy(x.begin(), x.end(), v.begin());
        return v;
    };
    auto right = [&](const Vector<S> &y) {
        Vector<S> v(n, S(0));
        std::copy(y.begin(), y.end(), v.begin() + static_cast<long>(na));
        return v;
    };
    d.unit = left(a->unit());
    for (std::size_t k = 0; k < nb; ++k) d.unit[na + k] = b->unit()[k];
    for (const auto &e : a->idempotents()) d.idempotents.push_back(left(e));
    for (const auto &e : b->idempotents()) d.idempotents.push_back(right(e));
    for (const auto &h : a->radical()) d.radical.push_back(left(h));
    for (const auto &h : b->radical()) d.radical.push_back(right(h));
    for (const auto &g : a->radical_generators()) d.radical_generators.push_back(left(g));
    for (const auto &g : b->radical_generators()) d.radical_generators.push_back(right(g));
    return Algebra<S>::create(std::move(d));
}

/// The commutator subspace [a, a] = span{ b_i b_j - b_j b_i }.
template <class S>
std::size_t commutator_rank(const Algebra<S> &a) {
    const std::size_t n = a.dim();
    SparseEchelon<S> e(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector<S> v(n, S(0));
            for (const auto &[k, c] : a.product(i, j)) v[k] += c;
            for (const auto &[k, c] : a.product(j, i)) v[k] -= c;
            if (!is_zero_vector(v)) e.insert_dense(v);
        }
    return e.rank();
}

}  // namespace qhom

#endif  // QHOM_ALGEBRA_HPP
