#ifndef QHOM_EXTENSIONS_HPP
#define QHOM_EXTENSIONS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tensor.hpp"

namespace qhom {

class ExtensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Provenance { generic, trivial_extension, triangular, morita_zero };

inline const char *provenance_name(Provenance p) {
    switch (p) {
        case Provenance::trivial_extension: return "trivial-extension";
        case Provenance::triangular: return "triangular";
        case Provenance::morita_zero: return "morita-zero";
        default: return "generic";
    }
}

/// B inside A through a verified embedding, optionally with a retraction A -> B.
template <class S>
struct ExtensionPresentation {
    AlgebraPtr<S> ambient;
    AlgebraPtr<S> sub;
    Matrix<S> embedding;                ///< dim A x dim B
    std::optional<Matrix<S>> retraction;  ///< dim B x dim A
    Provenance provenance = Provenance::generic;
    /// Why the supplied retraction was rejected, if it was.
    std::string retraction_problem;
};

/// Empty string when f: src -> dst is a unital algebra map, else the violated identity.
template <class S>
std::string algebra_map_problem(const Algebra<S> &src, const Algebra<S> &dst, const Matrix<S> &f) {
    if (f.rows() != dst.dim() || f.cols() != src.dim()) return "map has the wrong shape";
    if (!(f * src.unit() == dst.unit())) return "map is not unital";
    std::vector<Vector<S>> img;
    for (std::size_t i = 0; i < src.dim(); ++i) img.push_back(f.column(i));
    for (std::size_t i = 0; i < src.dim(); ++i)
        for (std::size_t j = 0; j < src.dim(); ++j) {
            Vector<S> lhs(dst.dim(), S(0));
            for (const auto &[k, c] : src.product(i, j))
                for (std::size_t r = 0; r < dst.dim(); ++r)
                    if (!is_zero(f(r, k))) lhs[r] += c * f(r, k);
            if (!(lhs == dst.multiply(img[i], img[j])))
                return "map is not multiplicative on " + src.label(i) + " * " + src.label(j);
        }
    return {};
}

/**
 * Validates an embedding B -> A (injective, unital, multiplicative) and an
 * optional retraction. An invalid embedding throws; an invalid retraction is
 * kept out of the presentation and its problem recorded.
 */
template <class S>
ExtensionPresentation<S> subalgebra_extension(AlgebraPtr<S> a, AlgebraPtr<S> b, Matrix<S> embedding,
                                              std::optional<std::type_identity_t<Matrix<S>>> retraction = std::nullopt,
                                              Provenance provenance = Provenance::generic) {
    if (!(a->field() == b->field())) throw ExtensionError("embedding: field mismatch");
    if (embedding.rows() != a->dim() || embedding.cols() != b->dim()) throw ExtensionError("embedding has the wrong shape");
    if (rank(embedding) != b->dim()) throw ExtensionError("embedding is not injective");
    if (auto p = algebra_map_problem(*b, *a, embedding); !p.empty()) throw ExtensionError("embedding: " + p);
    ExtensionPresentation<S> e;
    e.ambient = std::move(a);
    e.sub = std::move(b);
    e.embedding = std::move(embedding);
    e.provenance = provenance;
    if (retraction) {
        std::string p = algebra_map_problem(*e.ambient, *e.sub, *retraction);
        if (p.empty() && !(*retraction * e.embedding == Matrix<S>::identity(e.sub->dim())))
            p = "retraction composed with the embedding is not the identity";
        if (p.empty())
            e.retraction = std::move(retraction);
        else
            e.retraction_problem = "retraction: " + p;
    }
    return e;
}

/// Composite of a retraction check; empty when valid.
template <class S>
std::string retraction_problem(const ExtensionPresentation<S> &e, const Matrix<S> &r) {
    std::string p = algebra_map_problem(*e.ambient, *e.sub, r);
    if (p.empty() && !(r * e.embedding == Matrix<S>::identity(e.sub->dim())))
        p = "retraction composed with the embedding is not the identity";
    return p;
}

/// Embedding sending each basis element of b to the basis element of a with the same label.
template <class S>
Matrix<S> embedding_by_labels(const Algebra<S> &b, const Algebra<S> &a) {
    Matrix<S> f(a.dim(), b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        auto j = a.index_of(b.label(i));
        if (!j) throw ExtensionError("no basis element labelled " + b.label(i));
        f(*j, i) = S(1);
    }
    return f;
}

/// Retraction keeping basis elements whose labels occur in b and killing the rest.
template <class S>
Matrix<S> retraction_by_labels(const Algebra<S> &b, const Algebra<S> &a) {
    Matrix<S> r(b.dim(), a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j)
        if (auto i = b.index_of(a.label(j))) r(*i, j) = S(1);
    return r;
}

// ---------------------------------------------------------------- constructions

/**
 * R |x M with basis (basis of R, basis of M) and product
 * (r, m)(r', m') = (r r', r m' + m r').
 */
template <class S>
std::pair<AlgebraPtr<S>, ExtensionPresentation<S>> trivial_extension(const AlgebraPtr<S> &r, const Bimodule<S> &m,
                                                                      Provenance provenance = Provenance::trivial_extension) {
    if (!same_algebra(m.left_algebra(), r) || !same_algebra(m.right().algebra(), opposite(r)))
        throw ExtensionError("trivial_extension: bimodule is not over the base algebra");
    const std::size_t nr = r->dim(), dm = m.dim(), n = nr + dm;
    auto left = m.left().basis_actions();
    auto right = m.right().basis_actions();
    AlgebraData<S> d;
    d.field = r->field();
    d.labels = r->labels();
    for (std::size_t k = 0; k < dm; ++k) d.labels.push_back("m" + std::to_string(k + 1));
    d.products.resize(n * n);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nr; ++j) d.products[i * n + j] = r->product(i, j);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t k = 0; k < dm; ++k) {
            auto &lp = d.products[i * n + nr + k];
            auto &rp = d.products[(nr + k) * n + i];
            for (std::size_t t = 0; t < dm; ++t) {
                if (!is_zero(left[i](t, k))) lp.emplace_back(nr + t, left[i](t, k));
                if (!is_zero(right[i](t, k))) rp.emplace_back(nr + t, right[i](t, k));
            }
        }
    auto extend = [&](const Vector<S> &x) {
        Vector<S> v(n, S(0));
        std::copy(x.begin(), x.end(), v.begin());
        return v;
    };
    d.unit = extend(r->unit());
    for (const auto &e : r->idempotents()) d.idempotents.push_back(extend(e));
    for (const auto &h : r->radical()) d.radical.push_back(extend(h));
    for (std::size_t k = 0; k < dm; ++k) d.radical.push_back(unit_vector<S>(n, nr + k));
    auto t = Algebra<S>::create(std::move(d));
    Matrix<S> emb(n, nr), ret(nr, n);
    for (std::size_t i = 0; i < nr; ++i) {
        emb(i, i) = S(1);
        ret(i, i) = S(1);
    }
    auto ext = subalgebra_extension<S>(t, r, std::move(emb), std::move(ret), provenance);
    return {t, std::move(ext)};
}

namespace detail {

/// Projections of B x C onto its factors, as algebra maps.
template <class S>
std::pair<Matrix<S>, Matrix<S>> product_projections(std::size_t nb, std::size_t nc) {
    Matrix<S> pb(nb, nb + nc), pc(nc, nb + nc);
    for (std::size_t i = 0; i < nb; ++i) pb(i, i) = S(1);
    for (std::size_t i = 0; i < nc; ++i) pc(i, nb + i) = S(1);
    return {pb, pc};
}

}  // namespace detail

/// A C-B-bimodule viewed as a (B x C)-bimodule, acting through the factor projections.
template <class S>
Bimodule<S> inflate_corner(const AlgebraPtr<S> &bc, const AlgebraPtr<S> &left_alg, const Matrix<S> &left_proj,
                           const AlgebraPtr<S> &right_alg, const Matrix<S> &right_proj, const Bimodule<S> &m) {
    if (!same_algebra(m.left_algebra(), left_alg) || !same_algebra(m.right().algebra(), opposite(right_alg)))
        throw ExtensionError("bimodule does not match the factor algebras");
    return restrict_bimodule(m, bc, left_proj, bc, right_proj);
}

/// [[B, 0], [M, C]] for a C-B-bimodule M, realised as (B x C) |x M.
template <class S>
std::pair<AlgebraPtr<S>, ExtensionPresentation<S>> triangular_matrix_algebra(const AlgebraPtr<S> &b,
                                                                             const AlgebraPtr<S> &c,
                                                                             const Bimodule<S> &m) {
    auto bc = product_algebra(b, c);
    auto [pb, pc] = detail::product_projections<S>(b->dim(), c->dim());
    auto inflated = inflate_corner(bc, c, pc, b, pb, m);
    return trivial_extension(bc, inflated, Provenance::triangular);
}

template <class S>
Bimodule<S> direct_sum(const Bimodule<S> &x, const Bimodule<S> &y) {
    return Bimodule<S>::trusted(direct_sum(std::vector<Module<S>>{x.left(), y.left()}),
                                direct_sum(std::vector<Module<S>>{x.right(), y.right()}));
}

/**
 * Morita context ring [[B, N], [M, C]] with both pairings zero, realised as
 * (B x C) |x (M + N) for a C-B-bimodule M and a B-C-bimodule N.
 */
template <class S>
std::pair<AlgebraPtr<S>, ExtensionPresentation<S>> morita_ring_zero(const AlgebraPtr<S> &b, const AlgebraPtr<S> &c,
                                                                    const Bimodule<S> &m, const Bimodule<S> &n) {
    auto bc = product_algebra(b, c);
    auto [pb, pc] = detail::product_projections<S>(b->dim(), c->dim());
    auto im = inflate_corner(bc, c, pc, b, pb, m);
    auto in = inflate_corner(bc, b, pb, c, pc, n);
    return trivial_extension(bc, direct_sum(im, in), Provenance::morita_zero);
}

/// A_B: regular bimodule of A restricted along the embedding on the chosen sides.
template <class S>
Bimodule<S> restricted_regular(const ExtensionPresentation<S> &e, bool restrict_left, bool restrict_right) {
    auto reg = regular_bimodule(e.ambient);
    const auto id = Matrix<S>::identity(e.ambient->dim());
    return restrict_bimodule(reg, restrict_left ? e.sub : e.ambient, restrict_left ? e.embedding : id,
                             restrict_right ? e.sub : e.ambient, restrict_right ? e.embedding : id);
}

/**
 * A / B as a B-bimodule on the complement basis of quotient_space; the
 * actions are pi L_b sigma and pi R_b sigma.
 */
template <class S>
struct QuotientBimodule {
    Bimodule<S> bimodule;
    QuotientSpace<S> space;  ///< projection A -> A/B, section A/B -> A
};

template <class S>
QuotientBimodule<S> quotient_bimodule(const ExtensionPresentation<S> &e) {
    const auto &a = *e.ambient;
    auto qs = quotient_space(a.dim(), e.embedding);
    const std::size_t d = qs.complement.size();
    std::vector<Matrix<S>> left, right;
    for (const auto &g : e.sub->generators()) {
        Vector<S> x = e.embedding * g;
        if (d == 0) {
            left.emplace_back(0, 0);
            right.emplace_back(0, 0);
            continue;
        }
        left.push_back(qs.projection * a.left_multiplication(x) * qs.section);
        right.push_back(qs.projection * a.right_multiplication(x) * qs.section);
    }
    QuotientBimodule<S> q;
    q.bimodule = Bimodule<S>::create(Module<S>::trusted(e.sub, d, std::move(left)),
                                     Module<S>::trusted(opposite(e.sub), d, std::move(right)));
    q.space = std::move(qs);
    return q;
}

/**
 * For a split extension whose retraction kernel I squares to zero, the map
 * x -> (pi(x), [x - i pi(x)]) identifies A with B |x A/B. Returns the
 * verified isomorphism matrix into the trivial extension, or the problem.
 */
template <class S>
struct Identification {
    AlgebraPtr<S> trivial;
    Matrix<S> isomorphism;  ///< dim A x dim A, from A to the trivial extension
    std::string problem;
};

template <class S>
Identification<S> identify_with_trivial_extension(const ExtensionPresentation<S> &e) {
    Identification<S> out;
    if (!e.retraction) {
        out.problem = "no verified retraction";
        return out;
    }
    auto q = quotient_bimodule(e);
    auto [t, te] = trivial_extension(e.sub, q.bimodule);
    const auto &r = *e.retraction;
    const std::size_t na = e.ambient->dim(), nb = e.sub->dim();
    Matrix<S> phi(na, na);
    Matrix<S> kernel_part = Matrix<S>::identity(na) - e.embedding * r;
    Matrix<S> qpart = q.space.projection * kernel_part;
    phi.set_block(0, 0, r);
    phi.set_block(nb, 0, qpart);
    out.trivial = t;
    if (rank(phi) != na) {
        out.problem = "map is not bijective";
        return out;
    }
    if (auto p = algebra_map_problem(*e.ambient, *t, phi); !p.empty()) {
        out.problem = p;
        return out;
    }
    out.isomorphism = std::move(phi);
    return out;
}

}  // namespace qhom

#endif  // QHOM_EXTENSIONS_HPP
