#ifndef QHOM_HOMOLOGICAL_HPP
#define QHOM_HOMOLOGICAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "module.hpp"

namespace qhom {

// ---------------------------------------------------------------- complexes

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation outgrew the size budget; the input is valid but too expensive.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest projective term a resolution may build before it stops early.
inline std::size_t resolution_dimension_limit = 1500;

/**
 * Bounded complex of finite-dimensional spaces, homologically graded:
 * differentials[k] maps degree lowest + k to degree lowest + k - 1
 * (differentials[0] is unused and may be empty).
 */
template <class S>
struct ChainComplex {
    int lowest_degree = 0;
    std::vector<std::size_t> dims;
    std::vector<Matrix<S>> differentials;

    std::size_t dim_at(int degree) const {
        int k = degree - lowest_degree;
        return k < 0 || k >= static_cast<int>(dims.size()) ? 0 : dims[static_cast<std::size_t>(k)];
    }
    long euler_characteristic() const {
        long e = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            int deg = lowest_degree + static_cast<int>(k);
            e += (deg % 2 == 0 ? 1 : -1) * static_cast<long>(dims[k]);
        }
        return e;
    }
};

template <class S>
void check_differentials(const ChainComplex<S> &c) {
    if (c.differentials.size() != c.dims.size()) throw ComplexError("complex needs one differential slot per degree");
    for (std::size_t k = 1; k < c.dims.size(); ++k) {
        const auto &d = c.differentials[k];
        if (d.rows() != c.dims[k - 1] || d.cols() != c.dims[k]) throw ComplexError("differential has wrong shape");
    }
    for (std::size_t k = 2; k < c.dims.size(); ++k) {
        if (c.dims[k] == 0 || c.dims[k - 2] == 0) continue;
        if (!(c.differentials[k - 1] * c.differentials[k]).is_zero())
            throw ComplexError("d o d != 0 at degree " + std::to_string(c.lowest_degree + static_cast<int>(k)));
    }
}

/// Homology dimension per degree (same indexing as dims). Verifies d o d = 0.
template <class S>
std::vector<std::size_t> homology(const ChainComplex<S> &c) {
    check_differentials(c);
    std::vector<std::size_t> ranks(c.dims.size() + 1, 0);
    for (std::size_t k = 1; k < c.dims.size(); ++k)
        ranks[k] = c.dims[k] && c.dims[k - 1] ? rank(c.differentials[k]) : 0;
    std::vector<std::size_t> h(c.dims.size());
    for (std::size_t k = 0; k < c.dims.size(); ++k) h[k] = c.dims[k] - ranks[k] - ranks[k + 1];
    return h;
}

template <class S>
bool is_exact(const ChainComplex<S> &c) {
    for (auto h : homology(c))
        if (h != 0) return false;
    return true;
}

// ---------------------------------------------------------------- hom spaces

namespace detail {

/// Basis adapted to M = (+)_s e_s M, with its inverse.
template <class S>
struct AdaptedBasis {
    Matrix<S> basis;
    Matrix<S> inverse;
    std::vector<std::size_t> block_of;  ///< vertex of each adapted coordinate
};

template <class S>
AdaptedBasis<S> adapted_basis(const Module<S> &m) {
    AdaptedBasis<S> r;
    std::vector<Vector<S>> cols;
    for (std::size_t s = 0; s < m.algebra()->vertex_count(); ++s) {
        auto sub = Subspace<S>::spanned_by(m.idempotent_action(s));
        for (std::size_t j = 0; j < sub.dim(); ++j) {
            cols.push_back(sub.basis().column(j));
            r.block_of.push_back(s);
        }
    }
    r.basis = Matrix<S>::from_columns(m.dim(), cols);
    if (m.dim() == 0) {
        r.inverse = Matrix<S>(0, 0);
        return r;
    }
    auto inv = solve_linear(r.basis, Matrix<S>::identity(m.dim()));
    if (!inv) throw ModuleError("idempotents do not decompose the module");
    r.inverse = std::move(*inv);
    return r;
}

/// Dense kernel of the row space collected in an echelon basis.
template <class S>
Matrix<S> kernel_from_rows(std::size_t unknowns, const std::vector<Vector<S>> &rows) {
    if (rows.empty()) return Matrix<S>::identity(unknowns);
    return kernel_basis(Matrix<S>::from_rows(unknowns, rows));
}

}  // namespace detail

/// Basis of Hom_A(m, n), each map a (dim n) x (dim m) matrix.
template <class S>
std::vector<Matrix<S>> hom_space(const Module<S> &m, const Module<S> &n) {
    require_same_algebra(m, n, "hom_space");
    if (m.dim() == 0 || n.dim() == 0) return {};
    const auto &a = *m.algebra();
    auto bm = detail::adapted_basis(m);
    auto bn = detail::adapted_basis(n);
    // unknowns X'(r, p) with matching vertex blocks
    std::vector<std::pair<std::size_t, std::size_t>> unknown;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t r = 0; r < n.dim(); ++r)
        for (std::size_t p = 0; p < m.dim(); ++p)
            if (bn.block_of[r] == bm.block_of[p]) {
                index[{r, p}] = unknown.size();
                unknown.emplace_back(r, p);
            }
    const std::size_t u = unknown.size();
    if (u == 0) return {};
    SparseEchelon<S> eq(u);
    std::vector<Vector<S>> rows;
    for (std::size_t g = a.vertex_count(); g < a.generator_count(); ++g) {
        Matrix<S> gm = bm.inverse * m.generator_action(g) * bm.basis;
        Matrix<S> gn = bn.inverse * n.generator_action(g) * bn.basis;
        // (X' gm - gn X')(r, c) = 0
        for (std::size_t r = 0; r < n.dim(); ++r)
            for (std::size_t c = 0; c < m.dim(); ++c) {
                Vector<S> row(u, S(0));
                bool any = false;
                for (std::size_t p = 0; p < m.dim(); ++p) {
                    if (is_zero(gm(p, c))) continue;
                    auto it = index.find({r, p});
                    if (it == index.end()) continue;
                    row[it->second] += gm(p, c);
                    any = true;
                }
                for (std::size_t q = 0; q < n.dim(); ++q) {
                    if (is_zero(gn(r, q))) continue;
                    auto it = index.find({q, c});
                    if (it == index.end()) continue;
                    row[it->second] -= gn(r, q);
                    any = true;
                }
                if (any && !is_zero_vector(row) && eq.insert_dense(row)) rows.push_back(std::move(row));
            }
    }
    Matrix<S> ker = detail::kernel_from_rows(u, rows);
    std::vector<Matrix<S>> basis;
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        Matrix<S> x(n.dim(), m.dim());
        for (std::size_t v = 0; v < u; ++v)
            if (!is_zero(ker(v, k))) x(unknown[v].first, unknown[v].second) = ker(v, k);
        basis.push_back(bn.basis * x * bm.inverse);
    }
    return basis;
}

// ---------------------------------------------------------------- covers and resolutions

/// Direct sum of indecomposable projectives A e_s, with bases inside A.
template <class S>
struct FreeModule {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> offsets;
    Module<S> module;
};

template <class S>
class ProjectiveCatalog {
public:
    explicit ProjectiveCatalog(AlgebraPtr<S> a) : a_(std::move(a)) {
        for (std::size_t s = 0; s < a_->vertex_count(); ++s) {
            bases_.push_back(projective_basis(*a_, s));
            modules_.push_back(projective_module(a_, s));
            auto e = bases_.back().coordinates(a_->idempotent(s));
            generators_.push_back(std::move(e));
        }
    }
    const AlgebraPtr<S> &algebra() const { return a_; }
    const Subspace<S> &basis(std::size_t s) const { return bases_[s]; }
    const Module<S> &module(std::size_t s) const { return modules_[s]; }
    /// Coordinates of e_s in the basis of A e_s.
    const Vector<S> &generator(std::size_t s) const { return generators_[s]; }

    FreeModule<S> free_module(const std::vector<std::size_t> &vertices) const {
        FreeModule<S> f;
        f.vertices = vertices;
        std::size_t off = 0;
        std::vector<Module<S>> parts;
        for (auto s : vertices) {
            f.offsets.push_back(off);
            off += bases_[s].dim();
            parts.push_back(modules_[s]);
        }
        f.module = parts.empty() ? zero_module(a_) : direct_sum(parts);
        return f;
    }

private:
    AlgebraPtr<S> a_;
    std::vector<Subspace<S>> bases_;
    std::vector<Module<S>> modules_;
    std::vector<Vector<S>> generators_;
};

template <class S>
struct ProjectiveCover {
    FreeModule<S> projective;
    Matrix<S> epi;                       ///< m.dim() x P.dim()
    std::vector<Vector<S>> top_elements;  ///< images of the summand generators
};

/// Multiplicity of each simple in top(m) = m / rad m.
template <class S>
std::vector<std::size_t> top_multiplicities(const Module<S> &m) {
    auto rad = radical_subspace(m);
    std::vector<std::size_t> mult;
    for (std::size_t s = 0; s < m.algebra()->vertex_count(); ++s) {
        const auto &e = m.idempotent_action(s);
        std::size_t whole = rank(e);
        std::size_t in_rad = rad.dim() ? rank(e * rad.basis()) : 0;
        mult.push_back(whole - in_rad);
    }
    return mult;
}

template <class S>
ProjectiveCover<S> projective_cover(const Module<S> &m, const ProjectiveCatalog<S> &cat) {
    if (!same_algebra(m.algebra(), cat.algebra())) throw ModuleError("projective_cover: algebra mismatch");
    auto rad = radical_subspace(m);
    SparseEchelon<S> span(m.dim());
    for (std::size_t j = 0; j < rad.dim(); ++j) span.insert_dense(rad.basis().column(j));
    std::vector<std::size_t> vertices;
    std::vector<Vector<S>> tops;
    for (std::size_t s = 0; s < m.algebra()->vertex_count(); ++s) {
        const auto &e = m.idempotent_action(s);
        for (std::size_t j = 0; j < m.dim() && span.rank() < m.dim(); ++j) {
            auto c = e.column(j);
            if (is_zero_vector(c)) continue;
            if (span.insert_dense(c)) {
                vertices.push_back(s);
                tops.push_back(std::move(c));
            }
        }
    }
    ProjectiveCover<S> cover;
    cover.projective = cat.free_module(vertices);
    cover.epi = Matrix<S>(m.dim(), cover.projective.module.dim());
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        Matrix<S> block = m.orbit(tops[k]) * cat.basis(vertices[k]).basis();
        cover.epi.set_block(0, cover.projective.offsets[k], block);
    }
    cover.top_elements = std::move(tops);
    return cover;
}

template <class S>
ProjectiveCover<S> projective_cover(const Module<S> &m) {
    return projective_cover(m, ProjectiveCatalog<S>(m.algebra()));
}

/**
 * Minimal projective resolution ... -> P_1 -> P_0 -> M, computed to at most
 * cap + 1 terms (P_0 .. P_cap).
 */
template <class S>
struct Resolution {
    Module<S> resolved;
    std::vector<FreeModule<S>> terms;
    Matrix<S> augmentation;
    /// differentials[i]: P_i -> P_{i-1} (index 0 unused)
    std::vector<Matrix<S>> differentials;
    /// coefficients[i][l][k]: component in A e_{s_l} of d_i(generator k), as an element of A
    std::vector<std::vector<std::vector<Vector<S>>>> coefficients;
    /// syzygies[i] = kernel of P_i -> (previous); syzygies[i] is Omega^{i+1}(M)
    std::vector<Module<S>> syzygies;
    bool terminated = false;
    bool minimal = true;
    bool size_limited = false;  ///< stopped early at resolution_dimension_limit
    std::size_t length = 0;  ///< valid when terminated

    std::vector<std::size_t> ranks() const {
        std::vector<std::size_t> r;
        for (const auto &t : terms) r.push_back(t.module.dim());
        return r;
    }
    std::vector<std::size_t> summand_counts() const {
        std::vector<std::size_t> r;
        for (const auto &t : terms) r.push_back(t.vertices.size());
        return r;
    }
};

template <class S>
Resolution<S> minimal_resolution(const Module<S> &m, std::size_t cap, const ProjectiveCatalog<S> &cat,
                                 bool verify = true) {
    Resolution<S> res;
    res.resolved = m;
    const auto &a = *m.algebra();
    if (m.dim() == 0) {
        res.terminated = true;
        res.length = 0;
        return res;
    }
    Module<S> current = m;
    Matrix<S> embedding;  // basis of the current syzygy inside the previous term
    for (std::size_t i = 0; i <= cap; ++i) {
        auto cover = projective_cover(current, cat);
        const auto &free = cover.projective;
        if (free.module.dim() > resolution_dimension_limit) {
            res.size_limited = true;
            break;
        }
        if (i == 0) {
            res.augmentation = cover.epi;
            res.differentials.emplace_back();
            res.coefficients.emplace_back();
        } else {
            const auto &prev = res.terms.back();
            res.differentials.push_back(embedding * cover.epi);
            std::vector<std::vector<Vector<S>>> coeff(prev.vertices.size(),
                                                      std::vector<Vector<S>>(free.vertices.size()));
            for (std::size_t k = 0; k < free.vertices.size(); ++k) {
                Vector<S> image = embedding * cover.top_elements[k];
                for (std::size_t l = 0; l < prev.vertices.size(); ++l) {
                    const auto &basis = cat.basis(prev.vertices[l]);
                    Vector<S> block(basis.dim());
                    for (std::size_t t = 0; t < basis.dim(); ++t) block[t] = image[prev.offsets[l] + t];
                    coeff[l][k] = basis.basis() * block;
                    if (!a.in_radical(coeff[l][k])) res.minimal = false;
                }
            }
            res.coefficients.push_back(std::move(coeff));
        }
        res.terms.push_back(free);
        Matrix<S> ker = kernel_basis(cover.epi);
        Subspace<S> ksub(ker);
        Module<S> syz = submodule(free.module, ksub);
        res.syzygies.push_back(syz);
        embedding = ker;
        if (syz.dim() == 0) {
            res.terminated = true;
            res.length = i;
            break;
        }
        current = syz;
    }
    if (verify && !res.terms.empty()) {
        // exactness at every computed term and d o d = 0
        std::size_t prev_rank = rank(res.augmentation);
        if (prev_rank != m.dim()) throw ComplexError("augmentation is not surjective");
        for (std::size_t i = 1; i < res.terms.size(); ++i) {
            const auto &d = res.differentials[i];
            const Matrix<S> &below = i == 1 ? res.augmentation : res.differentials[i - 1];
            if (!(below * d).is_zero()) throw ComplexError("resolution: d o d != 0");
            std::size_t r = rank(d);
            if (r + prev_rank != res.terms[i - 1].module.dim()) throw ComplexError("resolution is not exact");
            prev_rank = r;
        }
        if (res.terminated && !res.terms.empty() && prev_rank != res.terms.back().module.dim())
            throw ComplexError("resolution does not end injectively");
        if (!res.minimal) throw ComplexError("resolution is not minimal");
    }
    return res;
}

template <class S>
Resolution<S> minimal_resolution(const Module<S> &m, std::size_t cap) {
    return minimal_resolution(m, cap, ProjectiveCatalog<S>(m.algebra()));
}

namespace detail {

/// Throws ResourceLimit when the resolution stopped early before term `needed`.
template <class S>
void require_complete(const Resolution<S> &res, std::size_t needed) {
    if (res.size_limited && !res.terminated && res.terms.size() <= needed)
        throw ResourceLimit("resolution term " + std::to_string(res.terms.size()) + " exceeds " +
                            std::to_string(resolution_dimension_limit) + " dimensions");
}

}  // namespace detail

/// Omega^t(m), with Omega^0(m) = m.
template <class S>
Module<S> syzygy(const Module<S> &m, std::size_t t) {
    if (t == 0) return m;
    auto res = minimal_resolution(m, t - 1);
    detail::require_complete(res, t - 1);
    if (res.syzygies.size() < t) return zero_module(m.algebra());
    return res.syzygies[t - 1];
}

/// dim A e_s for each vertex s.
template <class S>
std::vector<std::size_t> projective_dims(const Algebra<S> &a) {
    std::vector<std::size_t> d;
    for (std::size_t s = 0; s < a.vertex_count(); ++s) d.push_back(rank(a.right_multiplication(a.idempotent(s))));
    return d;
}

/// m is projective iff its projective cover, of dimension sum mu_s dim A e_s, is no larger than m.
template <class S>
bool is_projective(const Module<S> &m) {
    if (m.dim() == 0) return true;
    auto mult = top_multiplicities(m);
    auto dims = projective_dims(*m.algebra());
    std::size_t cover = 0;
    for (std::size_t s = 0; s < mult.size(); ++s) cover += mult[s] * dims[s];
    return cover == m.dim();
}

// ---------------------------------------------------------------- Tor and Ext

namespace detail {

/// The pieces x . e_s (for Tor) or e_s . x (for Ext) of a module, with orbits of their basis vectors.
template <class S>
struct VertexPieces {
    std::vector<Subspace<S>> pieces;
    std::vector<std::vector<Matrix<S>>> orbits;  // orbits[s][j] = orbit of basis vector j of piece s
};

template <class S>
VertexPieces<S> vertex_pieces(const Module<S> &x) {
    VertexPieces<S> vp;
    for (std::size_t s = 0; s < x.algebra()->vertex_count(); ++s) {
        auto sub = Subspace<S>::spanned_by(x.idempotent_action(s));
        std::vector<Matrix<S>> orb;
        for (std::size_t j = 0; j < sub.dim(); ++j) orb.push_back(x.orbit(sub.basis().column(j)));
        vp.pieces.push_back(std::move(sub));
        vp.orbits.push_back(std::move(orb));
    }
    return vp;
}

}  // namespace detail

/**
 * dim Tor_i for i = 0..i_max of P (x)_R X, where P is a resolution of a left
 * R-module and X is a left R^op-module (a right R-module).
 */
template <class S>
std::vector<std::size_t> tor_from_resolution(const Resolution<S> &res, const Module<S> &x, std::size_t i_max) {
    if (!same_algebra(x.algebra(), opposite(res.resolved.algebra())))
        throw ModuleError("tor: the second module must be over the opposite algebra");
    auto vp = detail::vertex_pieces(x);
    auto piece_dim = [&](const FreeModule<S> &f) {
        std::size_t d = 0;
        for (auto s : f.vertices) d += vp.pieces[s].dim();
        return d;
    };
    const std::size_t top = i_max + 1;
    std::vector<std::size_t> dims(top + 1, 0), ranks(top + 2, 0);
    for (std::size_t i = 0; i <= top && i < res.terms.size(); ++i) dims[i] = piece_dim(res.terms[i]);
    for (std::size_t i = 1; i <= top && i < res.terms.size(); ++i) {
        const auto &src = res.terms[i];
        const auto &dst = res.terms[i - 1];
        if (dims[i] == 0 || dims[i - 1] == 0) continue;
        Matrix<S> d(dims[i - 1], dims[i]);
        std::size_t col = 0;
        for (std::size_t k = 0; k < src.vertices.size(); ++k) {
            const std::size_t sk = src.vertices[k];
            for (std::size_t j = 0; j < vp.pieces[sk].dim(); ++j, ++col) {
                std::size_t row = 0;
                for (std::size_t l = 0; l < dst.vertices.size(); ++l) {
                    const std::size_t sl = dst.vertices[l];
                    const auto &a = res.coefficients[i][l][k];
                    if (!is_zero_vector(a)) {
                        Vector<S> y = vp.orbits[sk][j] * a;
                        auto c = vp.pieces[sl].coordinates(y);
                        for (std::size_t t = 0; t < c.size(); ++t) d(row + t, col) = c[t];
                    }
                    row += vp.pieces[sl].dim();
                }
            }
        }
        ranks[i] = rank(d);
    }
    std::vector<std::size_t> h(i_max + 1);
    for (std::size_t i = 0; i <= i_max; ++i) h[i] = dims[i] - ranks[i] - ranks[i + 1];
    return h;
}

/// Tor^A_i(m, n), m a right A-module (left A^op-module), n a left A-module; resolves m.
template <class S>
std::vector<std::size_t> tor(const Module<S> &m_right, const Module<S> &n, std::size_t i_max) {
    auto res = minimal_resolution(m_right, i_max + 1);
    detail::require_complete(res, i_max + 1);
    return tor_from_resolution(res, n, i_max);
}

/// Same groups, computed by resolving the second argument instead.
template <class S>
std::vector<std::size_t> tor_resolving_second(const Module<S> &m_right, const Module<S> &n, std::size_t i_max) {
    auto res = minimal_resolution(n, i_max + 1);
    detail::require_complete(res, i_max + 1);
    return tor_from_resolution(res, m_right, i_max);
}

/// dim Ext^i_A(m, n) for i = 0..i_max via Hom(P_i, n) = (+) e_s n.
template <class S>
std::vector<std::size_t> ext_from_resolution(const Resolution<S> &res, const Module<S> &n, std::size_t i_max) {
    if (!same_algebra(n.algebra(), res.resolved.algebra())) throw ModuleError("ext: algebra mismatch");
    auto vp = detail::vertex_pieces(n);
    const std::size_t top = i_max + 1;
    std::vector<std::size_t> dims(top + 1, 0), ranks(top + 2, 0);  // ranks[i]: C^{i-1} -> C^i
    for (std::size_t i = 0; i <= top && i < res.terms.size(); ++i)
        for (auto s : res.terms[i].vertices) dims[i] += vp.pieces[s].dim();
    for (std::size_t i = 1; i <= top && i < res.terms.size(); ++i) {
        const auto &src = res.terms[i - 1];  // Hom(P_{i-1}, n)
        const auto &dst = res.terms[i];
        if (dims[i] == 0 || dims[i - 1] == 0) continue;
        Matrix<S> d(dims[i], dims[i - 1]);
        std::size_t col = 0;
        for (std::size_t l = 0; l < src.vertices.size(); ++l) {
            const std::size_t sl = src.vertices[l];
            for (std::size_t j = 0; j < vp.pieces[sl].dim(); ++j, ++col) {
                std::size_t row = 0;
                for (std::size_t k = 0; k < dst.vertices.size(); ++k) {
                    const std::size_t sk = dst.vertices[k];
                    const auto &a = res.coefficients[i][l][k];
                    if (!is_zero_vector(a)) {
                        Vector<S> y = vp.orbits[sl][j] * a;
                        auto c = vp.pieces[sk].coordinates(y);
                        for (std::size_t t = 0; t < c.size(); ++t) d(row + t, col) = c[t];
                    }
                    row += vp.pieces[sk].dim();
                }
            }
        }
        ranks[i] = rank(d);
    }
    std::vector<std::size_t> e(i_max + 1);
    for (std::size_t i = 0; i <= i_max; ++i) e[i] = dims[i] - ranks[i] - ranks[i + 1];
    return e;
}

template <class S>
std::vector<std::size_t> ext(const Module<S> &m, const Module<S> &n, std::size_t i_max) {
    require_same_algebra(m, n, "ext");
    auto res = minimal_resolution(m, i_max + 1);
    detail::require_complete(res, i_max + 1);
    return ext_from_resolution(res, n, i_max);
}

// ---------------------------------------------------------------- isomorphism

enum class IsoStatus { yes, no, unresolved };

template <class S>
struct IsoVerdict {
    IsoStatus status = IsoStatus::unresolved;
    Matrix<S> witness;  ///< invertible intertwiner m -> n when status == yes
    std::string reason;
};

template <class S>
struct IsoSearch {
    std::uint64_t seed = 0x5eed;
    std::size_t trials = 24;
};

/**
 * Exact "yes" (verified invertible intertwiner) or "no" (an invariant
 * differs); otherwise a bounded seeded random search over combinations of
 * the hom basis, reporting unresolved on failure.
 */
template <class S>
IsoVerdict<S> is_isomorphic(const Module<S> &m, const Module<S> &n, IsoSearch<S> search = {}) {
    require_same_algebra(m, n, "is_isomorphic");
    IsoVerdict<S> v;
    auto no = [&](std::string why) {
        v.status = IsoStatus::no;
        v.reason = std::move(why);
        return v;
    };
    if (m.dim() != n.dim()) return no("dimensions differ");
    if (m.dim() == 0) {
        v.status = IsoStatus::yes;
        v.witness = Matrix<S>(0, 0);
        return v;
    }
    if (m.dimension_vector() != n.dimension_vector()) return no("dimension vectors differ");
    if (top_multiplicities(m) != top_multiplicities(n)) return no("tops differ");
    auto hmn = hom_space(m, n);
    auto hmm = hom_space(m, m);
    if (hmn.size() != hmm.size()) return no("dim Hom(m, n) != dim Hom(m, m)");
    auto hnm = hom_space(n, m);
    auto hnn = hom_space(n, n);
    if (hnm.size() != hnn.size() || hnn.size() != hmm.size()) return no("hom dimensions differ");
    if (hmn.empty()) return no("no homomorphisms");
    auto accept = [&](const Matrix<S> &x) {
        if (rank(x) == m.dim() && is_homomorphism(m, n, x)) {
            v.status = IsoStatus::yes;
            v.witness = x;
            return true;
        }
        return false;
    };
    for (const auto &h : hmn)
        if (accept(h)) return v;
    std::mt19937_64 rng(search.seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t t = 0; t < search.trials; ++t) {
        Matrix<S> x(n.dim(), m.dim());
        for (const auto &h : hmn) x.add_scaled(h, S(coef(rng)));
        if (accept(x)) return v;
    }
    v.status = IsoStatus::unresolved;
    v.reason = "random search exhausted";
    return v;
}

// ---------------------------------------------------------------- projective dimension

enum class PdKind { finite, infinite, undetermined };

template <class S>
struct PdVerdict {
    PdKind kind = PdKind::undetermined;
    std::size_t value = 0;   ///< pd when finite
    std::size_t cap = 0;
    std::vector<std::size_t> ranks;     ///< dims of P_0, P_1, ... computed
    std::vector<std::size_t> summands;  ///< number of indecomposable summands of each P_i
    /// periodicity witness Omega^i(M) ~= Omega^j(M), i < j
    std::size_t period_from = 0, period_to = 0;
    Matrix<S> witness;
};

/**
 * pd via the minimal resolution; when it does not terminate within cap,
 * compares syzygies pairwise for a periodicity witness.
 */
template <class S>
PdVerdict<S> projective_dimension(const Module<S> &m, std::size_t cap, const ProjectiveCatalog<S> &cat,
                                  IsoSearch<S> search = {}) {
    PdVerdict<S> v;
    v.cap = cap;
    auto res = minimal_resolution(m, cap, cat);
    v.ranks = res.ranks();
    v.summands = res.summand_counts();
    if (res.terminated) {
        v.kind = PdKind::finite;
        v.value = res.length;
        return v;
    }
    // Omega^0 = m, Omega^t = syzygies[t - 1]; compare for t <= cap
    std::vector<const Module<S> *> omega{&m};
    for (std::size_t t = 1; t <= cap && t - 1 < res.syzygies.size(); ++t) omega.push_back(&res.syzygies[t - 1]);
    for (std::size_t j = 1; j < omega.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (omega[i]->dim() != omega[j]->dim() || omega[i]->dim() == 0) continue;
            auto iso = is_isomorphic(*omega[i], *omega[j], search);
            if (iso.status == IsoStatus::yes) {
                v.kind = PdKind::infinite;
                v.period_from = i;
                v.period_to = j;
                v.witness = iso.witness;
                return v;
            }
        }
    v.kind = PdKind::undetermined;
    return v;
}

template <class S>
PdVerdict<S> projective_dimension(const Module<S> &m, std::size_t cap, IsoSearch<S> search = {}) {
    return projective_dimension(m, cap, ProjectiveCatalog<S>(m.algebra()), search);
}

/// Right simple modules of A, as left A^op-modules, summed: A/rad A as a right module.
template <class S>
Module<S> top_as_right_module(const AlgebraPtr<S> &a) {
    return top_of_regular(opposite(a));
}

}  // namespace qhom

#endif  // QHOM_HOMOLOGICAL_HPP
