#ifndef QHOM_RANDOM_INSTANCES_HPP
#define QHOM_RANDOM_INSTANCES_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "extensions.hpp"
#include "homological.hpp"
#include "quiver.hpp"

namespace qhom {

/// Seeded source of small random choices; identical seeds give identical instances.
template <class S>
class RandomSource {
public:
    RandomSource(std::uint64_t seed, Field f) : rng_(seed), field_(f) {}

    const Field &field() const { return field_; }
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::size_t between(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
    S scalar(int lo = -2, int hi = 2) {
        return ScalarTraits<S>::make(std::uniform_int_distribution<int>(lo, hi)(rng_), field_);
    }
    S nonzero_scalar() {
        for (;;) {
            S s = scalar(-3, 3);
            if (!is_zero(s)) return s;
        }
    }
    Vector<S> vector(std::size_t n) {
        Vector<S> v(n, S(0));
        for (auto &x : v) x = scalar();
        return v;
    }

private:
    std::mt19937_64 rng_;
    Field field_;
};

/// Random bound quiver algebra with at most max_dim basis elements.
template <class S>
AlgebraPtr<S> random_algebra(RandomSource<S> &r, std::size_t max_dim, std::size_t max_vertices = 3) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        QuiverPresentation<S> p;
        p.field = r.field();
        p.path_length_cap = 5;
        const std::size_t nv = r.between(1, std::min<std::size_t>(max_vertices, max_dim));
        for (std::size_t v = 0; v < nv; ++v) p.vertices.push_back(std::to_string(v + 1));
        const std::size_t na = r.between(0, std::min<std::size_t>(4, max_dim - nv));
        for (std::size_t a = 0; a < na; ++a)
            p.arrows.push_back({"a" + std::to_string(a + 1), p.vertices[r.below(nv)], p.vertices[r.below(nv)]});
        // length-two paths, written right to left: (second, first)
        std::vector<std::pair<std::size_t, std::size_t>> twos;
        for (std::size_t x = 0; x < na; ++x)
            for (std::size_t y = 0; y < na; ++y)
                if (p.arrows[x].target == p.arrows[y].source) twos.emplace_back(y, x);
        std::vector<bool> used(twos.size(), false);
        for (std::size_t i = 0; i < twos.size(); ++i) {
            if (used[i]) continue;
            // occasionally a binomial relation between two parallel paths
            if (r.coin(0.25)) {
                for (std::size_t j = i + 1; j < twos.size(); ++j) {
                    if (used[j]) continue;
                    const auto &pi = twos[i], &pj = twos[j];
                    if (p.arrows[pi.second].source != p.arrows[pj.second].source ||
                        p.arrows[pi.first].target != p.arrows[pj.first].target)
                        continue;
                    Relation<S> rel;
                    rel.terms.push_back({ScalarTraits<S>::make(1, r.field()),
                                         {p.arrows[pi.first].label, p.arrows[pi.second].label}});
                    rel.terms.push_back({-r.nonzero_scalar(), {p.arrows[pj.first].label, p.arrows[pj.second].label}});
                    p.relations.push_back(std::move(rel));
                    used[i] = used[j] = true;
                    break;
                }
                if (used[i]) continue;
            }
            if (r.coin(0.65)) {
                Relation<S> rel;
                rel.terms.push_back({ScalarTraits<S>::make(1, r.field()),
                                     {p.arrows[twos[i].first].label, p.arrows[twos[i].second].label}});
                p.relations.push_back(std::move(rel));
                used[i] = true;
            }
        }
        try {
            auto a = algebra_from_presentation(p);
            if (a->dim() <= max_dim) return a;
        } catch (const PresentationError &) {
        }
    }
    QuiverPresentation<S> k;
    k.field = r.field();
    k.vertices = {"1"};
    return algebra_from_presentation(k);
}

/// A random finite-dimensional module: projectives, simples and their cyclic sub- and quotient modules.
template <class S>
Module<S> random_module(RandomSource<S> &r, const AlgebraPtr<S> &a, int depth = 0) {
    const std::size_t s = r.below(a->vertex_count());
    switch (r.below(depth > 0 ? 5 : 6)) {
        case 0: return projective_module(a, s);
        case 1: return simple_module(a, s);
        case 2: {  // P_s / A v
            auto p = projective_module(a, s);
            auto v = radical_subspace(p);
            if (v.dim() == 0) return p;
            Vector<S> x = v.basis() * r.vector(v.dim());
            auto sub = generated_subspace(p, {x});
            if (sub.dim() == 0) return p;
            return quotient_module(p, sub.basis()).module;
        }
        case 3: {  // A v inside P_s
            auto p = projective_module(a, s);
            Vector<S> x = r.vector(p.dim());
            auto sub = generated_subspace(p, {x});
            if (sub.dim() == 0) return simple_module(a, s);
            return submodule(p, sub);
        }
        case 4: return dual(random_module(r, opposite(a), depth + 1));
        default: return direct_sum(std::vector<Module<S>>{random_module(r, a, depth + 1), random_module(r, a, depth + 1)});
    }
}

/// Module of projective dimension at most one: cokernel of an injective map between projectives.
template <class S>
Module<S> random_pd_one_module(RandomSource<S> &r, const AlgebraPtr<S> &a) {
    ProjectiveCatalog<S> cat(a);
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<std::size_t> top;
        const std::size_t n0 = r.between(1, 2);
        for (std::size_t k = 0; k < n0; ++k) top.push_back(r.below(a->vertex_count()));
        auto p0 = cat.free_module(top);
        auto p1 = cat.module(r.below(a->vertex_count()));
        auto homs = hom_space(p1, p0.module);
        if (homs.empty()) continue;
        Matrix<S> f(p0.module.dim(), p1.dim());
        for (const auto &h : homs) f.add_scaled(h, r.scalar());
        if (rank(f) != p1.dim()) continue;
        return quotient_module(p0.module, f).module;
    }
    return cat.module(r.below(a->vertex_count()));
}

/**
 * Right and left modules over B (x) C of the form P (x) M2 and N1 (x) Q with
 * P, Q projective: by Kunneth their Tor vanishes in positive degrees, while
 * neither module needs to be projective. First: right module (over the opposite).
 */
template <class S>
std::pair<Module<S>, Module<S>> random_kunneth_pair(RandomSource<S> &r, std::size_t factor_dim = 3) {
    // semisimple factors only have projective modules; retry a few times
    auto non_semisimple = [&] {
        auto x = random_algebra(r, factor_dim);
        for (int k = 0; k < 20 && x->radical_dim() == 0; ++k) x = random_algebra(r, factor_dim);
        return x;
    };
    auto non_projective = [&](const AlgebraPtr<S> &a) {
        auto x = random_module(r, a);
        for (int k = 0; k < 20 && is_projective(x); ++k) x = random_module(r, a);
        return x;
    };
    auto b = non_semisimple();
    auto c = non_semisimple();
    auto t = tensor_algebra(b, c);
    auto p = projective_module(opposite(b), r.below(b->vertex_count()));
    auto m2 = non_projective(opposite(c));
    auto n1 = non_projective(b);
    auto q = projective_module(c, r.below(c->vertex_count()));
    return {external_tensor(opposite(t), p, m2), external_tensor(t, n1, q)};
}

/// Extensions meeting the hypotheses by construction, with pd of the quotient at most one.
template <class S>
ExtensionPresentation<S> random_passing_extension(RandomSource<S> &r, std::size_t factor_dim = 3) {
    const std::size_t kind = r.below(3);
    if (kind == 2) {
        // R |x (R e_s (x) e_t R) with e_t R e_s = 0
        auto rr = random_algebra(r, factor_dim + 1);
        const std::size_t v = rr->vertex_count();
        std::vector<std::pair<std::size_t, std::size_t>> ok;
        for (std::size_t s = 0; s < v; ++s)
            for (std::size_t t = 0; t < v; ++t)
                if (rank(rr->left_multiplication(rr->idempotent(t)) * rr->right_multiplication(rr->idempotent(s))) == 0)
                    ok.emplace_back(s, t);
        if (!ok.empty()) {
            auto [s, t] = ok[r.below(ok.size())];
            auto re = enveloping_algebra(rr);
            auto m = module_to_bimodule(projective_module(re, s * v + t));
            return trivial_extension(rr, m).second;
        }
    }
    auto b = random_algebra(r, factor_dim);
    auto c = random_algebra(r, factor_dim);
    auto t = tensor_algebra(c, opposite(b));
    auto m = module_to_bimodule(random_pd_one_module(r, t));
    if (kind == 0) return triangular_matrix_algebra(b, c, m).second;
    auto bc = product_algebra(b, c);
    auto [pb, pc] = detail::product_projections<S>(b->dim(), c->dim());
    return trivial_extension(bc, inflate_corner(bc, c, pc, b, pb, m)).second;
}

}  // namespace qhom

#endif  // QHOM_RANDOM_INSTANCES_HPP
