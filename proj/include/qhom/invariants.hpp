#ifndef QHOM_INVARIANTS_HPP
#define QHOM_INVARIANTS_HPP

#include <sstream>
#include <string>
#include <vector>

#include "homological.hpp"
#include "verdict.hpp"

namespace qhom {

namespace detail {

inline std::string join(const std::vector<std::size_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

template <class S>
std::string pd_certificate(const PdVerdict<S> &pd) {
    std::ostringstream os;
    os << "ranks=(" << join(pd.ranks) << ")";
    if (pd.kind == PdKind::infinite) os << " period=Omega^" << pd.period_from << "~Omega^" << pd.period_to;
    return os.str();
}

}  // namespace detail

template <class S>
Verdict pd_to_verdict(const PdVerdict<S> &pd) {
    switch (pd.kind) {
        case PdKind::finite:
            return Verdict::make(Status::holds, pd.cap, detail::pd_certificate(pd), static_cast<long>(pd.value));
        case PdKind::infinite:
            return Verdict::make(Status::fails, pd.cap, detail::pd_certificate(pd), infinite_value);
        default: return Verdict::make(Status::undetermined, pd.cap, detail::pd_certificate(pd));
    }
}

/// Global dimension as the largest pd of a simple; status holds = finite.
template <class S>
Verdict global_dimension(const AlgebraPtr<S> &a, std::size_t cap) {
    ProjectiveCatalog<S> cat(a);
    long best = 0;
    bool undetermined = false;
    std::ostringstream cert;
    for (std::size_t s = 0; s < a->vertex_count(); ++s) {
        auto pd = projective_dimension(simple_module(a, s), cap, cat);
        cert << (s ? "; " : "") << "S" << s + 1 << ": ";
        if (pd.kind == PdKind::infinite) {
            cert << "infinite " << detail::pd_certificate(pd);
            return Verdict::make(Status::fails, cap, cert.str(), infinite_value);
        }
        if (pd.kind == PdKind::undetermined) {
            undetermined = true;
            cert << "undetermined";
            continue;
        }
        cert << "pd " << pd.value;
        best = std::max(best, static_cast<long>(pd.value));
    }
    if (undetermined) return Verdict::make(Status::undetermined, cap, cert.str());
    return Verdict::make(Status::holds, cap, cert.str(), best);
}

/// The singularity category vanishes exactly when the global dimension is finite.
template <class S>
Verdict singularity_trivial(const AlgebraPtr<S> &a, std::size_t cap) {
    auto g = global_dimension(a, cap);
    g.certificate = "gldim " + std::string(g.holds() ? "finite" : g.fails() ? "infinite" : "undetermined") + ": " +
                    g.certificate;
    return g;
}

enum class Side { left, right };

/// Injective dimension of the regular module on one side, via pd of its dual over the opposite algebra.
template <class S>
Verdict injective_dimension_regular(const AlgebraPtr<S> &a, Side side, std::size_t cap) {
    Module<S> reg = side == Side::left ? regular_module(a) : regular_module(opposite(a));
    auto pd = projective_dimension(dual(reg), cap);
    return pd_to_verdict(pd);
}

/// The Gorenstein defect category vanishes exactly when both injective dimensions are finite.
template <class S>
Verdict gorenstein_verdict(const AlgebraPtr<S> &a, std::size_t cap) {
    auto l = injective_dimension_regular(a, Side::left, cap);
    auto r = injective_dimension_regular(a, Side::right, cap);
    std::string cert = "left injdim " + (l.value ? std::to_string(*l.value) : std::string("?")) + " [" + l.certificate +
                       "]; right injdim " + (r.value ? std::to_string(*r.value) : std::string("?")) + " [" +
                       r.certificate + "]";
    Status s;
    if (l.holds() && r.holds())
        s = Status::holds;
    else if (l.undetermined() || r.undetermined())
        s = Status::undetermined;
    else
        s = Status::fails;
    return Verdict::make(s, cap, cert);
}

/// Membership of x in the left perpendicular of A, decided up to i_max.
template <class S>
Verdict perp_membership(const Module<S> &x, std::size_t i_max) {
    auto e = ext(x, regular_module(x.algebra()), i_max);
    for (std::size_t i = 1; i <= i_max; ++i)
        if (e[i] != 0)
            return Verdict::make(Status::fails, i_max, "Ext^" + std::to_string(i) + "(X,A) has dim " + std::to_string(e[i]),
                                 static_cast<long>(i));
    return Verdict::make(Status::holds, i_max, "Ext^i(X,A)=0 for 1<=i<=" + std::to_string(i_max));
}

/// A as a left A^e-module.
template <class S>
Module<S> bimodule_regular(const AlgebraPtr<S> &a, const AlgebraPtr<S> &ae) {
    return bimodule_to_module(regular_bimodule(a), ae);
}

/**
 * A as a right A^e-module, that is a left module over (A (x) A^op)^op:
 * a . (x (x) y) = y a x.
 */
template <class S>
Module<S> bimodule_regular_right(const AlgebraPtr<S> &a, const AlgebraPtr<S> &ae) {
    const auto &alg = *a;
    const std::size_t v = alg.vertex_count();
    std::vector<Matrix<S>> gens;
    for (std::size_t s = 0; s < v; ++s)
        for (std::size_t t = 0; t < v; ++t)
            gens.push_back(alg.left_multiplication(alg.idempotent(t)) * alg.right_multiplication(alg.idempotent(s)));
    for (const auto &g : alg.radical_generators()) gens.push_back(alg.right_multiplication(g));
    for (const auto &h : alg.radical_generators()) gens.push_back(alg.left_multiplication(h));
    return Module<S>::trusted(opposite(ae), alg.dim(), std::move(gens));
}

/// dim HH_i(A) = dim Tor_i^{A^e}(A, A) for i = 0..i_max.
template <class S>
std::vector<std::size_t> hochschild_homology(const AlgebraPtr<S> &a, std::size_t i_max) {
    auto ae = enveloping_algebra(a);
    auto res = minimal_resolution(bimodule_regular(a, ae), i_max + 1);
    return tor_from_resolution(res, bimodule_regular_right(a, ae), i_max);
}

}  // namespace qhom

#endif  // QHOM_INVARIANTS_HPP
