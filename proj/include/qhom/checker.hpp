#ifndef QHOM_CHECKER_HPP
#define QHOM_CHECKER_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "extensions.hpp"
#include "invariants.hpp"

namespace qhom {

struct CheckerConfig {
    std::size_t cap = 12;
    std::size_t pmax = 8;
    std::size_t hh_range = 4;
    std::uint64_t seed = 0x5eed;
    bool consequences = true;  ///< HH and gldim comparison
    bool bar_complex = true;
    bool lemma_families = true;
    bool transport = true;
};

// ---------------------------------------------------------------- hypotheses

struct Nilpotency {
    Verdict verdict;
    std::size_t index = 0;  ///< smallest p with vanishing p-th power, when found
    std::vector<std::size_t> power_dims;
};

/// Smallest p <= pmax with (A/B)^{(x)p} = 0.
template <class S>
Nilpotency check_nilpotency(const Bimodule<S> &q, std::size_t pmax, std::vector<TensorProduct<S>> *powers = nullptr) {
    Nilpotency n;
    if (q.dim() == 0) {
        n.index = 1;
        n.power_dims = {0};
        n.verdict = Verdict::make(Status::holds, pmax, "p=1 (quotient is zero)", 1);
        if (powers) *powers = tensor_powers(q, 1);
        return n;
    }
    std::vector<TensorProduct<S>> pw;
    pw.push_back(tensor_powers(q, 1).front());
    n.power_dims.push_back(q.dim());
    for (std::size_t k = 2; k <= pmax; ++k) {
        pw.push_back(tensor_over(pw.back().result, q));
        n.power_dims.push_back(pw.back().result.dim());
        if (pw.back().result.dim() == 0) {
            n.index = k;
            break;
        }
    }
    std::string dims = "power dims (" + detail::join(n.power_dims) + ")";
    if (n.index)
        n.verdict = Verdict::make(Status::holds, pmax, "p=" + std::to_string(n.index) + ", " + dims,
                                  static_cast<long>(n.index));
    else
        n.verdict = Verdict::make(Status::undetermined, pmax, "no vanishing power up to " + std::to_string(pmax) + ", " + dims);
    if (powers) *powers = std::move(pw);
    return n;
}

template <class S>
struct BimodulePd {
    PdVerdict<S> pd;
    Verdict verdict;
    std::optional<Resolution<S>> resolution;
    AlgebraPtr<S> enveloping;
};

/// pd of A/B over B^e, with the minimal resolution kept as certificate.
template <class S>
BimodulePd<S> check_bimodule_pd(const AlgebraPtr<S> &b, const Bimodule<S> &q, std::size_t cap, std::uint64_t seed) {
    BimodulePd<S> out;
    out.enveloping = enveloping_algebra(b);
    auto m = bimodule_to_module(q, out.enveloping);
    ProjectiveCatalog<S> cat(out.enveloping);
    IsoSearch<S> search;
    search.seed = seed;
    out.pd = projective_dimension(m, cap, cat, search);
    out.verdict = pd_to_verdict(out.pd);
    if (out.pd.kind == PdKind::finite) out.resolution = minimal_resolution(m, cap, cat);
    return out;
}

struct TorTable {
    std::size_t i_max = 0, j_max = 0;
    /// forward[i-1][j-1] = dim Tor_i(A/B, (A/B)^j); backward[i-1][j-1] = dim Tor_i((A/B)^j, A/B)
    std::vector<std::vector<std::size_t>> forward, backward;
    bool orientation_mismatch = false;
};

/**
 * Tor table over i in [1, max(d,1) + 2], j in [1, p + 1]: the rectangle
 * i <= d, j < p covers all degrees, the extra rows and columns must vanish.
 */
template <class S>
std::pair<Verdict, std::optional<TorTable>> check_tor_vanishing(const Bimodule<S> &q,
                                                                const std::vector<TensorProduct<S>> &powers,
                                                                const Verdict &pd, std::size_t p) {
    if (!pd.holds()) {
        std::string why = pd.fails() ? "pd over the enveloping algebra is infinite" : "pd over the enveloping algebra undetermined";
        return {Verdict::make(Status::undetermined, 0, why + "; the degree range would be incomplete"), std::nullopt};
    }
    const std::size_t d = static_cast<std::size_t>(std::max<long>(*pd.value, 1));
    TorTable t;
    t.i_max = d + 2;
    t.j_max = p + 1;
    t.forward.assign(t.i_max, std::vector<std::size_t>(t.j_max, 0));
    t.backward = t.forward;
    if (q.dim() > 0) {
        auto res_right = minimal_resolution(q.right(), t.i_max + 1);
        auto res_left = minimal_resolution(q.left(), t.i_max + 1);
        for (std::size_t j = 1; j <= t.j_max && j <= powers.size(); ++j) {
            const auto &pj = powers[j - 1].result;
            if (pj.dim() == 0) continue;
            auto f = tor_from_resolution(res_right, pj.left(), t.i_max);
            auto b = tor_from_resolution(res_left, pj.right(), t.i_max);
            for (std::size_t i = 1; i <= t.i_max; ++i) {
                t.forward[i - 1][j - 1] = f[i];
                t.backward[i - 1][j - 1] = b[i];
            }
        }
    }
    bool zero = true;
    std::ostringstream cert;
    for (std::size_t i = 0; i < t.i_max; ++i)
        for (std::size_t j = 0; j < t.j_max; ++j) {
            if ((t.forward[i][j] == 0) != (t.backward[i][j] == 0)) t.orientation_mismatch = true;
            if (t.forward[i][j] || t.backward[i][j]) {
                if (zero) cert << "nonzero cell Tor_" << i + 1 << " with power " << j + 1;
                zero = false;
            }
        }
    if (zero) cert << "all cells zero for i<=" << t.i_max << ", j<=" << t.j_max;
    if (t.orientation_mismatch) cert << "; orientations disagree (internal error)";
    Status s = zero && !t.orientation_mismatch ? Status::holds : Status::fails;
    return {Verdict::make(s, t.i_max, cert.str()), std::move(t)};
}

template <class S>
Verdict check_split(const ExtensionPresentation<S> &e) {
    if (e.retraction) return Verdict::make(Status::holds, 0, "retraction witness verified");
    if (!e.retraction_problem.empty()) return Verdict::make(Status::fails, 0, e.retraction_problem);
    return Verdict::make(Status::undetermined, 0, "no retraction witness supplied");
}

// ---------------------------------------------------------------- relative bar complex

template <class S>
struct BarComplex {
    ChainComplex<S> complex;  ///< degree -1: A; degree j: A (x)_B (A/B)^j (x)_B A
    std::vector<std::size_t> homology;
    bool exact = false;
    long euler = 0;
};

/**
 * 0 -> A (x)_B Q^{p-1} (x)_B A -> ... -> A (x)_B A -> A -> 0 with
 * d(a0 (x) q1 .. qj (x) a') = a0 q1 (x) .. + sum_i (-1)^i .. (x) q_i q_{i+1} (x) ..
 * + (-1)^j .. (x) q_j a'. Terms are evaluated on basis-tensor
 * representatives; d o d = 0 is checked when the homology is computed.
 */
template <class S>
BarComplex<S> relative_bar_complex(const ExtensionPresentation<S> &e, const QuotientBimodule<S> &q, std::size_t p) {
    const auto &alg = *e.ambient;
    const std::size_t na = alg.dim();
    auto a_ab = restricted_regular(e, false, true);
    auto a_ba = restricted_regular(e, true, false);
    const std::size_t nq = q.bimodule.dim();
    const std::size_t top = p == 0 ? 0 : p - 1;
    // U_0 = A, U_i = U_{i-1} (x)_B Q, C_j = U_j (x)_B A
    std::vector<TensorProduct<S>> u_steps(top + 1), c_steps(top + 1);
    std::vector<Bimodule<S>> u{a_ab};
    for (std::size_t i = 1; i <= top; ++i) {
        u_steps[i] = tensor_over(u.back(), q.bimodule);
        u.push_back(u_steps[i].result);
    }
    for (std::size_t j = 0; j <= top; ++j) c_steps[j] = tensor_over(u[j], a_ba);

    auto single_index = [](const Matrix<S> &section, std::size_t col) {
        for (std::size_t r = 0; r < section.rows(); ++r)
            if (!is_zero(section(r, col))) return r;
        throw ComplexError("bar complex: empty representative");
    };
    // basis tensor (a0, q1..qj, a') representing class c of C_j
    auto expand = [&](std::size_t j, std::size_t c) {
        std::vector<std::size_t> idx(j + 2);
        std::size_t r = single_index(c_steps[j].section, c);
        idx[j + 1] = r % na;
        std::size_t cls = r / na;
        for (std::size_t i = j; i >= 1; --i) {
            std::size_t s = single_index(u_steps[i].section, cls);
            idx[i] = s % nq;
            cls = s / nq;
        }
        idx[0] = cls;
        return idx;
    };
    auto lift = [&](std::size_t k) { return q.space.section.column(k); };
    // class of v0 (x) slots (x) last in C_{j}
    auto project = [&](std::size_t j, const Vector<S> &v0, const std::vector<Vector<S>> &slots, const Vector<S> &last) {
        Vector<S> cur = v0;
        for (std::size_t i = 1; i <= j; ++i) cur = u_steps[i].pure(cur, slots[i - 1]);
        return c_steps[j].pure(cur, last);
    };

    BarComplex<S> bar;
    auto &cx = bar.complex;
    cx.lowest_degree = -1;
    cx.dims.push_back(na);
    cx.differentials.emplace_back();
    for (std::size_t j = 0; j <= top; ++j) cx.dims.push_back(c_steps[j].result.dim());
    // augmentation: a0 (x) a' -> a0 a'
    {
        Matrix<S> aug(na, cx.dims[1]);
        for (std::size_t c = 0; c < cx.dims[1]; ++c) {
            auto idx = expand(0, c);
            auto prod = alg.multiply(alg.basis_vector(idx[0]), alg.basis_vector(idx[1]));
            for (std::size_t r = 0; r < na; ++r) aug(r, c) = prod[r];
        }
        cx.differentials.push_back(std::move(aug));
    }
    for (std::size_t j = 1; j <= top; ++j) {
        Matrix<S> d(cx.dims[j], cx.dims[j + 1]);
        for (std::size_t c = 0; c < cx.dims[j + 1]; ++c) {
            auto idx = expand(j, c);
            const Vector<S> a0 = alg.basis_vector(idx[0]);
            const Vector<S> a1 = alg.basis_vector(idx[j + 1]);
            std::vector<Vector<S>> qs;
            for (std::size_t i = 1; i <= j; ++i) qs.push_back(unit_vector<S>(nq, idx[i]));
            Vector<S> total(cx.dims[j], S(0));
            auto accumulate = [&](const Vector<S> &v, bool negative) {
                for (std::size_t r = 0; r < v.size(); ++r)
                    if (!is_zero(v[r])) total[r] += negative ? -v[r] : v[r];
            };
            // a0 q1
            {
                std::vector<Vector<S>> slots(qs.begin() + 1, qs.end());
                accumulate(project(j - 1, alg.multiply(a0, lift(idx[1])), slots, a1), false);
            }
            for (std::size_t i = 1; i < j; ++i) {
                std::vector<Vector<S>> slots;
                for (std::size_t k = 1; k <= j; ++k) {
                    if (k == i) {
                        slots.push_back(q.space.projection * alg.multiply(lift(idx[i]), lift(idx[i + 1])));
                        ++k;
                        continue;
                    }
                    slots.push_back(qs[k - 1]);
                }
                accumulate(project(j - 1, a0, slots, a1), i % 2 == 1);
            }
            {
                std::vector<Vector<S>> slots(qs.begin(), qs.end() - 1);
                accumulate(project(j - 1, a0, slots, alg.multiply(lift(idx[j]), a1)), j % 2 == 1);
            }
            for (std::size_t r = 0; r < total.size(); ++r) d(r, c) = total[r];
        }
        cx.differentials.push_back(std::move(d));
    }
    bar.homology = homology(cx);
    bar.exact = std::all_of(bar.homology.begin(), bar.homology.end(), [](std::size_t h) { return h == 0; });
    bar.euler = cx.euler_characteristic();
    return bar;
}

// ---------------------------------------------------------------- consequences

/// Tor_i(m, n) for i in [1, i_max] vanishes and Tor_0 equals the coequalizer dimension.
template <class S>
struct Concentration {
    std::vector<std::size_t> tor;
    std::size_t coequalizer = 0;
    bool vanishing = false;
    bool concentrated = false;
};

template <class S>
Concentration<S> concentration_check(const Module<S> &m_right, const Module<S> &n, std::size_t i_max) {
    Concentration<S> c;
    c.tor = tor(m_right, n, i_max);
    c.coequalizer = tensor_dimension(m_right, n);
    c.vanishing = std::all_of(c.tor.begin() + 1, c.tor.end(), [](std::size_t x) { return x == 0; });
    c.concentrated = c.vanishing && c.tor[0] == c.coequalizer;
    return c;
}

struct LemmaFamilies {
    std::size_t i_max = 0, j_max = 0;
    std::vector<std::size_t> family1;               ///< Tor_i(A, A), i = 1..i_max
    std::vector<std::vector<std::size_t>> family2;  ///< [j-1][i-1]: Tor_i(Q^j, A)
    std::vector<std::vector<std::size_t>> family3;  ///< [j-1][i-1]: Tor_i(A, Q^j (x) A)
    bool all_zero = true;
};

/// The three Tor families over B that must vanish once the hypotheses hold.
template <class S>
LemmaFamilies lemma_families(const ExtensionPresentation<S> &e, const std::vector<TensorProduct<S>> &powers,
                             std::size_t p, std::size_t i_max) {
    LemmaFamilies f;
    f.i_max = i_max;
    f.j_max = p > 0 ? p - 1 : 0;
    auto a_ab = restricted_regular(e, false, true);
    auto a_ba = restricted_regular(e, true, false);
    auto res_right = minimal_resolution(a_ab.right(), i_max + 1);  // A as a right B-module
    auto res_left = minimal_resolution(a_ba.left(), i_max + 1);    // A as a left B-module
    auto t1 = tor_from_resolution(res_right, a_ba.left(), i_max);
    f.family1.assign(t1.begin() + 1, t1.end());
    for (std::size_t j = 1; j <= f.j_max && j <= powers.size(); ++j) {
        const auto &pj = powers[j - 1].result;
        std::vector<std::size_t> r2(i_max, 0), r3(i_max, 0);
        if (pj.dim() > 0) {
            auto t2 = tor_from_resolution(res_left, pj.right(), i_max);
            auto qa = tensor_over(pj, a_ba).result;
            auto t3 = tor_from_resolution(res_right, qa.left(), i_max);
            std::copy(t2.begin() + 1, t2.end(), r2.begin());
            std::copy(t3.begin() + 1, t3.end(), r3.begin());
        }
        f.family2.push_back(std::move(r2));
        f.family3.push_back(std::move(r3));
    }
    auto nz = [](const std::vector<std::size_t> &v) { return std::any_of(v.begin(), v.end(), [](std::size_t x) { return x; }); };
    f.all_zero = !nz(f.family1);
    for (const auto &r : f.family2) f.all_zero = f.all_zero && !nz(r);
    for (const auto &r : f.family3) f.all_zero = f.all_zero && !nz(r);
    return f;
}

struct TransportReport {
    std::size_t checked = 0;
    std::vector<bool> ambient_projective;   ///< A (x)_B P (x)_B A over A^e, per indecomposable P
    std::vector<bool> resolution_projective;  ///< P_i (x)_B (B (x) B) over B^e, per resolution term
    bool all = true;
};

/// Projectivity transport for the indecomposable projective B-bimodules and the resolution of A/B.
template <class S>
TransportReport projectivity_transport_check(const ExtensionPresentation<S> &e, const BimodulePd<S> &pd,
                                             std::size_t sample_count = static_cast<std::size_t>(-1)) {
    TransportReport t;
    const auto &be = pd.enveloping;
    auto ae = enveloping_algebra(e.ambient);
    auto a_ab = restricted_regular(e, false, true);
    auto a_ba = restricted_regular(e, true, false);
    ProjectiveCatalog<S> cat_b(be);
    for (std::size_t s = 0; s < be->vertex_count() && t.checked < sample_count; ++s, ++t.checked) {
        auto pb = module_to_bimodule(cat_b.module(s));
        auto left = tensor_over(a_ab, pb).result;
        auto x = tensor_over(left, a_ba).result;
        bool ok = is_projective(bimodule_to_module(x, ae));
        t.ambient_projective.push_back(ok);
        t.all = t.all && ok;
    }
    if (pd.resolution) {
        auto bkb = module_to_bimodule(regular_module(be));
        for (const auto &term : pd.resolution->terms) {
            if (t.checked >= sample_count) break;
            ++t.checked;
            auto x = tensor_over(module_to_bimodule(term.module), bkb).result;
            bool ok = is_projective(bimodule_to_module(x, be));
            t.resolution_projective.push_back(ok);
            t.all = t.all && ok;
        }
    }
    return t;
}

struct ConsequenceReport {
    std::vector<std::size_t> hh_ambient, hh_sub;  ///< i = 0..hh_range
    Verdict gldim_ambient, gldim_sub;
    bool hh_agree = true;
    bool gldim_agree = true;
    Verdict verdict;
};

/// HH_i equality for i >= 1 and agreement of global-dimension finiteness.
template <class S>
ConsequenceReport consequence_crosscheck(const ExtensionPresentation<S> &e, std::size_t hh_range, std::size_t cap) {
    ConsequenceReport c;
    c.hh_ambient = hochschild_homology(e.ambient, hh_range);
    c.hh_sub = hochschild_homology(e.sub, hh_range);
    for (std::size_t i = 1; i <= hh_range; ++i) c.hh_agree = c.hh_agree && c.hh_ambient[i] == c.hh_sub[i];
    c.gldim_ambient = global_dimension(e.ambient, cap);
    c.gldim_sub = global_dimension(e.sub, cap);
    if (!c.gldim_ambient.undetermined() && !c.gldim_sub.undetermined())
        c.gldim_agree = c.gldim_ambient.status == c.gldim_sub.status;
    std::string cert = "HH(A)=(" + detail::join(c.hh_ambient) + ") HH(B)=(" + detail::join(c.hh_sub) + ")";
    if (c.hh_agree && c.gldim_agree)
        c.verdict = Verdict::make(Status::holds, hh_range, cert);
    else
        c.verdict = Verdict::make(Status::fails, hh_range, "CONTRADICTION: " + cert);
    return c;
}

// ---------------------------------------------------------------- full report

template <class S>
struct HypothesisReport {
    std::size_t ambient_dim = 0, sub_dim = 0, quotient_dim = 0;
    Provenance provenance = Provenance::generic;
    BimodulePd<S> pd;
    Nilpotency nilpotency;
    Verdict tor_verdict;
    std::optional<TorTable> tor_table;
    Verdict split;
    Verdict sing_equiv, defect_equiv;
    std::optional<ConsequenceReport> consequences;
    std::optional<BarComplex<S>> bar;
    std::optional<LemmaFamilies> families;
    std::optional<TransportReport> transport;

    /// 0 both conclusions hold, 1 a hypothesis fails, 2 undetermined at the bounds.
    int exit_code() const {
        for (const auto *v : {&pd.verdict, &nilpotency.verdict, &tor_verdict, &split})
            if (v->fails()) return 1;
        if (sing_equiv.holds() && defect_equiv.holds()) return 0;
        return 2;
    }
};

template <class S>
HypothesisReport<S> theorem_verdict(const ExtensionPresentation<S> &e, const CheckerConfig &cfg = {}) {
    HypothesisReport<S> r;
    r.ambient_dim = e.ambient->dim();
    r.sub_dim = e.sub->dim();
    r.provenance = e.provenance;
    auto q = quotient_bimodule(e);
    r.quotient_dim = q.bimodule.dim();
    r.pd = check_bimodule_pd(e.sub, q.bimodule, cfg.cap, cfg.seed);
    std::vector<TensorProduct<S>> powers;
    r.nilpotency = check_nilpotency(q.bimodule, cfg.pmax, &powers);
    if (r.nilpotency.verdict.holds()) {
        auto [tv, table] = check_tor_vanishing(q.bimodule, powers, r.pd.verdict, r.nilpotency.index);
        r.tor_verdict = std::move(tv);
        r.tor_table = std::move(table);
    } else {
        r.tor_verdict = Verdict::make(Status::undetermined, cfg.pmax, "nilpotency index unknown; range incomplete");
    }
    r.split = check_split(e);
    auto pd_status = r.pd.verdict.status;
    Status sing = conjunction(conjunction(pd_status, r.nilpotency.verdict.status), r.tor_verdict.status);
    r.sing_equiv = Verdict::make(sing, cfg.cap,
                                 sing == Status::holds ? "pd finite, nilpotent quotient, Tor vanishing"
                                                       : "hypotheses not all established");
    Status def = conjunction(sing, r.split.status);
    r.defect_equiv = Verdict::make(def, cfg.cap,
                                   def == Status::holds ? "singular equivalence and split extension"
                                                        : "requires the singular equivalence hypotheses and a split witness");
    if (sing == Status::holds) {
        if (cfg.bar_complex) r.bar = relative_bar_complex(e, q, r.nilpotency.index);
        if (cfg.lemma_families)
            r.families = lemma_families(e, powers, r.nilpotency.index, cfg.cap);
        if (cfg.transport) r.transport = projectivity_transport_check(e, r.pd);
        if (cfg.consequences) r.consequences = consequence_crosscheck(e, cfg.hh_range, cfg.cap);
    }
    return r;
}

}  // namespace qhom

#endif  // QHOM_CHECKER_HPP
