#ifndef QHOM_TEST_FIXTURES_HPP
#define QHOM_TEST_FIXTURES_HPP

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qhom/qhom.hpp"

namespace fx {

using qhom::AlgebraPtr;
using qhom::Field;
using qhom::PrimeField;
using qhom::Rational;

/// Field plus the modulus scope F_p arithmetic needs; p is ignored for Rational.
template <class S>
struct Backend {
    Field field;
    std::unique_ptr<qhom::ModulusScope> scope;
    explicit Backend(std::uint32_t p = 2) : field{std::is_same_v<S, Rational> ? 0u : p} {
        if (field.characteristic) scope = std::make_unique<qhom::ModulusScope>(field.characteristic);
    }
};

/// Relations are monomials or binomials written "x*y" or "x*y - 2 z*w".
template <class S>
AlgebraPtr<S> quiver(const Field &f, std::vector<std::string> vertices, std::vector<qhom::Arrow> arrows,
                     std::vector<std::vector<std::pair<long long, std::string>>> relations = {}) {
    qhom::QuiverPresentation<S> p;
    p.field = f;
    p.vertices = std::move(vertices);
    p.arrows = std::move(arrows);
    for (const auto &rel : relations) {
        qhom::Relation<S> r;
        for (const auto &[c, w] : rel) {
            qhom::PathTerm<S> t;
            t.coeff = qhom::ScalarTraits<S>::make(c, f);
            std::stringstream ss(w);
            std::string part;
            while (std::getline(ss, part, '*')) t.word.push_back(part);
            r.terms.push_back(std::move(t));
        }
        p.relations.push_back(std::move(r));
    }
    return qhom::algebra_from_presentation(p);
}

/// Loop gamma at 1, beta: 1 -> 2, gamma^2 = 0.
template <class S>
AlgebraPtr<S> gamma_algebra(const Field &f) {
    return quiver<S>(f, {"1", "2"}, {{"gamma", "1", "1"}, {"beta", "1", "2"}}, {{{1, "gamma*gamma"}}});
}

/// gamma_algebra plus alpha: 2 -> 1 with alpha*beta = 0.
template <class S>
AlgebraPtr<S> lambda_algebra(const Field &f) {
    return quiver<S>(f, {"1", "2"}, {{"gamma", "1", "1"}, {"beta", "1", "2"}, {"alpha", "2", "1"}},
                     {{{1, "gamma*gamma"}}, {{1, "alpha*beta"}}});
}

/// k[x]/(x^2).
template <class S>
AlgebraPtr<S> dual_numbers(const Field &f) {
    return quiver<S>(f, {"1"}, {{"x", "1", "1"}}, {{{1, "x*x"}}});
}

/// 1 -> 2 -> 3, hereditary, optionally with the composite killed.
template <class S>
AlgebraPtr<S> a3(const Field &f, bool zero_composite = false) {
    if (zero_composite) return quiver<S>(f, {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}, {{{1, "b*a"}}});
    return quiver<S>(f, {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
}

template <class S>
AlgebraPtr<S> ground(const Field &f) {
    return quiver<S>(f, {"1"}, {});
}

/// The subalgebra extension gamma_algebra inside lambda_algebra, retraction killing alpha.
template <class S>
qhom::ExtensionPresentation<S> example_extension(const Field &f) {
    auto lam = lambda_algebra<S>(f);
    auto gam = gamma_algebra<S>(f);
    return qhom::subalgebra_extension(lam, gam, qhom::embedding_by_labels(*gam, *lam), qhom::retraction_by_labels(*gam, *lam));
}

template <class S>
S lit(long long v, const Field &f) {
    return qhom::ScalarTraits<S>::make(v, f);
}

}  // namespace fx

#endif  // QHOM_TEST_FIXTURES_HPP
