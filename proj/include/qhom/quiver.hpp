#ifndef QHOM_QUIVER_HPP
#define QHOM_QUIVER_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace qhom {

class PresentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Arrow {
    std::string label;
    std::string source;
    std::string target;
};

/**
 * One term of a relation: coefficient times a path. Paths are written with
 * right-to-left composition, so `word = {"beta", "gamma"}` is gamma followed
 * by beta.
 */
template <class S>
struct PathTerm {
    S coeff;
    std::vector<std::string> word;
};

template <class S>
struct Relation {
    std::vector<PathTerm<S>> terms;
};

template <class S>
struct QuiverPresentation {
    Field field;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation<S>> relations;
    /// Every path of this length must lie in the ideal.
    std::size_t path_length_cap = 8;
};

/// Path basis element of a quiver algebra, stored in traversal order.
struct QuiverPath {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;  ///< first traversed first
};

template <class S>
class QuiverAlgebraBuilder {
public:
    explicit QuiverAlgebraBuilder(const QuiverPresentation<S> &p) : p_(p) {
        for (std::size_t v = 0; v < p_.vertices.size(); ++v) {
            if (vertex_.count(p_.vertices[v])) throw PresentationError("duplicate vertex " + p_.vertices[v]);
            vertex_[p_.vertices[v]] = v;
        }
        if (p_.vertices.empty()) throw PresentationError("quiver has no vertices");
        for (std::size_t a = 0; a < p_.arrows.size(); ++a) {
            const auto &ar = p_.arrows[a];
            if (arrow_.count(ar.label) || vertex_.count(ar.label)) throw PresentationError("duplicate label " + ar.label);
            if (!vertex_.count(ar.source) || !vertex_.count(ar.target))
                throw PresentationError("arrow " + ar.label + " uses an unknown vertex");
            arrow_[ar.label] = a;
        }
        if (p_.path_length_cap < 1) throw PresentationError("path length cap must be at least 1");
    }

    AlgebraPtr<S> build() {
        check_relations();
        enumerate_paths();
        reduce_by_ideal();
        return assemble();
    }

    /// Basis paths of the built algebra, aligned with its basis indices.
    const std::vector<QuiverPath> &basis_paths() const { return basis_; }

    std::string path_label(const QuiverPath &q) const {
        if (q.arrows.empty()) return "e" + p_.vertices[q.source];
        std::string s;
        for (std::size_t k = q.arrows.size(); k-- > 0;) {
            s += p_.arrows[q.arrows[k]].label;
            if (k) s += "*";
        }
        return s;
    }

private:
    using Traversal = std::vector<std::size_t>;

    std::size_t src(std::size_t a) const { return vertex_.at(p_.arrows[a].source); }
    std::size_t tgt(std::size_t a) const { return vertex_.at(p_.arrows[a].target); }

    struct CheckedRelation {
        std::size_t source, target, length;
        std::vector<std::pair<Traversal, S>> terms;
    };

    void check_relations() {
        for (std::size_t r = 0; r < p_.relations.size(); ++r) {
            const auto &rel = p_.relations[r];
            CheckedRelation c{};
            bool first = true;
            for (const auto &t : rel.terms) {
                if (t.word.empty()) throw PresentationError("relation " + std::to_string(r + 1) + " has an empty path");
                Traversal tr;
                for (std::size_t k = t.word.size(); k-- > 0;) {
                    auto it = arrow_.find(t.word[k]);
                    if (it == arrow_.end()) throw PresentationError("relation uses unknown arrow " + t.word[k]);
                    tr.push_back(it->second);
                }
                for (std::size_t k = 1; k < tr.size(); ++k)
                    if (src(tr[k]) != tgt(tr[k - 1]))
                        throw PresentationError("relation " + std::to_string(r + 1) + " contains a non-composable path");
                std::size_t s = src(tr.front()), e = tgt(tr.back());
                if (first) {
                    c.source = s;
                    c.target = e;
                    c.length = tr.size();
                    first = false;
                } else {
                    if (s != c.source || e != c.target)
                        throw PresentationError("relation " + std::to_string(r + 1) + " mixes non-parallel paths");
                    if (tr.size() != c.length)
                        throw PresentationError("relation " + std::to_string(r + 1) + " is not length-homogeneous");
                }
                c.terms.emplace_back(std::move(tr), t.coeff);
            }
            if (first) throw PresentationError("relation " + std::to_string(r + 1) + " is empty");
            if (c.length < 2) throw PresentationError("relation " + std::to_string(r + 1) + " has length below 2");
            relations_.push_back(std::move(c));
        }
    }

    void enumerate_paths() {
        const std::size_t cap = p_.path_length_cap;
        paths_.resize(cap + 1);
        for (std::size_t v = 0; v < p_.vertices.size(); ++v) paths_[0].push_back({v, v, {}});
        for (std::size_t a = 0; a < p_.arrows.size(); ++a) paths_[1].push_back({src(a), tgt(a), {a}});
        for (std::size_t l = 2; l <= cap; ++l)
            for (const auto &q : paths_[l - 1])
                for (std::size_t a = 0; a < p_.arrows.size(); ++a) {
                    if (src(a) != q.target) continue;
                    QuiverPath n = q;
                    n.arrows.push_back(a);
                    n.target = tgt(a);
                    paths_[l].push_back(std::move(n));
                }
        index_.resize(cap + 1);
        for (std::size_t l = 0; l <= cap; ++l)
            for (std::size_t i = 0; i < paths_[l].size(); ++i) index_[l][paths_[l][i].arrows] = i;
    }

    void reduce_by_ideal() {
        const std::size_t cap = p_.path_length_cap;
        echelons_.reserve(cap + 1);
        for (std::size_t l = 0; l <= cap; ++l) {
            SparseEchelon<S> e(paths_[l].size());
            for (const auto &rel : relations_) {
                if (rel.length > l) continue;
                const std::size_t extra = l - rel.length;
                for (std::size_t before = 0; before <= extra; ++before) {
                    const std::size_t after = extra - before;
                    // v (traversed first) ends at rel.source; u starts at rel.target
                    for (const auto &v : paths_[before]) {
                        if (v.target != rel.source) continue;
                        for (const auto &u : paths_[after]) {
                            if (u.source != rel.target) continue;
                            SparseVector<S> vec;
                            for (const auto &[tr, c] : rel.terms) {
                                Traversal full = v.arrows;
                                full.insert(full.end(), tr.begin(), tr.end());
                                full.insert(full.end(), u.arrows.begin(), u.arrows.end());
                                vec.emplace_back(index_[l].at(full), c);
                            }
                            e.insert(vec);
                        }
                    }
                }
            }
            if (l == cap && e.rank() != paths_[l].size())
                throw PresentationError("ideal is not admissible within the path length cap " + std::to_string(cap) +
                                        ": some paths of that length survive");
            echelons_.push_back(std::move(e));
        }
    }

    AlgebraPtr<S> assemble() {
        const std::size_t cap = p_.path_length_cap;
        std::vector<std::vector<long>> global(cap + 1);
        for (std::size_t l = 0; l < cap; ++l) {
            global[l].assign(paths_[l].size(), -1);
            for (std::size_t i : echelons_[l].non_pivots()) {
                global[l][i] = static_cast<long>(basis_.size());
                basis_.push_back(paths_[l][i]);
                level_.push_back(l);
            }
        }
        const std::size_t n = basis_.size();
        AlgebraData<S> d;
        d.field = p_.field;
        for (const auto &q : basis_) d.labels.push_back(path_label(q));
        d.products.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto &pi = basis_[i];
                const auto &pj = basis_[j];
                if (pi.source != pj.target) continue;
                const std::size_t l = level_[i] + level_[j];
                if (l >= cap) continue;
                if (l == 0) {
                    d.products[i * n + j].emplace_back(i, S(1));
                    continue;
                }
                Traversal full = pj.arrows;
                full.insert(full.end(), pi.arrows.begin(), pi.arrows.end());
                Vector<S> e(paths_[l].size(), S(0));
                e[index_[l].at(full)] = S(1);
                auto r = echelons_[l].reduce(e);
                for (std::size_t k = 0; k < r.size(); ++k)
                    if (!is_zero(r[k])) d.products[i * n + j].emplace_back(static_cast<std::size_t>(global[l][k]), r[k]);
            }
        d.unit.assign(n, S(0));
        for (std::size_t i = 0; i < n; ++i)
            if (level_[i] == 0) {
                d.unit[i] = S(1);
                d.idempotents.push_back(unit_vector<S>(n, i));
            } else {
                d.radical.push_back(unit_vector<S>(n, i));
                if (level_[i] == 1) d.radical_generators.push_back(unit_vector<S>(n, i));
            }
        return Algebra<S>::create(std::move(d));
    }

    const QuiverPresentation<S> &p_;
    std::map<std::string, std::size_t> vertex_, arrow_;
    std::vector<CheckedRelation> relations_;
    std::vector<std::vector<QuiverPath>> paths_;
    std::vector<std::map<Traversal, std::size_t>> index_;
    std::vector<SparseEchelon<S>> echelons_;
    std::vector<QuiverPath> basis_;
    std::vector<std::size_t> level_;
};

/// Path algebra kQ/I with basis the surviving path classes by increasing length.
template <class S>
AlgebraPtr<S> algebra_from_presentation(const QuiverPresentation<S> &p) {
    return QuiverAlgebraBuilder<S>(p).build();
}

}  // namespace qhom

#endif  // QHOM_QUIVER_HPP
