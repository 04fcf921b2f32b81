#ifndef QHOM_DOCUMENT_HPP
#define QHOM_DOCUMENT_HPP

#include <cstdint>
#include <map>
#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "extensions.hpp"
#include "quiver.hpp"

namespace qhom {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct CheckBlock {
    enum class Kind { extension, invariants } kind = Kind::extension;
    std::string target;
    std::size_t line = 0;
    std::map<std::string, std::size_t> bounds;              ///< cap, pmax, hh, bound
    std::vector<std::vector<std::string>> items;            ///< e.g. {"gldim"}, {"perp", "M"}
};

template <class S>
struct Document {
    Field field;
    std::map<std::string, AlgebraPtr<S>> algebras;
    std::vector<std::string> algebra_order;
    std::map<std::string, Module<S>> modules;
    std::vector<std::string> module_order;
    std::map<std::string, Bimodule<S>> bimodules;
    std::vector<std::string> bimodule_order;
    std::map<std::string, ExtensionPresentation<S>> extensions;
    std::vector<std::string> extension_order;
    std::vector<CheckBlock> checks;
};

/// FNV-1a 64-bit digest.
inline std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 14695981039346656037ull) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

struct Token {
    std::string text;
    std::size_t column;  ///< 1-based
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(const std::string &text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        Line l{n, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            if (i >= raw.size()) break;
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            l.tokens.push_back({raw.substr(start, i - start), start + 1});
        }
        if (!l.tokens.empty()) lines.push_back(std::move(l));
    }
    return lines;
}

inline bool looks_numeric(const std::string &t) {
    if (t.empty()) return false;
    std::size_t i = t[0] == '-' ? 1 : 0;
    if (i >= t.size()) return false;
    bool slash = false;
    for (; i < t.size(); ++i) {
        if (t[i] == '/' && !slash) {
            slash = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return t.back() != '/';
}

}  // namespace detail

/// Reads the field block, which must come first.
inline Field detect_field(const std::string &text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "no field block");
    const auto &l = lines.front();
    if (l.tokens[0].text != "field") throw ParseError(l.number, l.tokens[0].column, "no field block (expected 'field q' or 'field p N' first)");
    if (l.tokens.size() == 2 && l.tokens[1].text == "q") return Field{0};
    if (l.tokens.size() == 3 && l.tokens[1].text == "p") {
        const auto &t = l.tokens[2];
        std::uint64_t p = 0;
        for (char c : t.text) {
            if (!std::isdigit(static_cast<unsigned char>(c)) || p > (1ull << 32))
                throw ParseError(l.number, t.column, "expected a prime characteristic");
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
        }
        if (p >= (1ull << 31) || !detail::is_prime(static_cast<std::uint32_t>(p)))
            throw ParseError(l.number, t.column, "characteristic must be a prime below 2^31");
        return Field{static_cast<std::uint32_t>(p)};
    }
    throw ParseError(l.number, l.tokens[0].column, "expected 'field q' or 'field p N'");
}

/// Label of an algebra generator: its basis label when it is a basis vector.
template <class S>
std::string generator_label(const Algebra<S> &a, std::size_t g) {
    const auto &v = a.generators()[g];
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_zero(v[i])) continue;
        if (hit || !(v[i] == S(1))) return "g" + std::to_string(g + 1);
        hit = i;
    }
    return hit ? a.label(*hit) : "g" + std::to_string(g + 1);
}

/// Vertex named by "e<name>", by the idempotent's label, or by 1-based position.
template <class S>
std::optional<std::size_t> vertex_index(const Algebra<S> &a, const std::string &name) {
    for (std::size_t s = 0; s < a.vertex_count(); ++s) {
        auto l = generator_label(a, s);
        if (l == name || l == "e" + name) return s;
    }
    if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        std::size_t k = std::stoul(name);
        if (k >= 1 && k <= a.vertex_count()) return k - 1;
    }
    return std::nullopt;
}

template <class S>
class DocumentParser {
public:
    DocumentParser(const std::string &text, std::optional<Field> override_field = std::nullopt)
        : lines_(detail::tokenize(text)) {
        doc_.field = override_field ? *override_field : detect_field(text);
        if constexpr (std::is_same_v<S, Rational>) {
            if (doc_.field.characteristic != 0) throw ParseError(1, 1, "document field is not q for the rational backend");
        }
    }

    Document<S> parse() {
        pos_ = 1;  // the field line was read by detect_field
        if (lines_.empty() || lines_[0].tokens[0].text != "field") throw ParseError(1, 1, "no field block");
        while (pos_ < lines_.size()) {
            const auto &l = lines_[pos_];
            const std::string &kw = l.tokens[0].text;
            if (kw == "quiver") parse_quiver();
            else if (kw == "algebra") parse_algebra();
            else if (kw == "module") parse_module();
            else if (kw == "bimodule") parse_bimodule();
            else if (kw == "construct") parse_construct();
            else if (kw == "check") parse_check();
            else if (kw == "field") fail(l, 0, "field block may appear only once, first");
            else fail(l, 0, "unknown block '" + kw + "' (expected quiver, algebra, module, bimodule, construct or check)");
        }
        return std::move(doc_);
    }

private:
    using Line = detail::Line;

    [[noreturn]] void fail(const Line &l, std::size_t tok, const std::string &msg) const {
        std::size_t col = tok < l.tokens.size() ? l.tokens[tok].column
                                                : (l.tokens.empty() ? 1 : l.tokens.back().column + l.tokens.back().text.size());
        throw ParseError(l.number, col, msg);
    }

    void expect_count(const Line &l, std::size_t n, const std::string &form) const {
        if (l.tokens.size() != n) fail(l, std::min(n, l.tokens.size()), "expected '" + form + "'");
    }

    const Line &next_in_block(const std::string &block) {
        if (pos_ >= lines_.size()) {
            fail(lines_.back(), lines_.back().tokens.size(), "unterminated " + block + " block (expected 'end')");
        }
        return lines_[pos_++];
    }

    void define_name(const Line &l, std::size_t tok, const std::string &name) {
        if (names_.count(name)) fail(l, tok, "name '" + name + "' is already defined");
        names_.insert(name);
    }

    AlgebraPtr<S> algebra(const Line &l, std::size_t tok) {
        if (tok >= l.tokens.size()) fail(l, tok, "expected an algebra name");
        auto it = doc_.algebras.find(l.tokens[tok].text);
        if (it == doc_.algebras.end()) fail(l, tok, "undefined algebra '" + l.tokens[tok].text + "'");
        return it->second;
    }
    const Bimodule<S> &bimodule(const Line &l, std::size_t tok) {
        if (tok >= l.tokens.size()) fail(l, tok, "expected a bimodule name");
        auto it = doc_.bimodules.find(l.tokens[tok].text);
        if (it == doc_.bimodules.end()) fail(l, tok, "undefined bimodule '" + l.tokens[tok].text + "'");
        return it->second;
    }

    S scalar(const Line &l, std::size_t tok) {
        auto v = ScalarTraits<S>::parse(l.tokens[tok].text, doc_.field);
        if (!v) fail(l, tok, "malformed scalar '" + l.tokens[tok].text + "' (expected an integer or a/b)");
        return *v;
    }

    std::size_t count(const Line &l, std::size_t tok) {
        if (tok >= l.tokens.size()) fail(l, tok, "expected a count");
        const auto &t = l.tokens[tok].text;
        if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail(l, tok, "expected a non-negative count");
        return std::stoul(t);
    }

    /// [sign] [coeff] label { (+|-) [coeff] label }, or a single 0.
    std::vector<std::pair<S, std::string>> combination(const Line &l, std::size_t from) {
        std::vector<std::pair<S, std::string>> out;
        if (from >= l.tokens.size()) fail(l, from, "expected a linear combination");
        if (from + 1 == l.tokens.size() && l.tokens[from].text == "0") return out;
        std::size_t i = from;
        bool first = true;
        while (i < l.tokens.size()) {
            S sign = ScalarTraits<S>::make(1, doc_.field);
            const auto &t = l.tokens[i].text;
            if (t == "+" || t == "-") {
                if (t == "-") sign = -sign;
                ++i;
            } else if (!first) {
                fail(l, i, "expected '+' or '-'");
            }
            if (i >= l.tokens.size()) fail(l, i, "expected a term");
            S coeff = ScalarTraits<S>::make(1, doc_.field);
            if (detail::looks_numeric(l.tokens[i].text)) {
                coeff = scalar(l, i);
                ++i;
                if (i >= l.tokens.size() || l.tokens[i].text == "+" || l.tokens[i].text == "-")
                    fail(l, i, "expected a label after the coefficient");
            }
            out.emplace_back(sign * coeff, l.tokens[i].text);
            ++i;
            first = false;
        }
        return out;
    }

    Vector<S> element(const Algebra<S> &a, const Line &l, std::size_t from) {
        Vector<S> v(a.dim(), S(0));
        std::size_t tok = from;
        for (auto &[c, label] : combination(l, from)) {
            auto idx = a.index_of(label);
            if (!idx) {
                // locate the offending token for the diagnostic
                for (std::size_t k = from; k < l.tokens.size(); ++k)
                    if (l.tokens[k].text == label) tok = k;
                fail(l, tok, "unknown basis label '" + label + "'");
            }
            v[*idx] += c;
        }
        return v;
    }

    void parse_quiver() {
        const Line &head = lines_[pos_++];
        expect_count(head, 2, "quiver NAME");
        const std::string name = head.tokens[1].text;
        define_name(head, 1, name);
        QuiverPresentation<S> p;
        p.field = doc_.field;
        for (;;) {
            const Line &l = next_in_block("quiver");
            const auto &kw = l.tokens[0].text;
            if (kw == "end") break;
            if (kw == "vertices") {
                for (std::size_t k = 1; k < l.tokens.size(); ++k) p.vertices.push_back(l.tokens[k].text);
            } else if (kw == "arrow") {
                expect_count(l, 4, "arrow LABEL SOURCE TARGET");
                for (std::size_t k : {2u, 3u})
                    if (std::find(p.vertices.begin(), p.vertices.end(), l.tokens[k].text) == p.vertices.end())
                        fail(l, k, "unknown vertex '" + l.tokens[k].text + "'");
                p.arrows.push_back({l.tokens[1].text, l.tokens[2].text, l.tokens[3].text});
            } else if (kw == "relation" || kw == "relations") {
                // 'relations' takes a comma separated list, 'relation' a single one
                std::vector<Line> parts;
                if (kw == "relation") {
                    parts.push_back(l);
                } else {
                    Line cur{l.number, {l.tokens[0]}};
                    for (std::size_t k = 1; k < l.tokens.size(); ++k) {
                        std::string t = l.tokens[k].text;
                        bool close = !t.empty() && t.back() == ',';
                        if (close) t.pop_back();
                        if (!t.empty()) cur.tokens.push_back({t, l.tokens[k].column});
                        if (close) {
                            parts.push_back(cur);
                            cur = Line{l.number, {l.tokens[0]}};
                        }
                    }
                    if (cur.tokens.size() > 1) parts.push_back(cur);
                    if (parts.empty()) fail(l, 1, "expected relations");
                }
                for (const auto &part : parts) {
                    Relation<S> r;
                    for (auto &[c, word] : combination(part, 1)) {
                        PathTerm<S> t;
                        t.coeff = c;
                        std::size_t start = 0;
                        for (;;) {
                            auto star = word.find('*', start);
                            t.word.push_back(word.substr(start, star == std::string::npos ? std::string::npos : star - start));
                            if (star == std::string::npos) break;
                            start = star + 1;
                        }
                        r.terms.push_back(std::move(t));
                    }
                    if (r.terms.empty()) fail(part, 1, "relation must not be 0");
                    p.relations.push_back(std::move(r));
                }
            } else if (kw == "cap") {
                expect_count(l, 2, "cap N");
                p.path_length_cap = count(l, 1);
            } else {
                fail(l, 0, "expected vertices, arrow, relation, relations, cap or end");
            }
        }
        try {
            auto a = algebra_from_presentation(p);
            add_algebra(name, a);
        } catch (const PresentationError &e) {
            throw ParseError(head.number, head.tokens[0].column, "quiver " + name + ": " + e.what());
        } catch (const AlgebraError &e) {
            throw ParseError(head.number, head.tokens[0].column, "quiver " + name + ": " + e.what());
        }
    }

    void add_algebra(const std::string &name, AlgebraPtr<S> a) {
        doc_.algebras[name] = std::move(a);
        doc_.algebra_order.push_back(name);
    }

    void parse_algebra() {
        const Line &head = lines_[pos_++];
        expect_count(head, 2, "algebra NAME");
        const std::string name = head.tokens[1].text;
        define_name(head, 1, name);
        AlgebraData<S> d;
        d.field = doc_.field;
        struct Pending {
            const Line *line;
            std::string kind;
        };
        std::vector<Pending> pending;
        for (;;) {
            const Line &l = next_in_block("algebra");
            const auto &kw = l.tokens[0].text;
            if (kw == "end") break;
            if (kw == "basis") {
                if (!d.labels.empty()) fail(l, 0, "basis given twice");
                for (std::size_t k = 1; k < l.tokens.size(); ++k) d.labels.push_back(l.tokens[k].text);
                if (d.labels.empty()) fail(l, 1, "expected basis labels");
            } else if (kw == "product" || kw == "unit" || kw == "idempotent" || kw == "radical" || kw == "generator") {
                if (d.labels.empty()) fail(l, 0, "basis must come first");
                pending.push_back({&l, kw});
            } else {
                fail(l, 0, "expected basis, product, unit, idempotent, radical, generator or end");
            }
        }
        if (d.labels.empty()) fail(head, 0, "algebra block has no basis");
        const std::size_t n = d.labels.size();
        auto index = [&](const Line &l, std::size_t tok) {
            for (std::size_t i = 0; i < n; ++i)
                if (d.labels[i] == l.tokens[tok].text) return i;
            fail(l, tok, "unknown basis label '" + l.tokens[tok].text + "'");
        };
        auto vec = [&](const Line &l, std::size_t from) {
            Vector<S> v(n, S(0));
            for (auto &[c, label] : combination(l, from)) {
                bool found = false;
                for (std::size_t i = 0; i < n; ++i)
                    if (d.labels[i] == label) {
                        v[i] += c;
                        found = true;
                    }
                if (!found) fail(l, from, "unknown basis label '" + label + "'");
            }
            return v;
        };
        d.products.assign(n * n, {});
        d.unit.assign(n, S(0));
        for (const auto &p : pending) {
            const Line &l = *p.line;
            if (p.kind == "product") {
                // product X Y = combination
                if (l.tokens.size() < 5 || l.tokens[3].text != "=") fail(l, 3, "expected 'product X Y = combination'");
                std::size_t i = index(l, 1), j = index(l, 2);
                auto v = vec(l, 4);
                for (std::size_t k = 0; k < n; ++k)
                    if (!is_zero(v[k])) d.products[i * n + j].emplace_back(k, v[k]);
            } else if (p.kind == "unit") {
                if (l.tokens.size() < 3 || l.tokens[1].text != "=") fail(l, 1, "expected 'unit = combination'");
                d.unit = vec(l, 2);
            } else if (p.kind == "idempotent") {
                d.idempotents.push_back(vec(l, 1));
            } else if (p.kind == "radical") {
                d.radical.push_back(vec(l, 1));
            } else {
                d.radical_generators.push_back(vec(l, 1));
            }
        }
        try {
            add_algebra(name, Algebra<S>::create(std::move(d)));
        } catch (const AlgebraError &e) {
            throw ParseError(head.number, head.tokens[0].column, "algebra " + name + ": " + e.what());
        }
    }

    /// Reads `dim` then action blocks keyed by generator label; missing actions are zero.
    std::vector<Matrix<S>> actions(const Algebra<S> &a, const std::vector<std::pair<std::string, std::vector<const Line *>>> &blocks,
                                   std::size_t dim, const Line &head) {
        std::vector<Matrix<S>> gens(a.generator_count(), Matrix<S>(dim, dim));
        std::vector<bool> seen(a.generator_count(), false);
        for (const auto &[label, rows] : blocks) {
            std::optional<std::size_t> g;
            for (std::size_t k = 0; k < a.generator_count(); ++k)
                if (generator_label(a, k) == label) g = k;
            if (!g) fail(*rows.front(), 1, "'" + label + "' is not a generator of the algebra");
            if (seen[*g]) fail(*rows.front(), 1, "action of '" + label + "' given twice");
            seen[*g] = true;
            for (std::size_t r = 0; r < dim; ++r) {
                const Line &row = *rows[r + 1];
                if (row.tokens.size() != dim) fail(row, std::min(row.tokens.size(), dim), "expected a row of " + std::to_string(dim) + " scalars");
                for (std::size_t c = 0; c < dim; ++c) gens[*g](r, c) = scalar(row, c);
            }
        }
        (void)head;
        return gens;
    }

    /// Collects `KEY label` followed by dim rows; returns blocks per key.
    std::map<std::string, std::vector<std::pair<std::string, std::vector<const Line *>>>> matrix_blocks(
        const std::string &block, const std::vector<std::string> &keys, std::size_t &dim) {
        std::map<std::string, std::vector<std::pair<std::string, std::vector<const Line *>>>> out;
        bool have_dim = false;
        for (;;) {
            const Line &l = next_in_block(block);
            const auto &kw = l.tokens[0].text;
            if (kw == "end") break;
            if (kw == "dim") {
                expect_count(l, 2, "dim N");
                dim = count(l, 1);
                have_dim = true;
                continue;
            }
            if (std::find(keys.begin(), keys.end(), kw) == keys.end()) {
                std::string ex;
                for (const auto &k : keys) ex += k + ", ";
                fail(l, 0, "expected dim, " + ex + "or end");
            }
            if (!have_dim) fail(l, 0, "dim must come first");
            expect_count(l, 2, kw + " GENERATOR");
            std::vector<const Line *> rows{&l};
            for (std::size_t r = 0; r < dim; ++r) rows.push_back(&next_in_block(block));
            out[kw].emplace_back(l.tokens[1].text, std::move(rows));
        }
        if (!have_dim) throw ParseError(lines_[pos_ - 1].number, 1, block + " block needs a dim line");
        return out;
    }

    void parse_module() {
        const Line &head = lines_[pos_++];
        if (head.tokens.size() < 4) fail(head, head.tokens.size(), "expected 'module NAME over ALGEBRA' or 'module NAME = KIND ALGEBRA [VERTEX]'");
        const std::string name = head.tokens[1].text;
        define_name(head, 1, name);
        Module<S> m;
        try {
            if (head.tokens[2].text == "over") {
                expect_count(head, 4, "module NAME over ALGEBRA");
                auto a = algebra(head, 3);
                std::size_t dim = 0;
                auto blocks = matrix_blocks("module", {"action"}, dim);
                m = Module<S>::create(a, dim, actions(*a, blocks["action"], dim, head));
            } else if (head.tokens[2].text == "=") {
                const auto &kind = head.tokens[3].text;
                auto a = algebra(head, 4);
                if (kind == "regular") {
                    expect_count(head, 5, "module NAME = regular ALGEBRA");
                    m = regular_module(a);
                } else if (kind == "projective" || kind == "simple") {
                    expect_count(head, 6, "module NAME = " + kind + " ALGEBRA VERTEX");
                    auto s = vertex_index(*a, head.tokens[5].text);
                    if (!s) fail(head, 5, "unknown vertex '" + head.tokens[5].text + "'");
                    m = kind == "projective" ? projective_module(a, *s) : simple_module(a, *s);
                } else {
                    fail(head, 3, "expected regular, projective or simple");
                }
            } else {
                fail(head, 2, "expected 'over' or '='");
            }
        } catch (const ModuleError &e) {
            throw ParseError(head.number, head.tokens[0].column, "module " + name + ": " + e.what());
        }
        doc_.modules[name] = std::move(m);
        doc_.module_order.push_back(name);
    }

    void parse_bimodule() {
        const Line &head = lines_[pos_++];
        if (head.tokens.size() < 4) fail(head, head.tokens.size(), "expected 'bimodule NAME over LEFT RIGHT' or 'bimodule NAME = KIND ...'");
        const std::string name = head.tokens[1].text;
        define_name(head, 1, name);
        Bimodule<S> b;
        try {
            if (head.tokens[2].text == "over") {
                expect_count(head, 5, "bimodule NAME over LEFT RIGHT");
                auto l = algebra(head, 3);
                auto r = algebra(head, 4);
                auto rop = opposite(r);
                std::size_t dim = 0;
                auto blocks = matrix_blocks("bimodule", {"left", "right"}, dim);
                auto left = Module<S>::create(l, dim, actions(*l, blocks["left"], dim, head));
                auto right = Module<S>::create(rop, dim, actions(*rop, blocks["right"], dim, head));
                b = Bimodule<S>::create(std::move(left), std::move(right));
            } else if (head.tokens[2].text == "=") {
                const auto &kind = head.tokens[3].text;
                if (kind == "regular") {
                    expect_count(head, 5, "bimodule NAME = regular ALGEBRA");
                    b = regular_bimodule(algebra(head, 4));
                } else if (kind == "projective") {
                    // A e_s (x) e_t A, written "S T" or "P[SxTop]"
                    auto a = algebra(head, 4);
                    std::string sn, tn;
                    std::size_t stok = 5, ttok = 6;
                    if (head.tokens.size() == 6) {
                        const auto &t = head.tokens[5].text;
                        auto x = t.find('x');
                        if (t.rfind("P[", 0) != 0 || t.size() < 8 || t.substr(t.size() - 3) != "op]" || x == std::string::npos)
                            fail(head, 5, "expected P[SxTop]");
                        sn = t.substr(2, x - 2);
                        tn = t.substr(x + 1, t.size() - 4 - x);
                        ttok = 5;
                    } else {
                        expect_count(head, 7, "bimodule NAME = projective ALGEBRA VERTEX VERTEX");
                        sn = head.tokens[5].text;
                        tn = head.tokens[6].text;
                    }
                    auto s = vertex_index(*a, sn);
                    auto t = vertex_index(*a, tn);
                    if (!s) fail(head, stok, "unknown vertex '" + sn + "'");
                    if (!t) fail(head, ttok, "unknown vertex '" + tn + "'");
                    auto ae = enveloping_algebra(a);
                    b = module_to_bimodule(projective_module(ae, *s * a->vertex_count() + *t));
                } else if (kind == "quotient") {
                    expect_count(head, 5, "bimodule NAME = quotient EXTENSION");
                    auto it = doc_.extensions.find(head.tokens[4].text);
                    if (it == doc_.extensions.end()) fail(head, 4, "undefined extension '" + head.tokens[4].text + "'");
                    b = quotient_bimodule(it->second).bimodule;
                } else if (kind == "sum") {
                    expect_count(head, 6, "bimodule NAME = sum X Y");
                    const auto &x = bimodule(head, 4);
                    const auto &y = bimodule(head, 5);
                    if (!same_algebra(x.left_algebra(), y.left_algebra()) || !same_algebra(x.right().algebra(), y.right().algebra()))
                        fail(head, 5, "summands are over different algebras");
                    b = direct_sum(x, y);
                } else {
                    fail(head, 3, "expected regular, projective, quotient or sum");
                }
            } else {
                fail(head, 2, "expected 'over' or '='");
            }
        } catch (const ModuleError &e) {
            throw ParseError(head.number, head.tokens[0].column, "bimodule " + name + ": " + e.what());
        }
        doc_.bimodules[name] = std::move(b);
        doc_.bimodule_order.push_back(name);
    }

    void add_extension(const std::string &name, ExtensionPresentation<S> e, bool define_algebra) {
        if (define_algebra) add_algebra(name, e.ambient);
        doc_.extensions[name] = std::move(e);
        doc_.extension_order.push_back(name);
    }

    void parse_construct() {
        const Line &head = lines_[pos_++];
        if (head.tokens.size() < 4 || head.tokens[2].text != "=") fail(head, 2, "expected 'construct NAME = KIND ...'");
        const std::string name = head.tokens[1].text;
        const auto &kind = head.tokens[3].text;
        // a subalgebra construct may reuse the name of its ambient algebra
        const bool names_ambient = kind == "subalgebra" && head.tokens.size() > 4 && head.tokens[4].text == name &&
                                   doc_.algebras.count(name) && !doc_.extensions.count(name);
        if (!names_ambient) define_name(head, 1, name);
        try {
            if (kind == "subalgebra") {
                expect_count(head, 6, "construct NAME = subalgebra AMBIENT SUB");
                auto a = algebra(head, 4);
                auto b = algebra(head, 5);
                Matrix<S> emb(a->dim(), b->dim());
                std::optional<Matrix<S>> ret;
                bool have_image = false;
                for (;;) {
                    const Line &l = next_in_block("construct");
                    const auto &kw = l.tokens[0].text;
                    if (kw == "end") break;
                    if (kw != "image" && kw != "retract") fail(l, 0, "expected image, retract or end");
                    const bool image = kw == "image";
                    if (l.tokens.size() == 2 && l.tokens[1].text == "by-label") {
                        if (image) {
                            emb = embedding_by_labels(*b, *a);
                            have_image = true;
                        } else {
                            ret = retraction_by_labels(*b, *a);
                        }
                        continue;
                    }
                    if (l.tokens.size() < 4 || l.tokens[2].text != "=") fail(l, 2, "expected '" + kw + " LABEL = combination'");
                    const Algebra<S> &src = image ? *b : *a;
                    const Algebra<S> &dst = image ? *a : *b;
                    auto idx = src.index_of(l.tokens[1].text);
                    if (!idx) fail(l, 1, "unknown basis label '" + l.tokens[1].text + "'");
                    auto v = element(dst, l, 3);
                    if (image) {
                        for (std::size_t r = 0; r < dst.dim(); ++r) emb(r, *idx) = v[r];
                        have_image = true;
                    } else {
                        if (!ret) ret = Matrix<S>(b->dim(), a->dim());
                        for (std::size_t r = 0; r < dst.dim(); ++r) (*ret)(r, *idx) = v[r];
                    }
                }
                if (!have_image) fail(head, 3, "subalgebra construct needs image lines");
                add_extension(name, subalgebra_extension(a, b, std::move(emb), std::move(ret)), false);
                return;
            }
            std::optional<ExtensionPresentation<S>> e;
            if (kind == "trivial_extension") {
                expect_count(head, 6, "construct NAME = trivial_extension ALGEBRA BIMODULE");
                e = trivial_extension(algebra(head, 4), bimodule(head, 5)).second;
            } else if (kind == "triangular") {
                expect_count(head, 7, "construct NAME = triangular B C M");
                e = triangular_matrix_algebra(algebra(head, 4), algebra(head, 5), bimodule(head, 6)).second;
            } else if (kind == "morita_zero") {
                expect_count(head, 8, "construct NAME = morita_zero B C M N");
                e = morita_ring_zero(algebra(head, 4), algebra(head, 5), bimodule(head, 6), bimodule(head, 7)).second;
            } else {
                fail(head, 3, "expected subalgebra, trivial_extension, triangular or morita_zero");
            }
            // one-line constructs may still be closed by an optional 'end'
            if (pos_ < lines_.size() && lines_[pos_].tokens[0].text == "end" && lines_[pos_].tokens.size() == 1) ++pos_;
            add_extension(name, std::move(*e), true);
        } catch (const ExtensionError &err) {
            throw ParseError(head.number, head.tokens[0].column, "construct " + name + ": " + err.what());
        } catch (const AlgebraError &err) {
            throw ParseError(head.number, head.tokens[0].column, "construct " + name + ": " + err.what());
        } catch (const ModuleError &err) {
            throw ParseError(head.number, head.tokens[0].column, "construct " + name + ": " + err.what());
        }
    }

    void parse_check() {
        const Line &head = lines_[pos_++];
        expect_count(head, 3, "check extension|invariants NAME");
        CheckBlock c;
        c.line = head.number;
        c.target = head.tokens[2].text;
        if (head.tokens[1].text == "extension") {
            c.kind = CheckBlock::Kind::extension;
            if (!doc_.extensions.count(c.target)) fail(head, 2, "undefined extension '" + c.target + "'");
        } else if (head.tokens[1].text == "invariants") {
            c.kind = CheckBlock::Kind::invariants;
            if (!doc_.algebras.count(c.target)) fail(head, 2, "undefined algebra '" + c.target + "'");
        } else {
            fail(head, 1, "expected 'extension' or 'invariants'");
        }
        for (;;) {
            const Line &l = next_in_block("check");
            const auto &kw = l.tokens[0].text;
            if (kw == "end") break;
            if (kw == "cap" || kw == "pmax" || kw == "hh" || kw == "bound") {
                if (l.tokens.size() == 2) {
                    c.bounds[kw] = count(l, 1);
                    if (kw == "hh" && c.kind == CheckBlock::Kind::invariants) c.items.push_back({"hh"});
                    continue;
                }
                if (!(kw == "hh" && l.tokens.size() == 1)) fail(l, 1, "expected '" + kw + " N'");
            }
            if (c.kind == CheckBlock::Kind::extension) fail(l, 0, "expected cap, pmax, hh or end");
            if (kw == "gldim" || kw == "gorenstein" || kw == "singularity" || kw == "hh") {
                expect_count(l, 1, kw);
                c.items.push_back({kw});
            } else if (kw == "perp") {
                expect_count(l, 2, "perp MODULE");
                auto it = doc_.modules.find(l.tokens[1].text);
                if (it == doc_.modules.end()) fail(l, 1, "undefined module '" + l.tokens[1].text + "'");
                if (!same_algebra(it->second.algebra(), doc_.algebras.at(c.target)))
                    fail(l, 1, "module is not over " + c.target);
                c.items.push_back({"perp", l.tokens[1].text});
            } else {
                fail(l, 0, "expected gldim, gorenstein, singularity, hh, perp, cap, bound or end");
            }
        }
        doc_.checks.push_back(std::move(c));
    }

    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    Document<S> doc_;
    std::set<std::string> names_;
};

template <class S>
Document<S> parse_document(const std::string &text, std::optional<Field> override_field = std::nullopt) {
    return DocumentParser<S>(text, override_field).parse();
}

// ---------------------------------------------------------------- rendering

namespace detail {

template <class S>
std::string render_combination(const Algebra<S> &a, const Vector<S> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_zero(v[i])) continue;
        std::string c = v[i].str();
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c.erase(0, 1);
        s += s.empty() ? (neg ? "- " : "") : (neg ? " - " : " + ");
        if (c != "1") s += c + " ";
        s += a.label(i);
    }
    return s.empty() ? "0" : s;
}

template <class S>
void render_actions(std::ostream &os, const std::string &key, const Module<S> &m) {
    const auto &a = *m.algebra();
    for (std::size_t g = 0; g < a.generator_count(); ++g) {
        const auto &x = m.generator_action(g);
        if (x.is_zero()) continue;
        os << "  " << key << " " << generator_label(a, g) << "\n";
        for (std::size_t r = 0; r < x.rows(); ++r) {
            os << "   ";
            for (std::size_t c = 0; c < x.cols(); ++c) os << " " << x(r, c).str();
            os << "\n";
        }
    }
}

}  // namespace detail

/**
 * Writes the document back using explicit blocks only: every algebra as an
 * `algebra` block, modules and bimodules by action matrices, extensions as
 * subalgebra constructs with explicit image and retract lines.
 */
template <class S>
std::string render_document(const Document<S> &doc) {
    std::ostringstream os;
    os << "field " << (doc.field.characteristic == 0 ? std::string("q") : "p " + std::to_string(doc.field.characteristic)) << "\n";
    std::map<const Algebra<S> *, std::string> name_of;
    for (const auto &name : doc.algebra_order) {
        const auto &a = *doc.algebras.at(name);
        name_of[&a] = name;
        os << "\nalgebra " << name << "\n  basis";
        for (const auto &l : a.labels()) os << " " << l;
        os << "\n";
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) {
                const auto &p = a.product(i, j);
                if (p.empty()) continue;
                Vector<S> v(a.dim(), S(0));
                for (const auto &[k, c] : p) v[k] = c;
                os << "  product " << a.label(i) << " " << a.label(j) << " = " << detail::render_combination(a, v) << "\n";
            }
        os << "  unit = " << detail::render_combination(a, a.unit()) << "\n";
        for (const auto &e : a.idempotents()) os << "  idempotent " << detail::render_combination(a, e) << "\n";
        for (const auto &r : a.radical()) os << "  radical " << detail::render_combination(a, r) << "\n";
        for (const auto &g : a.radical_generators()) os << "  generator " << detail::render_combination(a, g) << "\n";
        os << "end\n";
    }
    auto algebra_name = [&](const AlgebraPtr<S> &p) {
        for (const auto &[n, a] : doc.algebras)
            if (same_algebra(a, p)) return n;
        throw std::logic_error("render_document: algebra without a name");
    };
    for (const auto &name : doc.module_order) {
        const auto &m = doc.modules.at(name);
        os << "\nmodule " << name << " over " << algebra_name(m.algebra()) << "\n  dim " << m.dim() << "\n";
        detail::render_actions(os, "action", m);
        os << "end\n";
    }
    for (const auto &name : doc.bimodule_order) {
        const auto &b = doc.bimodules.at(name);
        os << "\nbimodule " << name << " over " << algebra_name(b.left_algebra()) << " "
           << algebra_name(b.right_algebra()) << "\n  dim " << b.dim() << "\n";
        detail::render_actions(os, "left", b.left());
        detail::render_actions(os, "right", b.right());
        os << "end\n";
    }
    for (const auto &name : doc.extension_order) {
        const auto &e = doc.extensions.at(name);
        os << "\nconstruct " << name << " = subalgebra " << algebra_name(e.ambient) << " " << algebra_name(e.sub) << "\n";
        for (std::size_t j = 0; j < e.sub->dim(); ++j)
            os << "  image " << e.sub->label(j) << " = " << detail::render_combination(*e.ambient, e.embedding.column(j)) << "\n";
        if (e.retraction)
            for (std::size_t j = 0; j < e.ambient->dim(); ++j)
                os << "  retract " << e.ambient->label(j) << " = " << detail::render_combination(*e.sub, e.retraction->column(j)) << "\n";
        os << "end\n";
    }
    for (const auto &c : doc.checks) {
        os << "\ncheck " << (c.kind == CheckBlock::Kind::extension ? "extension " : "invariants ") << c.target << "\n";
        for (const auto &[k, v] : c.bounds) os << "  " << k << " " << v << "\n";
        for (const auto &item : c.items) {
            if (item[0] == "hh" && c.bounds.count("hh")) continue;
            os << " ";
            for (const auto &t : item) os << " " << t;
            os << "\n";
        }
        os << "end\n";
    }
    return os.str();
}

}  // namespace qhom

#endif  // QHOM_DOCUMENT_HPP
