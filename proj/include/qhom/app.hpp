#ifndef QHOM_APP_HPP
#define QHOM_APP_HPP

// Command implementations shared by the CLI binary and the tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "checker.hpp"
#include "document.hpp"
#include "example_data.hpp"
#include "invariants.hpp"
#include "random_instances.hpp"
#include "report.hpp"

namespace qhom {

enum ExitCode : int { exit_holds = 0, exit_fails = 1, exit_undetermined = 2, exit_input_error = 3 };

struct RunOptions {
    std::optional<std::size_t> cap, pmax, hh_range;
    std::optional<Field> field;
    std::uint64_t seed = 1;
    std::size_t count = 50;
    std::size_t max_dim = 4;
};

struct RunResult {
    int exit_code = exit_holds;
    Report report;
    std::string diagnostics;  ///< for stderr; empty when nothing went wrong
};

/// "q" or "p:PRIME".
inline std::optional<Field> parse_field_flag(const std::string &s) {
    if (s == "q" || s == "Q") return Field{0};
    if (s.size() < 3 || (s[0] != 'p' && s[0] != 'P') || s[1] != ':') return std::nullopt;
    std::uint64_t p = 0;
    for (std::size_t i = 2; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])) || p > (1ull << 32)) return std::nullopt;
        p = p * 10 + static_cast<std::uint64_t>(s[i] - '0');
    }
    if (p >= (1ull << 31) || !detail::is_prime(p)) return std::nullopt;
    return Field{static_cast<std::uint32_t>(p)};
}

namespace detail {

/// Runs body<S>() with the scalar type matching the field, inside a modulus scope for F_p.
template <class Body>
auto with_field(const Field &f, Body &&body) {
    if (f.characteristic == 0) return body.template operator()<Rational>();
    ModulusScope scope(f.characteristic);
    return body.template operator()<PrimeField>();
}

inline int combine_exit(int a, int b) {
    if (a == exit_fails || b == exit_fails) return exit_fails;
    if (a == exit_undetermined || b == exit_undetermined) return exit_undetermined;
    return exit_holds;
}

inline RunResult input_error(const std::string &command, std::uint64_t digest, const std::string &msg) {
    RunResult r;
    r.exit_code = exit_input_error;
    r.report = Report(command);
    r.report.set_input_digest(digest);
    r.report.section("error").set("message", msg);
    r.diagnostics = "error: " + msg;
    return r;
}

inline CheckerConfig config_for(const CheckBlock *block, const RunOptions &opt) {
    CheckerConfig cfg;
    auto pick = [&](const std::optional<std::size_t> &flag, const char *key, std::size_t dflt) {
        if (flag) return *flag;
        if (block) {
            auto it = block->bounds.find(key);
            if (it != block->bounds.end()) return it->second;
        }
        return dflt;
    };
    cfg.cap = pick(opt.cap, "cap", cfg.cap);
    cfg.pmax = pick(opt.pmax, "pmax", cfg.pmax);
    cfg.hh_range = pick(opt.hh_range, "hh", cfg.hh_range);
    cfg.seed = opt.seed;
    return cfg;
}

inline void add_bounds(Report::Section &sec, const CheckerConfig &cfg, const Field &f) {
    sec.set("field", f.name());
    sec.set("cap", cfg.cap);
    sec.set("pmax", cfg.pmax);
    sec.set("hh_range", cfg.hh_range);
}

}  // namespace detail

// ---------------------------------------------------------------- check-extension

inline RunResult run_check_extension(const std::string &text, const RunOptions &opt = {}) {
    const std::string command = "check-extension";
    const auto digest = fnv1a(text);
    try {
        Field f = opt.field ? *opt.field : detect_field(text);
        return detail::with_field(f, [&]<class S>() {
            auto doc = parse_document<S>(text, f);
            RunResult out;
            out.report = Report(command);
            out.report.set_input_digest(digest);
            std::size_t checks = 0;
            for (const auto &c : doc.checks) {
                if (c.kind != CheckBlock::Kind::extension) continue;
                ++checks;
                auto cfg = detail::config_for(&c, opt);
                detail::add_bounds(out.report.section("bounds " + c.target), cfg, f);
                int code = exit_undetermined;
                try {
                    auto rep = theorem_verdict(doc.extensions.at(c.target), cfg);
                    add_hypothesis_report(out.report, c.target, rep);
                    code = rep.exit_code();
                } catch (const ResourceLimit &e) {
                    auto &sec = out.report.section("extension " + c.target);
                    sec.set("undetermined", std::string(e.what()));
                    sec.set("exit", code);
                    out.diagnostics += c.target + ": " + e.what() + "\n";
                }
                out.exit_code = checks == 1 ? code : detail::combine_exit(out.exit_code, code);
            }
            if (checks == 0) return detail::input_error(command, digest, "document has no 'check extension' block");
            return out;
        });
    } catch (const ParseError &e) {
        return detail::input_error(command, digest, e.what());
    } catch (const std::exception &e) {
        return detail::input_error(command, digest, e.what());
    }
}

// ---------------------------------------------------------------- invariants

inline RunResult run_invariants(const std::string &text, const RunOptions &opt = {}) {
    const std::string command = "invariants";
    const auto digest = fnv1a(text);
    try {
        Field f = opt.field ? *opt.field : detect_field(text);
        return detail::with_field(f, [&]<class S>() {
            auto doc = parse_document<S>(text, f);
            RunResult out;
            out.report = Report(command);
            out.report.set_input_digest(digest);
            std::vector<CheckBlock> blocks;
            for (const auto &c : doc.checks)
                if (c.kind == CheckBlock::Kind::invariants) blocks.push_back(c);
            if (blocks.empty())  // default battery on every algebra
                for (const auto &name : doc.algebra_order) {
                    CheckBlock c;
                    c.kind = CheckBlock::Kind::invariants;
                    c.target = name;
                    blocks.push_back(c);
                }
            for (auto c : blocks) {
                if (c.items.empty()) c.items = {{"gldim"}, {"singularity"}, {"gorenstein"}, {"hh"}};
                auto cfg = detail::config_for(&c, opt);
                auto a = doc.algebras.at(c.target);
                auto &sec = out.report.section("invariants " + c.target);
                sec.set("field", f.name());
                sec.set("dim", a->dim());
                sec.set("vertices", a->vertex_count());
                for (const auto &item : c.items) {
                    const auto &what = item[0];
                    try {
                        if (what == "gldim") {
                            add_verdict(sec, "gldim", global_dimension(a, cfg.cap));
                        } else if (what == "singularity") {
                            add_verdict(sec, "singularity_trivial", singularity_trivial(a, cfg.cap));
                        } else if (what == "gorenstein") {
                            add_verdict(sec, "injdim.left", injective_dimension_regular(a, Side::left, cfg.cap));
                            add_verdict(sec, "injdim.right", injective_dimension_regular(a, Side::right, cfg.cap));
                            add_verdict(sec, "gorenstein", gorenstein_verdict(a, cfg.cap));
                        } else if (what == "hh") {
                            sec.set("hh.range", "0.." + std::to_string(cfg.hh_range));
                            sec.set("hh.dims", "(" + detail::join(hochschild_homology(a, cfg.hh_range)) + ")");
                        } else if (what == "perp") {
                            std::size_t bound = c.bounds.count("bound") ? c.bounds.at("bound") : cfg.cap;
                            add_verdict(sec, "perp." + item[1], perp_membership(doc.modules.at(item[1]), bound));
                        }
                    } catch (const ResourceLimit &e) {
                        sec.set(what, "undetermined (" + std::string(e.what()) + ")");
                        out.exit_code = exit_undetermined;
                    }
                }
            }
            return out;
        });
    } catch (const std::exception &e) {
        return detail::input_error(command, digest, e.what());
    }
}

// ---------------------------------------------------------------- demo

namespace detail {

template <class S>
RunResult demo_impl(const Field &f, const RunOptions &opt) {
    const std::string text = example_4_5_document;
    RunResult out;
    out.report = Report("demo example-4-5");
    out.report.set_input_digest(fnv1a(text));
    auto doc = parse_document<S>(text, f);
    const auto &e = doc.extensions.at("ext");
    const CheckBlock *block = nullptr;
    for (const auto &c : doc.checks)
        if (c.kind == CheckBlock::Kind::extension && c.target == "ext") block = &c;
    auto cfg = config_for(block, opt);
    add_bounds(out.report.section("bounds ext"), cfg, f);
    auto rep = theorem_verdict(e, cfg);
    add_hypothesis_report(out.report, "ext", rep);

    auto &sec = out.report.section("assertions");
    if (rep.exit_code() == exit_undetermined && !rep.pd.verdict.fails() && !rep.nilpotency.verdict.fails()) {
        sec.set("status", "skipped: undetermined at the given bounds");
        out.exit_code = exit_undetermined;
        return out;
    }
    bool all = true;
    auto check = [&](const std::string &name, bool ok) {
        sec.set(name, std::string(ok ? "pass" : "FAIL"));
        all = all && ok;
    };
    auto lambda = doc.algebras.at("Lambda");
    auto gamma = doc.algebras.at("Gamma");
    check("dim_lambda_9", lambda->dim() == 9);
    check("dim_gamma_5", gamma->dim() == 5);
    check("dim_ideal_4", rep.quotient_dim == 4);
    auto q = quotient_bimodule(e).bimodule;
    const std::size_t v1 = *vertex_index(*gamma, "1"), v2 = *vertex_index(*gamma, "2");
    auto top2 = simple_module(opposite(gamma), v2);
    check("ideal_right_is_top_e2_fourfold",
          is_isomorphic(q.right(), direct_sum(std::vector<Module<S>>(4, top2))).status == IsoStatus::yes);
    check("ideal_left_is_projective_e1", is_isomorphic(q.left(), projective_module(gamma, v1)).status == IsoStatus::yes);
    check("tensor_square_zero", rep.nilpotency.verdict.holds() && rep.nilpotency.index == 2);
    check("tor_vanishing", rep.tor_verdict.holds());
    check("pd_enveloping_1", rep.pd.verdict.holds() && rep.pd.verdict.value == 1L);
    check("resolution_ranks_12_8", rep.pd.pd.ranks == std::vector<std::size_t>{12, 8});
    check("split_witness", rep.split.holds());
    check("sing_equiv", rep.sing_equiv.holds());
    check("defect_equiv", rep.defect_equiv.holds());
    check("hh_equal_1_to_" + std::to_string(cfg.hh_range), rep.consequences && rep.consequences->hh_agree);
    check("bar_exact", rep.bar && rep.bar->exact && rep.bar->euler == 0);
    sec.set("all", all);
    out.exit_code = all ? exit_holds : exit_fails;
    return out;
}

}  // namespace detail

inline RunResult run_demo(const std::string &name, const RunOptions &opt = {}) {
    if (name != "example-4-5") return detail::input_error("demo", 0, "unknown demo '" + name + "' (available: example-4-5)");
    try {
        Field f = opt.field ? *opt.field : Field{0};
        return detail::with_field(f, [&]<class S>() { return detail::demo_impl<S>(f, opt); });
    } catch (const std::exception &e) {
        return detail::input_error("demo", 0, e.what());
    }
}

// ---------------------------------------------------------------- random suite

struct SuiteTally {
    std::size_t extensions = 0, extension_failures = 0;
    std::size_t tor_pairs = 0, tor_failures = 0;
    std::size_t pd_checks = 0, pd_failures = 0, pd_finite = 0;
    std::size_t probes = 0, probes_rejected = 0;
    std::size_t skipped = 0;  ///< instances that hit the resolution size budget
    std::vector<std::string> failures;
};

namespace detail {

/// A structure-constant table with a broken idempotent; construction must reject it.
template <class S>
bool corrupted_instance_rejected(const AlgebraPtr<S> &a) {
    AlgebraData<S> d = a->data();
    d.left_factor = d.right_factor = nullptr;
    const std::size_t n = a->dim();
    auto e = *a->index_of(a->labels()[0]);
    // e * e = 2 e
    for (auto &[k, c] : d.products[e * n + e]) c += c;
    try {
        Algebra<S>::create(std::move(d));
        return false;
    } catch (const AlgebraError &) {
        return true;
    }
}

template <class S>
SuiteTally random_suite_impl(const Field &f, const RunOptions &opt, const CheckerConfig &cfg) {
    SuiteTally t;
    for (std::size_t i = 0; i < opt.count; ++i) {
        RandomSource<S> r(opt.seed * 0x9E3779B97F4A7C15ull + i, f);
        const std::string tag = "instance " + std::to_string(i) + ": ";
        // an extension built to satisfy the hypotheses
        {
            auto e = random_passing_extension(r, opt.max_dim);
            auto rep = theorem_verdict(e, cfg);
            ++t.extensions;
            std::string why;
            if (rep.exit_code() != exit_holds) why = "verdict exit " + std::to_string(rep.exit_code());
            else if (!rep.bar->exact || rep.bar->euler != 0) why = "bar complex not exact";
            else if (!rep.families->all_zero) why = "Tor family nonzero";
            else if (!rep.transport->all) why = "projectivity transport";
            else if (!rep.consequences->verdict.holds()) why = rep.consequences->verdict.certificate;
            if (!why.empty()) {
                ++t.extension_failures;
                t.failures.push_back(tag + std::string(provenance_name(e.provenance)) + " extension: " + why);
            }
        }
        // Tor computed from either side, and pd read off Tor against the top
        {
            auto a = random_algebra(r, std::min<std::size_t>(opt.max_dim + 1, 5));
            auto m = random_module(r, opposite(a));
            auto n = random_module(r, a);
            try {
                const bool symmetric = tor(m, n, 6) == tor_resolving_second(m, n, 6);
                ++t.tor_pairs;
                if (!symmetric) {
                    ++t.tor_failures;
                    t.failures.push_back(tag + "Tor depends on the resolved side");
                }
                auto pd = projective_dimension(n, cfg.cap);
                ++t.pd_checks;
                if (pd.kind == PdKind::finite) {
                    ++t.pd_finite;
                    auto tr = tor(top_as_right_module(a), n, pd.value + 2);
                    std::size_t last = 0;
                    for (std::size_t k = 0; k < tr.size(); ++k)
                        if (tr[k]) last = k;
                    if (n.dim() != 0 && last != pd.value) {
                        ++t.pd_failures;
                        t.failures.push_back(tag + "pd " + std::to_string(pd.value) + " but top Tor ends at " + std::to_string(last));
                    }
                }
            } catch (const ResourceLimit &) {
                ++t.skipped;
            }
            if (i % 25 == 24) {
                ++t.probes;
                if (corrupted_instance_rejected(a)) ++t.probes_rejected;
                else t.failures.push_back(tag + "corrupted structure constants accepted");
            }
        }
    }
    return t;
}

}  // namespace detail

inline RunResult run_random_suite(const RunOptions &opt = {}) {
    Field f = opt.field ? *opt.field : Field{0};
    RunResult out;
    out.report = Report("random-suite");
    std::string params = "seed=" + std::to_string(opt.seed) + " count=" + std::to_string(opt.count) +
                         " max_dim=" + std::to_string(opt.max_dim) + " field=" + f.name();
    out.report.set_input_digest(fnv1a(params));
    CheckerConfig cfg;
    cfg.cap = opt.cap.value_or(6);
    cfg.pmax = opt.pmax.value_or(cfg.pmax);
    cfg.hh_range = opt.hh_range.value_or(cfg.hh_range);
    cfg.seed = opt.seed;
    auto &p = out.report.section("parameters");
    p.set("seed", std::to_string(opt.seed));
    p.set("count", opt.count);
    p.set("max_dim", opt.max_dim);
    detail::add_bounds(p, cfg, f);
    if (opt.count == 0) return out;
    try {
        auto t = detail::with_field(f, [&]<class S>() { return detail::random_suite_impl<S>(f, opt, cfg); });
        auto &s = out.report.section("summary");
        s.set("extensions", t.extensions);
        s.set("extension_failures", t.extension_failures);
        s.set("tor_pairs", t.tor_pairs);
        s.set("tor_failures", t.tor_failures);
        s.set("pd_checks", t.pd_checks);
        s.set("pd_finite", t.pd_finite);
        s.set("pd_failures", t.pd_failures);
        s.set("corruption_probes", t.probes);
        s.set("corruption_rejected", t.probes_rejected);
        s.set("skipped_size_budget", t.skipped);
        const std::size_t failed = t.extension_failures + t.tor_failures + t.pd_failures + (t.probes - t.probes_rejected);
        s.set("failures", failed);
        if (!t.failures.empty()) {
            auto &fl = out.report.section("failures");
            for (std::size_t k = 0; k < t.failures.size(); ++k) fl.set(std::to_string(k + 1), t.failures[k]);
        }
        out.exit_code = failed ? exit_fails : exit_holds;
    } catch (const std::exception &e) {
        return detail::input_error("random-suite", out.report.input_digest(), e.what());
    }
    return out;
}

}  // namespace qhom

#endif  // QHOM_APP_HPP
