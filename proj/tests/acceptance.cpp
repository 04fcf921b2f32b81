// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path to qhom binary> <source dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fixtures.hpp"
#include "oracles/monomial_hochschild.hpp"

using namespace qhom;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string &s) { notes.push_back(s); }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::vector<std::size_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return "(" + s + ")";
}

std::uint64_t seed_for(int criterion, std::size_t i) { return 0xACCE97ull * 1000003ull + criterion * 100003ull + i; }

// Runs f<Rational>() and f<PrimeField>() over F2.
template <class Body>
void both_fields(Body &&body) {
    body.template operator()<Rational>(Field{0});
    ModulusScope scope(2);
    body.template operator()<PrimeField>(Field{2});
}

// ---------------------------------------------------------------- 1

Outcome example_regression() {
    Outcome o;
    auto t0 = Clock::now();
    Field q{0};
    auto e = fx::example_extension<Rational>(q);
    auto quo = quotient_bimodule(e);
    const auto &m = quo.bimodule;
    o.require(e.ambient->dim() == 9, "dim Lambda = 9");
    o.require(e.sub->dim() == 5, "dim Gamma = 5");
    o.require(m.dim() == 4, "dim of the ideal = 4");
    o.require(tensor_over(m, m).result.dim() == 0, "ideal (x) ideal = 0");

    auto t = tor(m.right(), m.left(), 8);
    bool vanish = true;
    for (std::size_t i = 1; i <= 8; ++i) vanish = vanish && t[i] == 0;
    o.require(vanish, "Tor_i(ideal, ideal) = 0 for 1..8, got " + join(t));

    auto pd = check_bimodule_pd(e.sub, m, 12, 1);
    o.require(pd.verdict.holds() && pd.pd.kind == PdKind::finite && pd.pd.value == 1, "pd over the enveloping algebra = 1");
    o.require(pd.pd.ranks == std::vector<std::size_t>{12, 8}, "resolution ranks (12,8), got " + join(pd.pd.ranks));

    // right part: four copies of the top of e2 Gamma; left part: Gamma e1
    auto gop = opposite(e.sub);
    std::vector<Module<Rational>> tops(4, simple_module(gop, 1));
    auto right_iso = is_isomorphic(m.right(), direct_sum(tops));
    o.require(right_iso.status == IsoStatus::yes && is_homomorphism(m.right(), direct_sum(tops), right_iso.witness),
              "right module iso to top(e2 Gamma)^4 with witness");
    auto p1 = projective_module(e.sub, 0);
    auto left_iso = is_isomorphic(m.left(), p1);
    o.require(left_iso.status == IsoStatus::yes && is_homomorphism(m.left(), p1, left_iso.witness),
              "left module iso to Gamma e1 with witness");

    auto rep = theorem_verdict(e, CheckerConfig{});
    o.require(rep.sing_equiv.holds(), "singular equivalence verdict holds");
    o.require(rep.defect_equiv.holds(), "defect equivalence verdict holds");
    const double secs = seconds_since(t0);
    o.require(secs < 10.0, "runtime under 10 s");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    o.note(std::string("Tor ") + join(t) + ", ranks " + join(pd.pd.ranks) + ", " + buf);
    return o;
}

// ---------------------------------------------------------------- 2

Outcome consequence_crosscheck_example() {
    Outcome o;
    auto t0 = Clock::now();
    Field q{0};
    auto e = fx::example_extension<Rational>(q);
    auto hl = hochschild_homology(e.ambient, 4);
    auto hg = hochschild_homology(e.sub, 4);
    // gamma = 0, beta = 1, alpha = 2; zero relations in traversal order
    oracle::MonomialAlgebra lam(2, {{0, 0}, {0, 1}, {1, 0}}, {{0, 0}, {1, 2}});
    oracle::MonomialAlgebra gam(2, {{0, 0}, {0, 1}}, {{0, 0}});
    auto ol = oracle::hochschild_dims(lam, 4);
    auto og = oracle::hochschild_dims(gam, 4);
    o.require(hl == ol, "HH(Lambda) enveloping Tor " + join(hl) + " vs bar oracle " + join(ol));
    o.require(hg == og, "HH(Gamma) enveloping Tor " + join(hg) + " vs bar oracle " + join(og));
    for (std::size_t i = 1; i <= 4; ++i) o.require(hl[i] == hg[i], "HH_" + std::to_string(i) + " agree");
    auto gl = global_dimension(e.ambient, 12);
    auto gg = global_dimension(e.sub, 12);
    o.require(gl.fails() && gl.value == infinite_value && !(gl.certificate.find("period=") == std::string::npos), "gldim Lambda infinite with periodicity witness");
    o.require(gg.fails() && gg.value == infinite_value && !(gg.certificate.find("period=") == std::string::npos), "gldim Gamma infinite with periodicity witness");
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime under 60 s");
    o.note("HH " + join(hl) + " / " + join(hg));
    return o;
}

// ---------------------------------------------------------------- 3, 4, 9

Outcome tor_symmetry() {
    Outcome o;
    std::size_t pairs = 0, failures = 0, skipped = 0;
    both_fields([&]<class S>(Field f) {
        for (std::size_t i = 0; i < 110 + skipped; ++i) {
            RandomSource<S> r(seed_for(3, i), f);
            auto a = random_algebra(r, 5);
            auto m = random_module(r, opposite(a));
            auto n = random_module(r, a);
            try {
                const bool same = tor(m, n, 6) == tor_resolving_second(m, n, 6);
                ++pairs;
                if (!same) ++failures;
            } catch (const ResourceLimit &) {
                ++skipped;
            }
        }
    });
    o.require(pairs >= 200, "at least 200 pairs");
    o.require(failures == 0, std::to_string(failures) + " asymmetric pairs");
    o.note(std::to_string(pairs) + " pairs over Q and F2, " + std::to_string(skipped) + " over the size budget");
    return o;
}

Outcome concentration() {
    Outcome o;
    std::size_t tried = 0, vanishing = 0, failures = 0, kunneth = 0, skipped = 0;
    both_fields([&]<class S>(Field f) {
        const std::size_t target = f.characteristic ? 120 : 60;
        for (std::size_t i = 0; vanishing < target && i < 2000; ++i) {
            RandomSource<S> r(seed_for(4, i), f);
            // alternate plain random pairs with pairs built to vanish
            const bool built = i % 2 == 1;
            Module<S> m, n;
            if (built) {
                std::tie(m, n) = random_kunneth_pair(r, 3);
            } else {
                auto a = random_algebra(r, 5);
                n = random_module(r, a);
                m = r.coin(0.5) ? random_pd_one_module(r, opposite(a)) : random_module(r, opposite(a));
            }
            // a projective on either side makes vanishing automatic
            if (is_projective(m) || is_projective(n)) continue;
            Concentration<S> c;
            try {
                c = concentration_check(m, n, 6);
            } catch (const ResourceLimit &) {
                ++skipped;
                continue;
            }
            ++tried;
            if (!c.vanishing) continue;
            ++vanishing;
            if (built) ++kunneth;
            if (!c.concentrated) ++failures;
        }
    });
    o.require(vanishing >= 100, "at least 100 instances with Tor vanishing in 1..6");
    o.require(failures == 0, std::to_string(failures) + " not concentrated");
    o.note(std::to_string(vanishing) + " vanishing among " + std::to_string(tried) +
           " pairs with neither side projective (" + std::to_string(kunneth) + " tensor-product pairs), " +
           std::to_string(skipped) + " over the size budget");
    return o;
}

Outcome pd_tor() {
    Outcome o;
    std::size_t checks = 0, finite = 0, failures = 0;
    both_fields([&]<class S>(Field f) {
        for (std::size_t i = 0; i < 110; ++i) {
            RandomSource<S> r(seed_for(9, i), f);
            auto a = random_algebra(r, 5);
            auto n = r.coin(0.3) ? random_pd_one_module(r, a) : random_module(r, a);
            ++checks;
            auto pd = projective_dimension(n, 8);
            if (pd.kind != PdKind::finite || n.dim() == 0) continue;
            ++finite;
            auto t = tor(top_as_right_module(a), n, pd.value + 2);
            std::size_t last = 0;
            for (std::size_t k = 0; k < t.size(); ++k)
                if (t[k]) last = k;
            if (last != pd.value) ++failures;
        }
    });
    o.require(checks >= 200, "at least 200 modules");
    o.require(failures == 0, std::to_string(failures) + " mismatches");
    o.note(std::to_string(checks) + " modules, " + std::to_string(finite) + " of finite pd");
    return o;
}

// ---------------------------------------------------------------- 5, 6, 7

struct PassingRun {
    Outcome families, bar, transport;
};

PassingRun passing_extensions() {
    PassingRun run;
    std::size_t count = 0, tri = 0, triv = 0, transported = 0, bar_checked = 0;
    CheckerConfig cfg;
    cfg.cap = 6;
    cfg.consequences = false;  // cross-checked separately
    auto check_bar = [&](const auto &rep, const std::string &tag) {
        ++bar_checked;
        if (!rep.bar) {
            run.bar.require(false, tag + ": no bar complex");
            return;
        }
        long alt = 0;
        for (std::size_t j = 0; j < rep.bar->complex.dims.size(); ++j)
            alt += (j % 2 ? -1 : 1) * static_cast<long>(rep.bar->complex.dims[j]);
        bool dd = true;
        try {
            homology(rep.bar->complex);
        } catch (const ComplexError &) {
            dd = false;
        }
        run.bar.require(dd, tag + ": d o d != 0");
        run.bar.require(rep.bar->exact, tag + ": not exact " + join(rep.bar->homology));
        run.bar.require(alt == 0 && rep.bar->euler == 0, tag + ": Euler characteristic " + std::to_string(alt));
    };
    {
        Field q{0};
        auto rep = theorem_verdict(fx::example_extension<Rational>(q), cfg);
        check_bar(rep, "example");
    }
    for (std::size_t i = 0; count < 110 && i < 400; ++i) {
        Field q{0};
        RandomSource<Rational> r(seed_for(5, i), q);
        auto e = random_passing_extension(r, 3);
        auto rep = theorem_verdict(e, cfg);
        const std::string tag = "instance " + std::to_string(i) + " (" + provenance_name(e.provenance) + ")";
        ++count;
        (e.provenance == Provenance::triangular ? tri : triv)++;
        run.families.require(rep.exit_code() == 0, tag + ": hypotheses verdict exit " + std::to_string(rep.exit_code()));
        run.families.require(rep.pd.verdict.holds() && rep.pd.pd.value <= 1, tag + ": pd <= 1");
        if (rep.exit_code() != 0) continue;
        run.families.require(rep.families && rep.families->all_zero, tag + ": a Tor family is nonzero");
        check_bar(rep, tag);
        if (rep.transport) {
            ++transported;
            run.transport.require(rep.transport->all, tag + ": transport not projective");
        }
    }
    run.families.require(count >= 100, "at least 100 extensions");
    run.families.require(tri > 0 && triv > 0, "both provenances present");
    run.families.note(std::to_string(count) + " extensions: " + std::to_string(tri) + " triangular, " + std::to_string(triv) +
                      " trivial extension");
    run.bar.note(std::to_string(bar_checked) + " complexes");
    run.transport.require(transported >= 50, "at least 50 transport instances");
    run.transport.note(std::to_string(transported) + " instances");
    return run;
}

// ---------------------------------------------------------------- 8

Outcome hochschild_dual_numbers() {
    Outcome o;
    Field q{0};
    auto engine = hochschild_homology(fx::dual_numbers<Rational>(q), 4);
    auto bar = oracle::hochschild_dims(oracle::MonomialAlgebra(1, {{0, 0}}, {{0, 0}}), 4);
    const std::vector<std::size_t> expected{2, 1, 1, 1, 1};
    o.require(engine == expected, "enveloping Tor route " + join(engine));
    o.require(bar == expected, "bar complex route " + join(bar));
    o.note(join(engine));
    return o;
}

// ---------------------------------------------------------------- 10

int run_cli(const std::string &cmd) {
    int st = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_contract(const std::string &cli, const std::string &src) {
    Outcome o;
    const std::string q = "'" + cli + "'";
    const std::string example = "'" + src + "/data/example-4-5.qha'";
    auto expect = [&](const std::string &args, int code) {
        int got = run_cli(q + " " + args);
        o.require(got == code, args + " exited " + std::to_string(got) + ", expected " + std::to_string(code));
    };
    expect("demo example-4-5", 0);
    expect("demo example-4-5 --cap 0", 2);
    expect("check-extension " + example, 0);
    expect("check-extension " + example + " --cap 0", 2);
    expect("check-extension '" + src + "/tests/data/corrupted-embedding.qha'", 3);

    const std::string dir = std::filesystem::temp_directory_path() / "qhom-acceptance-";
    for (const std::string run : {"a", "b"}) {
        run_cli(q + " demo example-4-5 --report " + dir + "demo." + run);
        run_cli(q + " random-suite --seed 11 --count 4 --max-dim 3 --machine --report " + dir + "suite." + run);
    }
    for (const std::string kind : {"demo.", "suite."}) {
        auto a = slurp(dir + kind + "a"), b = slurp(dir + kind + "b");
        o.require(!a.empty() && a == b, kind + " reports identical across runs");
    }
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance QHOM_BINARY SOURCE_DIR\n";
        return 2;
    }
    bool all = true;
    auto emit = [&](int n, const char *title, const Outcome &o) {
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title;
        for (const auto &s : o.notes) std::cout << " | " << s;
        std::cout << std::endl;
    };
    auto guarded = [](auto &&f) {
        try {
            return f();
        } catch (const std::exception &e) {
            Outcome o;
            o.require(false, std::string("exception: ") + e.what());
            return o;
        }
    };
    emit(1, "example regression", guarded(example_regression));
    emit(2, "Hochschild and global dimension cross-check on the example", guarded(consequence_crosscheck_example));
    emit(3, "Tor symmetry", guarded(tor_symmetry));
    emit(4, "concentration in degree 0", guarded(concentration));
    PassingRun pr;
    try {
        pr = passing_extensions();
    } catch (const std::exception &e) {
        pr.families.require(false, std::string("exception: ") + e.what());
        pr.bar = pr.transport = pr.families;
    }
    emit(5, "Tor families vanish on passing extensions", pr.families);
    emit(6, "relative bar complex exactness", pr.bar);
    emit(7, "projectivity transport", pr.transport);
    emit(8, "Hochschild homology of dual numbers by two routes", guarded(hochschild_dual_numbers));
    emit(9, "pd agrees with the last nonvanishing Tor against the top", guarded(pd_tor));
    emit(10, "command-line contract", guarded([&] { return cli_contract(argv[1], argv[2]); }));
    return all ? 0 : 1;
}
