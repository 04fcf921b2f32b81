#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles/monomial_hochschild.hpp"

using namespace qhom;

TEMPLATE_TEST_CASE("homology of short complexes", "[complex]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    const auto one = fx::lit<TestType>(1, be.field);
    // 0 -> k --id--> k -> 0 is exact
    ChainComplex<TestType> c;
    c.lowest_degree = 0;
    c.dims = {1, 1};
    Matrix<TestType> id(1, 1);
    id(0, 0) = one;
    c.differentials = {Matrix<TestType>(), id};
    CHECK(homology(c) == std::vector<std::size_t>{0, 0});
    CHECK(is_exact(c));
    CHECK(c.euler_characteristic() == 0);

    // k^2 -> k, (1, 1): homology k in the top degree
    ChainComplex<TestType> d;
    d.lowest_degree = -1;
    d.dims = {1, 2};
    Matrix<TestType> row(1, 2);
    row(0, 0) = one;
    row(0, 1) = one;
    d.differentials = {Matrix<TestType>(), row};
    CHECK(homology(d) == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(is_exact(d));

    // d o d != 0 is reported
    ChainComplex<TestType> bad;
    bad.dims = {1, 1, 1};
    bad.differentials = {Matrix<TestType>(), id, id};
    CHECK_THROWS_AS(homology(bad), ComplexError);
}

TEMPLATE_TEST_CASE("minimal resolutions and projective dimension", "[resolution]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto a3 = fx::a3<TestType>(be.field);
    // hereditary: every simple has pd <= 1
    for (std::size_t s = 0; s < 3; ++s) {
        auto pd = projective_dimension(simple_module(a3, s), 6);
        REQUIRE(pd.kind == PdKind::finite);
        CHECK(pd.value == (s == 2 ? 0u : 1u));
    }
    // killing the composite pushes S1 to pd 2
    auto a3z = fx::a3<TestType>(be.field, true);
    auto pd1 = projective_dimension(simple_module(a3z, 0), 6);
    REQUIRE(pd1.kind == PdKind::finite);
    CHECK(pd1.value == 2);
    CHECK(pd1.ranks == std::vector<std::size_t>{2, 2, 1});  // P1, P2, P3
    CHECK(pd1.summands == std::vector<std::size_t>{1, 1, 1});

    auto res = minimal_resolution(simple_module(a3z, 0), 6);
    CHECK(res.terminated);
    CHECK(res.minimal);
    CHECK(res.length == 2);
    CHECK(res.ranks() == std::vector<std::size_t>{2, 2, 1});

    // projectives have pd 0, zero module too
    CHECK(projective_dimension(projective_module(a3z, 0), 3).value == 0);
    CHECK(projective_dimension(zero_module(a3z), 3).value == 0);
}

TEMPLATE_TEST_CASE("infinite projective dimension with a periodicity witness", "[resolution]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto dn = fx::dual_numbers<TestType>(be.field);
    auto pd = projective_dimension(simple_module(dn, 0), 6);
    CHECK(pd.kind == PdKind::infinite);
    CHECK(pd.period_to > pd.period_from);

    auto gam = fx::gamma_algebra<TestType>(be.field);
    auto pg = projective_dimension(simple_module(gam, 0), 8);
    CHECK(pg.kind == PdKind::infinite);

    // at cap 0 nothing is decided for a non-projective module
    auto capped = projective_dimension(simple_module(gam, 0), 0);
    CHECK(capped.kind == PdKind::undetermined);
}

TEMPLATE_TEST_CASE("projective covers, syzygies and projectivity", "[resolution]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto gam = fx::gamma_algebra<TestType>(be.field);
    auto s1 = simple_module(gam, 0);
    auto cover = projective_cover(s1);
    CHECK(cover.projective.module.dim() == 4);
    CHECK(top_multiplicities(s1) == std::vector<std::size_t>{1, 0});
    auto om = syzygy(s1, 1);
    CHECK(om.dim() == 3);
    CHECK_FALSE(is_projective(s1));
    CHECK(is_projective(projective_module(gam, 1)));
    CHECK(is_projective(direct_sum(std::vector<Module<TestType>>{projective_module(gam, 0), projective_module(gam, 1)})));
    CHECK(is_projective(regular_module(gam)));
}

TEMPLATE_TEST_CASE("hom spaces and isomorphism witnesses", "[module]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto gam = fx::gamma_algebra<TestType>(be.field);
    auto p1 = projective_module(gam, 0);
    auto p2 = projective_module(gam, 1);
    // Hom(A e_s, M) = e_s M
    CHECK(hom_space(p1, p1).size() == 2);
    CHECK(hom_space(p2, p1).size() == 2);
    CHECK(hom_space(p1, p2).size() == 0);
    for (const auto &h : hom_space(p2, p1)) CHECK(is_homomorphism(p2, p1, h));

    auto a = direct_sum(std::vector<Module<TestType>>{p1, simple_module(gam, 1)});
    auto b = direct_sum(std::vector<Module<TestType>>{simple_module(gam, 1), p1});
    auto v = is_isomorphic(a, b);
    REQUIRE(v.status == IsoStatus::yes);
    CHECK(is_homomorphism(a, b, v.witness));
    CHECK(rank(v.witness) == a.dim());
    CHECK(is_isomorphic(p1, direct_sum(std::vector<Module<TestType>>{simple_module(gam, 0), simple_module(gam, 1),
                                                                     simple_module(gam, 0), simple_module(gam, 1)}))
              .status == IsoStatus::no);
}

TEMPLATE_TEST_CASE("Tor and Ext on small modules", "[tor]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto a3z = fx::a3<TestType>(be.field, true);
    auto top_r = top_as_right_module(a3z);
    auto s1 = simple_module(a3z, 0);
    // pd S1 = 2, so Tor against the top ends in degree 2
    auto t = tor(top_r, s1, 4);
    CHECK(t == std::vector<std::size_t>{1, 1, 1, 0, 0});
    CHECK(tor_resolving_second(top_r, s1, 4) == t);
    // Tor_0 is the tensor product
    auto p = projective_module(a3z, 1);
    CHECK(tor(top_r, p, 2)[0] == tensor_dimension(top_r, p));
    CHECK(tor(top_r, p, 2) == std::vector<std::size_t>{1, 0, 0});
    // Ext^0 = Hom
    auto e = ext(s1, s1, 3);
    CHECK(e[0] == hom_space(s1, s1).size());
    CHECK(ext(projective_module(a3z, 0), s1, 3) == std::vector<std::size_t>{1, 0, 0, 0});
}

TEMPLATE_TEST_CASE("tensor products over an algebra", "[tensor]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto gam = fx::gamma_algebra<TestType>(be.field);
    auto reg = regular_bimodule(gam);
    // A (x)_A A = A
    auto aa = tensor_over(reg, reg);
    CHECK(aa.result.dim() == gam->dim());
    CHECK_NOTHROW(aa.result.verify());
    // e_s A (x)_A A e_t has dimension dim e_s A e_t
    auto right_p = projective_module(opposite(gam), 0);
    CHECK(tensor_dimension(right_p, projective_module(gam, 0)) == 2);
    CHECK(tensor_dimension(right_p, simple_module(gam, 1)) == 0);
    CHECK(tensor_dimension(top_as_right_module(gam), regular_module(gam)) == 2);
}

TEMPLATE_TEST_CASE("tensor powers of the ideal in the example", "[tensor]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto e = fx::example_extension<TestType>(be.field);
    auto q = quotient_bimodule(e).bimodule;
    CHECK(q.dim() == 4);
    auto powers = tensor_powers(q, 3);
    REQUIRE(powers.size() == 3);
    CHECK(powers[0].result.dim() == 4);
    CHECK(powers[1].result.dim() == 0);
    CHECK(powers[2].result.dim() == 0);
}

TEST_CASE("Hochschild homology of dual numbers over Q matches the oracle", "[hochschild][oracle]") {
    Field q{0};
    auto engine = hochschild_homology(fx::dual_numbers<Rational>(q), 4);
    CHECK(engine == std::vector<std::size_t>{2, 1, 1, 1, 1});
    oracle::MonomialAlgebra dn(1, {{0, 0}}, {{0, 0}});
    CHECK(oracle::hochschild_dims(dn, 4) == engine);
}

TEST_CASE("Hochschild homology of dual numbers in characteristic 2", "[hochschild]") {
    // the periodic resolution tensors down to maps 0 and 2x, both zero here
    ModulusScope scope(2);
    auto hh = hochschild_homology(fx::dual_numbers<PrimeField>(Field{2}), 4);
    CHECK(hh == std::vector<std::size_t>{2, 2, 2, 2, 2});
}

TEST_CASE("Hochschild homology of hereditary and example algebras agrees with the oracle", "[hochschild][oracle]") {
    Field q{0};
    CHECK(hochschild_homology(fx::a3<Rational>(q), 3) == oracle::hochschild_dims(oracle::MonomialAlgebra(3, {{0, 1}, {1, 2}}, {}), 3));
    CHECK(hochschild_homology(fx::a3<Rational>(q, true), 3) ==
          oracle::hochschild_dims(oracle::MonomialAlgebra(3, {{0, 1}, {1, 2}}, {{0, 1}}), 3));
    oracle::MonomialAlgebra gam(2, {{0, 0}, {0, 1}}, {{0, 0}});
    CHECK(hochschild_homology(fx::gamma_algebra<Rational>(q), 3) == oracle::hochschild_dims(gam, 3));
}

TEST_CASE("oracle sanity on semisimple and hereditary cases", "[oracle]") {
    CHECK(oracle::hochschild_dims(oracle::MonomialAlgebra(2, {}, {}), 2) == std::vector<std::size_t>{2, 0, 0});
    CHECK(oracle::hochschild_dims(oracle::MonomialAlgebra(2, {{0, 1}}, {}), 2) == std::vector<std::size_t>{2, 0, 0});
    // a single 2-cycle with both composites killed: HH_0 counts vertices only
    CHECK(oracle::hochschild_dims(oracle::MonomialAlgebra(2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}), 0)[0] == 2);
}

TEMPLATE_TEST_CASE("resolutions stop at the size budget", "[resolution]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    // three loops, all products but one killed: syzygies grow geometrically
    auto w = fx::quiver<TestType>(be.field, {"1"}, {{"x", "1", "1"}, {"y", "1", "1"}, {"z", "1", "1"}},
                                  {{{1, "x*x"}}, {{1, "x*y"}}, {{1, "x*z"}}, {{1, "y*x"}}, {{1, "y*y"}},
                                   {{1, "z*x"}}, {{1, "z*y"}}, {{1, "z*z"}}});
    REQUIRE(w->dim() == 5);
    auto s = simple_module(w, 0);
    const auto saved = resolution_dimension_limit;
    resolution_dimension_limit = 50;
    auto res = minimal_resolution(s, 8);
    CHECK(res.size_limited);
    CHECK_FALSE(res.terminated);
    CHECK(res.ranks().back() <= 50);
    CHECK_THROWS_AS(tor(top_as_right_module(w), s, 8), ResourceLimit);
    CHECK(projective_dimension(s, 8).kind == PdKind::undetermined);
    resolution_dimension_limit = saved;
    CHECK(minimal_resolution(s, 3).ranks() == std::vector<std::size_t>{5, 15, 40, 105});
}

TEMPLATE_TEST_CASE("external tensor products and Kunneth vanishing", "[tensor]", Rational, PrimeField) {
    fx::Backend<TestType> be;
    auto b = fx::dual_numbers<TestType>(be.field);
    auto c = fx::a3<TestType>(be.field);
    auto t = tensor_algebra(b, c);
    auto n = external_tensor(t, simple_module(b, 0), projective_module(c, 0));
    CHECK(n.dim() == 3);
    CHECK_NOTHROW(n.verify());
    CHECK_FALSE(is_projective(n));
    CHECK(is_projective(external_tensor(t, projective_module(b, 0), projective_module(c, 1))));
    auto m = external_tensor(opposite(t), projective_module(opposite(b), 0), simple_module(opposite(c), 1));
    CHECK_FALSE(is_projective(m));
    // Tor^B(B, k) (x) Tor^C(S2, P1) lives in degree 0 only
    auto tr = tor(m, n, 5);
    CHECK(tr == std::vector<std::size_t>{tensor_dimension(m, n), 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(external_tensor(b, simple_module(b, 0), simple_module(c, 0)), ModuleError);

    RandomSource<TestType> r(99, be.field);
    for (int i = 0; i < 10; ++i) {
        auto [mr, nl] = random_kunneth_pair(r, 3);
        auto v = tor(mr, nl, 4);
        CHECK(std::all_of(v.begin() + 1, v.end(), [](std::size_t x) { return x == 0; }));
    }
}
