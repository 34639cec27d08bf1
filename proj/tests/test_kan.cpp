#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcat/fixtures.hpp"
#include "dgcat/kan.hpp"

using namespace dgcat;

namespace {

const CatPtr K1 = make_cat(k1());
const CatPtr A2 = make_cat(a2());
const CatPtr D1 = make_cat(d1());

std::map<int, size_t> dims_of(const Complex& c) {
    std::map<int, size_t> d;
    for (int n : c.space.degrees()) d.emplace(n, c.dim(n));
    return d;
}

/* The one-object full subcategory at a with its inclusion. */
std::pair<CatPtr, DgFunctor> a_into_a2() {
    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    return {sub, inclusion_functor(sub, A2)};
}

}  // namespace

TEST_CASE("opposite functors validate") {
    CHECK(validate_dg_functor(opposite_functor(DgFunctor::identity(D1))).ok);
    auto [sub, j] = a_into_a2();
    CHECK(validate_dg_functor(opposite_functor(j)).ok);
    CHECK(validate_dg_functor(opposite_functor(collapse_a2(A2, K1))).ok);
    for (uint64_t s = 0; s < 3; ++s) {
        CatPtr c = make_cat(random_category(s + 130));
        CHECK(validate_dg_functor(opposite_functor(DgFunctor::identity(c))).ok);
    }
}

TEST_CASE("left extension along an inclusion hits the representable") {
    auto [sub, j] = a_into_a2();
    DgModule g = representable(sub, "a");  // K in degree 0 at a

    LanData lg = lan(j, g);
    CHECK(validate_dg_module(lg.value).ok);
    CHECK(dims_of(lg.value.value("a")) == std::map<int, size_t>{{0, 1}});
    CHECK(dims_of(lg.value.value("b")) == std::map<int, size_t>{{0, 1}});
    // the arrow action class(1_a ⊗ 1) ↦ class(u ⊗ 1) has coefficient 1
    CHECK(lg.value.act(MorKey{"a", "b", 0, 0}).block(0) == Matrix::identity(1));
    CHECK(validate_dg_nat(lg.unit).ok);
    CHECK(nat_d(lg.unit).is_zero());

    RanData rg = ran(j, g);
    CHECK(validate_dg_module(rg.value).ok);
    CHECK(dims_of(rg.value.value("a")) == std::map<int, size_t>{{0, 1}});
    CHECK(rg.value.value("b").space.total_dim() == 0);
    CHECK(validate_dg_nat(rg.counit).ok);
    CHECK(nat_d(rg.counit).is_zero());
}

TEST_CASE("extensions along the identity are isomorphic to the module") {
    for (uint64_t s = 0; s < 2; ++s) {
        CatPtr base = s == 0 ? A2 : make_cat(random_category(s + 140));
        DgFunctor id = DgFunctor::identity(base);
        for (const auto& x : base->objects) {
            DgModule g = representable(base, x);
            auto rep = transfer_check(id, g);
            INFO(rep.summary());
            CHECK(rep.ok);
        }
        auto rep = transfer_check(id, random_module(base, s + 17));
        INFO(rep.summary());
        CHECK(rep.ok);
    }
}

TEST_CASE("fully faithful detection") {
    auto [sub, j] = a_into_a2();
    CHECK(fully_faithful(DgFunctor::identity(D1)));
    CHECK(fully_faithful(j));
    CHECK_FALSE(fully_faithful(collapse_a2(A2, K1)));

    auto rep = transfer_check(collapse_a2(A2, K1), representable(A2, "a"));
    CHECK_FALSE(rep.ok);
}

TEST_CASE("transfer along fully faithful inclusions") {
    auto [sub, j] = a_into_a2();
    auto rep = transfer_check(j, representable(sub, "a"));
    INFO(rep.summary());
    CHECK(rep.ok);

    DgFunctor idd = DgFunctor::identity(D1);
    auto rep2 = transfer_check(idd, d1_two_term_module(D1));
    INFO(rep2.summary());
    CHECK(rep2.ok);

    for (uint64_t s = 0; s < 2; ++s) {
        CatPtr whole = make_cat(random_category(s + 150));
        CatPtr small = make_cat(full_subcategory(*whole, {whole->objects.front()}));
        DgFunctor inc = inclusion_functor(small, whole);
        auto rep3 = transfer_check(inc, random_module(small, s + 5));
        INFO(rep3.summary());
        CHECK(rep3.ok);
    }
}

TEST_CASE("adjunction battery") {
    auto [sub, j] = a_into_a2();
    SUBCASE("inclusion into the arrow category") {
        for (const auto& x : {std::string("a"), std::string("b")}) {
            auto rep = adjunction_check(j, representable(sub, "a"), representable(A2, x));
            INFO(rep.summary());
            CHECK(rep.ok);
        }
        auto rep = adjunction_check(j, random_module(sub, 3), random_module(A2, 4));
        INFO(rep.summary());
        CHECK(rep.ok);
    }
    SUBCASE("collapse onto the point") {
        DgFunctor q = collapse_a2(A2, K1);
        auto rep = adjunction_check(q, representable(A2, "a"), representable(K1, "*"));
        INFO(rep.summary());
        CHECK(rep.ok);
        auto rep2 = adjunction_check(q, random_module(A2, 7), random_module(K1, 8));
        INFO(rep2.summary());
        CHECK(rep2.ok);
    }
    SUBCASE("identity of the one-object differential category") {
        DgFunctor idd = DgFunctor::identity(D1);
        auto rep = adjunction_check(idd, d1_two_term_module(D1), representable(D1, "*"));
        INFO(rep.summary());
        CHECK(rep.ok);
    }
    SUBCASE("zero module") {
        auto rep = adjunction_check(j, zero_module(sub), representable(A2, "b"));
        INFO(rep.summary());
        CHECK(rep.ok);
    }
    SUBCASE("random inclusion") {
        for (uint64_t s = 0; s < 2; ++s) {
            CatPtr whole = make_cat(random_category(s + 160));
            CatPtr small = make_cat(full_subcategory(*whole, {whole->objects.back()}));
            DgFunctor inc = inclusion_functor(small, whole);
            auto rep = adjunction_check(inc, random_module(small, s + 9), random_module(whole, s + 10));
            INFO(rep.summary());
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("extensions act on transformations") {
    DgFunctor idd = DgFunctor::identity(D1);
    DgModule m = d1_two_term_module(D1);
    LanData lg = lan(idd, m);
    RanData rg = ran(idd, m);

    // scalar transformations transport to scalar transformations
    DgNat two = nat_identity(m).scaled(Scalar(2));
    CHECK(lan_on_nat(lg, lg, two) == nat_identity(lg.value).scaled(Scalar(2)));
    CHECK(ran_on_nat(rg, rg, two) == nat_identity(rg.value).scaled(Scalar(2)));

    // the degree -1 action of the exterior generator transports compatibly
    DgNat nu = nat_zero(m, m, -1);
    nu.comp.emplace("*", m.act(MorKey{"*", "*", -1, 0}));
    REQUIRE(validate_dg_nat(nu).ok);
    DgNat lnu = lan_on_nat(lg, lg, nu);
    CHECK(validate_dg_nat(lnu).ok);
    CHECK(nat_d(lnu) == lan_on_nat(lg, lg, nat_d(nu)));
    CHECK(nat_compose(lnu, lnu) == lan_on_nat(lg, lg, nat_compose(nu, nu)));
    DgNat rnu = ran_on_nat(rg, rg, nu);
    CHECK(validate_dg_nat(rnu).ok);
    CHECK(nat_d(rnu) == ran_on_nat(rg, rg, nat_d(nu)));
    CHECK(nat_compose(rnu, rnu) == ran_on_nat(rg, rg, nat_compose(nu, nu)));
}

TEST_CASE("transposition rejects families that are not natural") {
    DgFunctor id2 = DgFunctor::identity(A2);
    DgModule g = representable(A2, "a");
    LanData lg = lan(id2, g);
    RanData rg = ran(id2, g);

    DgNat bad = nat_identity(g);
    bad.comp.at("b") = bad.comp.at("b").scaled(Scalar(2));
    CHECK_THROWS_AS(lan_transpose(lg, g, bad), std::invalid_argument);
    CHECK_THROWS_AS(ran_transpose(rg, g, bad), std::invalid_argument);

    // degree or endpoint mismatches are rejected up front
    CHECK_THROWS_AS(lan_transpose(lg, g, nat_zero(g, g, -1)), std::invalid_argument);
    CHECK_THROWS_AS(ran_transpose(rg, representable(A2, "b"), nat_identity(g)), std::invalid_argument);
}

TEST_CASE("transposition is an explicit bijection of transformation complexes") {
    auto [sub, j] = a_into_a2();
    DgModule g = random_module(sub, 170);
    DgModule h = random_module(A2, 171);
    LanData lg = lan(j, g);
    RanData rg = ran(j, g);

    HomIso li = lan_hom_iso(lg, h);
    for (int n : li.upper.e.cx.space.degrees()) {
        CHECK(li.upper.e.cx.dim(n) == li.lower.e.cx.dim(n));
        CHECK(li.iso.block(n).invertible());
    }
    CHECK(li.lower.e.cx.d.compose(li.iso) == li.iso.compose(li.upper.e.cx.d));
    // the matrix agrees with the elementwise transposition on closed elements
    for (const DgNat& alpha : z0_hom(lg.value, h)) {
        Vec up = li.upper.nat_coords(alpha);
        CHECK(li.iso.apply(0, up) == li.lower.nat_coords(lan_transpose_inv(lg, h, alpha)));
    }

    HomIso ri = ran_hom_iso(rg, h);
    for (int n : ri.upper.e.cx.space.degrees()) {
        CHECK(ri.upper.e.cx.dim(n) == ri.lower.e.cx.dim(n));
        CHECK(ri.iso.block(n).invertible());
    }
    CHECK(ri.lower.e.cx.d.compose(ri.iso) == ri.iso.compose(ri.upper.e.cx.d));
    for (const DgNat& alpha : z0_hom(h, rg.value)) {
        Vec up = ri.upper.nat_coords(alpha);
        CHECK(ri.iso.apply(0, up) == ri.lower.nat_coords(ran_transpose_inv(rg, h, alpha)));
    }
}

TEST_CASE("transposition is natural in the test module") {
    auto [sub, j] = a_into_a2();
    DgModule g = representable(sub, "a");
    LanData lg = lan(j, g);
    RanData rg = ran(j, g);
    DgModule s1 = random_module(A2, 40);
    DgModule s2 = random_module(A2, 41);

    for (const DgNat& alpha : z0_hom(lg.value, s1))
        for (const DgNat& rho : z0_hom(s1, s2))
            CHECK(lan_transpose_inv(lg, s2, nat_compose(rho, alpha)) ==
                  nat_compose(restrict_nat(j, rho), lan_transpose_inv(lg, s1, alpha)));
    for (const DgNat& alpha : z0_hom(s1, rg.value))
        for (const DgNat& rho : z0_hom(s2, s1))
            CHECK(ran_transpose_inv(rg, s2, nat_compose(alpha, rho)) ==
                  nat_compose(ran_transpose_inv(rg, s1, alpha), restrict_nat(j, rho)));
}

TEST_CASE("extensions of a shifted point module") {
    Complex shifted = Complex::point(1, "s");
    DgModule m = module_over_point(K1, shifted);
    DgFunctor id1 = DgFunctor::identity(K1);
    LanData lg = lan(id1, m);
    RanData rg = ran(id1, m);
    CHECK(dims_of(lg.value.value("*")) == std::map<int, size_t>{{1, 1}});
    CHECK(dims_of(rg.value.value("*")) == std::map<int, size_t>{{1, 1}});
    CHECK(transfer_check(id1, m).ok);
    CHECK(adjunction_check(id1, m, random_module(K1, 172)).ok);
}

TEST_CASE("the unit and counit equations determine the transported transformation") {
    auto [sub, j] = a_into_a2();
    DgModule g1 = representable(sub, "a");
    DgModule g2 = random_module(sub, 173);
    LanData l1 = lan(j, g1), l2 = lan(j, g2);
    RanData r1 = ran(j, g1), r2 = ran(j, g2);

    std::vector<DgNat> etas = z0_hom(g1, g2);
    // include a non-closed homogeneous transformation of every degree
    NatData nd = dgnat_complex(g1, g2);
    const Complex& t = nd.e.cx;
    for (int n : t.space.degrees())
        for (size_t e = 0; e < t.dim(n); ++e) {
            Vec v(t.dim(n), Scalar(0));
            v[e] = Scalar(1);
            etas.push_back(nd.to_nat(n, v));
        }
    for (const DgNat& eta : etas) {
        CHECK(nat_compose(restrict_nat(j, lan_on_nat(l1, l2, eta)), l1.unit) ==
              nat_compose(l2.unit, eta));
        CHECK(nat_compose(r2.counit, restrict_nat(j, ran_on_nat(r1, r2, eta))) ==
              nat_compose(eta, r1.counit));
    }
}
