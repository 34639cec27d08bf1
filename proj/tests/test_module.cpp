#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcat/fixtures.hpp"
#include "dgcat/module.hpp"

using namespace dgcat;

namespace {

const CatPtr K1 = make_cat(k1());
const CatPtr A2 = make_cat(a2());
const CatPtr D1 = make_cat(d1());

}  // namespace

TEST_CASE("identity functor validates") {
    for (const CatPtr& c : {K1, A2, D1}) CHECK(validate_dg_functor(DgFunctor::identity(c)).ok);
}

TEST_CASE("inclusion and collapse functors validate") {
    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    DgFunctor j = inclusion_functor(sub, A2);
    CHECK(validate_dg_functor(j).ok);

    DgFunctor q = collapse_a2(A2, K1);
    CHECK(validate_dg_functor(q).ok);

    DgFunctor qj = compose_functor(q, j);
    CHECK(validate_dg_functor(qj).ok);
    CHECK(qj.on_ob("a") == "*");
}

TEST_CASE("functor violations are reported") {
    DgFunctor f = DgFunctor::identity(D1);
    MorKey e{"*", "*", -1, 0};
    f.mor.at(e) = f.mor.at(e).scaled(Scalar(2));  // F(d e) = 1 but d F(e) = 2
    CHECK_FALSE(validate_dg_functor(f).ok);

    DgFunctor q = collapse_a2(A2, K1);
    q.mor.at(MorKey{"a", "a", 0, 0}) = K1->identity("*").scaled(Scalar(2));  // F(1) != 1
    CHECK_FALSE(validate_dg_functor(q).ok);
}

TEST_CASE("representable modules validate on all fixtures") {
    for (const CatPtr& c : {K1, A2, D1})
        for (const auto& x : c->objects) {
            DgModule m = representable(c, x);
            auto rep = validate_dg_module(m);
            INFO(rep.summary());
            CHECK(rep.ok);
        }
}

TEST_CASE("yoneda modules over a2 have the advertised values") {
    DgModule mb = yoneda_module(A2, "b");  // Hom(-,b) over opposite(a2)
    CHECK(mb.value("a").dim(0) == 1);
    CHECK(mb.value("a").space.label(0, 0) == "u");
    CHECK(mb.value("b").dim(0) == 1);
    CHECK(validate_dg_module(mb).ok);

    DgModule ma = yoneda_module(A2, "a");
    CHECK(ma.value("a").dim(0) == 1);
    CHECK(ma.value("b").space.total_dim() == 0);
    CHECK(validate_dg_module(ma).ok);

    DgModule mk = yoneda_module(K1, "*");
    CHECK(mk.value("*").dim(0) == 1);
    CHECK(validate_dg_module(mk).ok);
}

TEST_CASE("d1 two-term module validates and encodes the differential discipline") {
    DgModule m = d1_two_term_module(D1);
    auto rep = validate_dg_module(m);
    INFO(rep.summary());
    CHECK(rep.ok);

    // act(d e) = act(1) = id must equal d∘act(e) + act(e)∘d
    GradedMap h = m.act(MorKey{"*", "*", -1, 0});
    const Complex& v = m.value("*");
    CHECK(v.d.compose(h) + h.compose(v.d) == GradedMap::id(v.space));

    DgModule bad = m;
    bad.action.at(MorKey{"*", "*", -1, 0}) = h.scaled(Scalar(-1));
    CHECK_FALSE(validate_dg_module(bad).ok);
}

TEST_CASE("restriction of scalars") {
    DgModule s = representable(A2, "a");
    DgFunctor idf = DgFunctor::identity(A2);
    CHECK(restrict_module(idf, s) == s);

    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    DgFunctor j = inclusion_functor(sub, A2);
    DgModule r = restrict_module(j, s);
    CHECK(validate_dg_module(r).ok);
    CHECK(r.value("a").dim(0) == 1);
    CHECK(r.values.count("b") == 0);
}

TEST_CASE("restriction along a composite equals composed restrictions") {
    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    DgFunctor j = inclusion_functor(sub, A2);
    DgFunctor q = collapse_a2(A2, K1);
    DgModule s = module_over_point(K1, two_term_contractible());
    REQUIRE(validate_dg_module(s).ok);
    DgModule once = restrict_module(compose_functor(q, j), s);
    DgModule twice = restrict_module(j, restrict_module(q, s));
    CHECK(once == twice);
}

TEST_CASE("module direct sum") {
    DgModule pa = representable(A2, "a");
    DgModule pb = representable(A2, "b");
    DgModule sum = module_direct_sum({pa, pb});
    CHECK(validate_dg_module(sum).ok);
    CHECK(sum.value("b").dim(0) == 2);  // Hom(a,b) ⊕ Hom(b,b)
    CHECK(sum.value("a").dim(0) == 1);  // Hom(a,a) ⊕ 0
}

TEST_CASE("zero module and module over a point") {
    CHECK(validate_dg_module(zero_module(A2)).ok);
    DgModule m = module_over_point(K1, Complex::point(1, "w"));
    CHECK(validate_dg_module(m).ok);
    CHECK(m.value("*").dim(1) == 1);
}

TEST_CASE("natural transformation validation") {
    DgModule m = d1_two_term_module(D1);
    DgNat id = nat_identity(m);
    CHECK(validate_dg_nat(id).ok);
    CHECK(nat_d(id).is_zero());
    CHECK(nat_compose(id, id) == id);

    // the action of e, packaged as a degree -1 transformation m -> m
    DgNat nu = nat_zero(m, m, -1);
    nu.comp.emplace("*", m.act(MorKey{"*", "*", -1, 0}));
    CHECK(validate_dg_nat(nu).ok);
    CHECK(nat_d(nu) == id);          // d(e-action) = identity, mirroring d(e) = 1
    CHECK(nat_compose(nu, nu).is_zero());

    // mismatched components over a2 break naturality against u
    DgModule pa = representable(A2, "a");
    DgNat bad = nat_identity(pa);
    bad.comp.at("b") = bad.comp.at("b").scaled(Scalar(2));
    CHECK_FALSE(validate_dg_nat(bad).ok);
}

TEST_CASE("naturality is sign twisted for odd degrees") {
    // over D1: naturality of nu against f = e reads M(e)∘nu = (-1)^{(-1)(-1)} nu∘M(e)
    DgModule m = d1_two_term_module(D1);
    GradedMap h = m.act(MorKey{"*", "*", -1, 0});
    CHECK(h.compose(h).is_zero());  // both sides vanish, consistently with the sign
}

TEST_CASE("random modules validate over fixture and random bases") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        for (const CatPtr& c : {K1, A2, D1}) {
            DgModule m = random_module(c, seed);
            auto rep = validate_dg_module(m);
            INFO("seed ", seed, ": ", rep.summary());
            CHECK(rep.ok);
        }
        CatPtr rc = make_cat(random_category(seed + 50));
        DgModule m = random_module(rc, seed);
        auto rep = validate_dg_module(m);
        INFO("random cat seed ", seed, ": ", rep.summary());
        CHECK(rep.ok);
        CHECK(random_module(rc, seed) == m);
    }
}

TEST_CASE("whiskering a nat along a functor") {
    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    DgFunctor j = inclusion_functor(sub, A2);
    DgModule m = random_module(A2, 1);
    DgNat id = nat_identity(m);
    DgNat w = restrict_nat(j, id);
    CHECK(validate_dg_nat(w).ok);
    CHECK(w.from == restrict_module(j, m));
}
