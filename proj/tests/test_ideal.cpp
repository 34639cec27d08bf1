#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcat/fixtures.hpp"
#include "dgcat/ideal.hpp"

using namespace dgcat;

namespace {

const CatPtr K1 = make_cat(k1());
const CatPtr A2 = make_cat(a2());
const CatPtr D1 = make_cat(d1());

/* Independent closure oracle: a valid ideal span must already be a fixpoint of
 * one round of differential and two-sided composition closure. */
bool closure_is_fixpoint(const DgIdeal& i) {
    const DgCategory& c = *i.base;
    for (const auto& [pair, degs] : i.span) {
        for (const auto& [n, m] : degs) {
            for (size_t j = 0; j < m.cols(); ++j) {
                Element e = c.element(pair.first, pair.second, n, m.column(j));
                if (!i.contains(c.d_of(e))) return false;
                for (const MorKey& k : c.basis_morphisms()) {
                    if (k.src == pair.second && !i.contains(c.compose(c.basis_element(k), e)))
                        return false;
                    if (k.tgt == pair.first && !i.contains(c.compose(e, c.basis_element(k))))
                        return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("factorization ideal through one object of the arrow fixture") {
    DgIdeal i = ideal_from_subcategory(A2, {"b"});
    CHECK(validate_ideal(i).ok);
    CHECK(i.gens("a", "a", 0).cols() == 0);
    CHECK(i.gens("a", "b", 0).cols() == 1);
    CHECK(i.gens("b", "b", 0).cols() == 1);
    CHECK(i.gens("b", "a", 0).cols() == 0);
    CHECK(in_span(i.gens("a", "b", 0), Vec{Scalar(1)}));
    CHECK(in_span(i.gens("b", "b", 0), A2->units.at("b")));
    CHECK(i.contains(A2->basis_element(MorKey{"a", "b", 0, 0})));
    CHECK_FALSE(i.contains(A2->identity("a")));

    DgIdeal ia = ideal_from_subcategory(A2, {"a"});
    CHECK(validate_ideal(ia).ok);
    CHECK(ia.gens("a", "a", 0).cols() == 1);
    CHECK(ia.gens("a", "b", 0).cols() == 1);  // u = u∘1_a factors through a
    CHECK(ia.gens("b", "b", 0).cols() == 0);
}

TEST_CASE("improper and degenerate factorization ideals") {
    DgIdeal all = ideal_from_subcategory(A2, {"a", "b"});
    CHECK(validate_ideal(all).ok);
    for (const auto& [pair, h] : A2->homs)
        for (int n : h.space.degrees())
            CHECK(all.gens(pair.first, pair.second, n).cols() == h.dim(n));

    DgIdeal k = ideal_from_subcategory(K1, {"*"});
    CHECK(validate_ideal(k).ok);
    CHECK(k.gens("*", "*", 0).cols() == 1);

    DgIdeal d = ideal_from_subcategory(D1, {"*"});
    CHECK(validate_ideal(d).ok);
    CHECK(d.gens("*", "*", 0).cols() == 1);
    CHECK(d.gens("*", "*", -1).cols() == 1);

    CHECK_THROWS_AS(ideal_from_subcategory(A2, {"c"}), std::invalid_argument);
    CHECK_THROWS_AS(ideal_from_subcategory(A2, {}), std::invalid_argument);
}

TEST_CASE("factorization ideals are closure fixpoints") {
    CHECK(closure_is_fixpoint(ideal_from_subcategory(A2, {"b"})));
    CHECK(closure_is_fixpoint(ideal_from_subcategory(A2, {"a"})));
    CHECK(closure_is_fixpoint(ideal_from_subcategory(D1, {"*"})));
    for (uint64_t s = 0; s < 3; ++s) {
        CatPtr c = make_cat(random_category(190 + s));
        DgIdeal i = ideal_from_subcategory(c, {c->objects.front()});
        CHECK(validate_ideal(i).ok);
        CHECK(closure_is_fixpoint(i));
    }
}

TEST_CASE("ideal validation rejects non-ideals") {
    DgIdeal bad;  // K·e over the contractible endomorphism fixture: d(e) = 1 escapes
    bad.base = D1;
    Matrix col(1, 1);
    col.at(0, 0) = Scalar(1);
    bad.span[{"*", "*"}].emplace(-1, col);
    ValidationReport v = validate_ideal(bad);
    CHECK_FALSE(v.ok);
    CHECK(v.issues.front().find("differential") != std::string::npos);

    DgIdeal bad2;  // K·1_a over the arrow fixture: u∘1_a = u escapes
    bad2.base = A2;
    bad2.span[{"a", "a"}].emplace(0, col);
    ValidationReport v2 = validate_ideal(bad2);
    CHECK_FALSE(v2.ok);
    CHECK_FALSE(bad2.contains(A2->basis_element(MorKey{"a", "b", 0, 0})));

    CHECK_THROWS_AS(quotient_category(D1, bad), std::invalid_argument);
}

TEST_CASE("quotient by the factorization ideal") {
    QuotientCategory q = quotient_category(A2, ideal_from_subcategory(A2, {"b"}));
    CHECK(validate_dg_category(*q.quotient).ok);
    CHECK(validate_dg_functor(q.projection).ok);
    CHECK(q.quotient->hom_dim("a", "a", 0) == 1);
    CHECK(q.quotient->hom("a", "b").space.total_dim() == 0);
    CHECK(q.quotient->hom("b", "b").space.total_dim() == 0);
    CHECK(q.quotient->hom("b", "a").space.total_dim() == 0);

    // the projection sends u and 1_b to zero and 1_a to the quotient unit
    CHECK(q.project(A2->basis_element(MorKey{"a", "b", 0, 0})).is_zero());
    CHECK(q.project(A2->identity("b")).is_zero());
    CHECK(q.project(A2->identity("a")) == q.quotient->identity("a"));

    // project ∘ inflate is the identity on every quotient basis morphism
    for (const MorKey& k : q.quotient->basis_morphisms())
        CHECK(q.project(q.inflate(q.quotient->basis_element(k))) ==
              q.quotient->basis_element(k));
}

TEST_CASE("quotient by the zero ideal reproduces the base") {
    for (const CatPtr& c : {K1, A2, D1, make_cat(random_category(195)), make_cat(random_category(196))}) {
        DgIdeal z;
        z.base = c;
        CHECK(validate_ideal(z).ok);
        QuotientCategory q = quotient_category(c, z);
        CHECK(*q.quotient == *c);
        CHECK(validate_dg_functor(q.projection).ok);
    }
}

TEST_CASE("quotient by the improper ideal kills every hom") {
    QuotientCategory q = quotient_category(A2, ideal_from_subcategory(A2, {"a", "b"}));
    CHECK(validate_dg_category(*q.quotient).ok);
    for (const auto& x : q.quotient->objects)
        for (const auto& y : q.quotient->objects)
            CHECK(q.quotient->hom(x, y).space.total_dim() == 0);
    // the only module over the zero-hom quotient is the zero module
    CHECK(validate_dg_module(zero_module(q.quotient)).ok);
}

TEST_CASE("module deflation across the projection") {
    QuotientCategory q = quotient_category(A2, ideal_from_subcategory(A2, {"b"}));
    DgModule qa = representable(q.quotient, "a");
    DgModule infl = restrict_module(q.projection, qa);
    CHECK(validate_dg_module(infl).ok);
    CHECK(infl.value("a").space.total_dim() == 1);
    CHECK(infl.value("b").space.total_dim() == 0);
    CHECK(deflate_module(q, infl) == qa);
    CHECK(restrict_module(q.projection, deflate_module(q, infl)) == infl);

    // a module that does not kill the ideal is refused
    CHECK_THROWS_AS(deflate_module(q, representable(A2, "a")), std::invalid_argument);
    CHECK_THROWS_AS(deflate_module(q, representable(A2, "b")), std::invalid_argument);
}

TEST_CASE("recollement report on the arrow fixture") {
    std::vector<DgModule> battery = default_battery(A2, 200);
    ValidationReport rb = recollement_report(A2, {"b"}, battery);
    INFO(rb.summary());
    CHECK(rb.ok);
    ValidationReport ra = recollement_report(A2, {"a"}, battery);
    INFO(ra.summary());
    CHECK(ra.ok);
}

TEST_CASE("recollement degenerates consistently on the point") {
    std::vector<DgModule> battery = default_battery(K1, 201);
    CHECK(recollement_report(K1, {"*"}, battery).ok);
    CHECK(z0_recollement(K1, {"*"}, battery).ok);
}

TEST_CASE("closed-level recollement") {
    std::vector<DgModule> battery = default_battery(A2, 202);
    CHECK(z0_recollement(A2, {"b"}, battery).ok);
    CHECK(z0_recollement(A2, {"a"}, battery).ok);
}

TEST_CASE("corrupted battery is rejected before recollement checks") {
    std::vector<DgModule> battery = default_battery(A2, 203);
    battery[0].action[MorKey{"a", "a", 0, 0}] =
        battery[0].act(MorKey{"a", "a", 0, 0}).scaled(Scalar(2));  // breaks the unit law
    REQUIRE_FALSE(validate_dg_module(battery[0]).ok);
    ValidationReport r = recollement_report(A2, {"b"}, battery);
    CHECK_FALSE(r.ok);
    CHECK(r.issues.front().find("battery module 0") != std::string::npos);
    ValidationReport z = z0_recollement(A2, {"b"}, battery);
    CHECK_FALSE(z.ok);
    CHECK(z.issues.front().find("battery module 0") != std::string::npos);
}
