#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcat/fixtures.hpp"
#include "dgcat/matrixcat.hpp"

using namespace dgcat;

namespace {

const CatPtr K1 = make_cat(k1());
const CatPtr A2 = make_cat(a2());
const CatPtr D1 = make_cat(d1());

/* One-object category with a zero endomorphism complex. */
DgCategory zero_cat() {
    DgCategory c;
    c.objects = {"o"};
    c.units.emplace("o", Vec{});
    return c;
}

Vec unit_vec(size_t n, size_t i) {
    Vec v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
}

std::map<int, size_t> dims_of(const Complex& c) {
    std::map<int, size_t> d;
    for (int n : c.space.degrees())
        if (c.dim(n)) d.emplace(n, c.dim(n));
    return d;
}

}  // namespace

TEST_CASE("two-sided value fixtures validate") {
    CHECK(validate_bimodule(point_bimodule()).ok);
    CHECK(validate_bimodule(zero_bimodule(A2, A2)).ok);
    CHECK(validate_bimodule(slanted_bimodule()).ok);
    CHECK(validate_bimodule(hom_bimodule(A2)).ok);
    CHECK(validate_bimodule(hom_bimodule(D1)).ok);
    CHECK(validate_bimodule(module_as_bimodule(random_module(A2, 7))).ok);
}

TEST_CASE("a flat degree -1 action on the contraction slot fails the Leibniz rule") {
    Bimodule bad = bimodule_frame(make_cat(k1()), make_cat(d1()));
    const std::string p = TensorCategory::obj_label("*", "*");
    Complex v;
    v.space.basis[-1] = {"m"};
    v.d = GradedMap::zero(v.space, v.space, 1);
    bad.mod.values.emplace(p, v);
    bad.mod.action.emplace(MorKey{p, p, 0, 0}, GradedMap::id(v.space));
    CHECK_FALSE(validate_bimodule(bad).ok);
}

TEST_CASE("slices of the hom pairing are the contravariant representables") {
    Bimodule hb = hom_bimodule(A2);
    CHECK(bimodule_slice(hb, "a") == yoneda_module(A2, "a"));
    CHECK(bimodule_slice(hb, "b") == yoneda_module(A2, "b"));
    CHECK(bimodule_slice(hom_bimodule(D1), "*") == yoneda_module(D1, "*"));
    Bimodule ra = module_as_bimodule(representable(A2, "a"));
    CHECK(bimodule_slice(ra, "*") == representable(A2, "a"));
}

TEST_CASE("slice maps are twisted-natural and respect units") {
    Bimodule sl = slanted_bimodule();
    Element e = sl.col->basis_element(MorKey{"*", "*", -1, 0});
    DgNat bar = slice_map(sl, e, -1);
    CHECK(bar.deg == -1);
    CHECK(validate_dg_nat(bar).ok);
    CHECK(bar.at("*").block(0).at(0, 0) == Scalar(1));   // y -> x
    CHECK(bar.at("*").block(-1).at(0, 1) == Scalar(1));  // w -> z

    CHECK(slice_map(sl, sl.col->identity("*"), 0) == nat_identity(bimodule_slice(sl, "*")));

    // compose(t2, t1) slices to (-1)^{|t1||t2|} slice(t1) after slice(t2)
    DgNat lhs = slice_map(sl, sl.col->compose(e, e), -2);
    CHECK(lhs == nat_compose(bar, bar).scaled(Scalar::sign(1)));
    CHECK(lhs.is_zero());

    Bimodule hb = hom_bimodule(A2);
    Element uop = hb.col->basis_element(MorKey{"b", "a", 0, 0});
    DgNat baru = slice_map(hb, uop, 0);
    CHECK(validate_dg_nat(baru).ok);
    CHECK(slice_map(hb, hb.col->compose(uop, hb.col->identity("b")), 0) ==
          nat_compose(nat_identity(bimodule_slice(hb, "b")), baru));
}

TEST_CASE("gluing two unit categories along a point gives the arrow shape") {
    Bimodule pb = point_bimodule();
    TriangularMatrixCategory tm = matrix_category(pb.col, pb, pb.row);
    CHECK(validate_dg_category(*tm.lambda).ok);
    CHECK(matrix_hom_formula(tm).ok);
    CHECK(tm.lambda->objects.size() == 2);
    CHECK(tm.lambda->hom("t:*", "t:*").dim(0) == 1);
    CHECK(tm.lambda->hom("r:*", "r:*").dim(0) == 1);
    CHECK(tm.lambda->hom("t:*", "r:*").dim(0) == 1);
    CHECK(tm.lambda->hom("r:*", "t:*").space.total_dim() == 0);

    // the cross generator is a two-sided unit for the corner compositions
    Element g = tm.lambda->element("t:*", "r:*", 0, Vec{Scalar(1)});
    CHECK(tm.lambda->compose(g, tm.lambda->identity("t:*")).at(0, 1) == Vec{Scalar(1)});
    CHECK(tm.lambda->compose(tm.lambda->identity("r:*"), g).at(0, 1) == Vec{Scalar(1)});

    // dropping the corner hom breaks the dimension formula
    TriangularMatrixCategory cut = tm;
    DgCategory bc = *tm.lambda;
    bc.homs.erase({"t:*", "r:*"});
    cut.lambda = make_cat(std::move(bc));
    CHECK_FALSE(matrix_hom_formula(cut).ok);
}

TEST_CASE("gluing along the zero value is the disjoint union") {
    TriangularMatrixCategory tm = matrix_category(A2, zero_bimodule(A2, A2), A2);
    CHECK(validate_dg_category(*tm.lambda).ok);
    CHECK(matrix_hom_formula(tm).ok);
    CHECK(tm.lambda->objects.size() == 4);
    CHECK(tm.lambda->hom("t:a", "t:b").dim(0) == 1);
    CHECK(tm.lambda->hom("r:a", "r:b").dim(0) == 1);
    CHECK(tm.lambda->hom("t:a", "r:a").space.total_dim() == 0);
    CHECK(tm.lambda->hom("t:b", "r:a").space.total_dim() == 0);
}

TEST_CASE("the slanted gluing carries the flip sign in its corner composition") {
    Bimodule sl = slanted_bimodule();
    TriangularMatrixCategory tm = matrix_category(sl.col, sl, sl.row);
    CHECK(validate_dg_category(*tm.lambda).ok);
    CHECK(matrix_hom_formula(tm).ok);
    const Complex& cross = tm.lambda->hom("t:*", "r:*");
    CHECK(cross.dim(0) == 1);
    CHECK(cross.dim(-1) == 2);
    CHECK(cross.dim(-2) == 1);

    Element e = tm.lambda->element("t:*", "t:*", -1, Vec{Scalar(1)});
    Element y = tm.lambda->element("t:*", "r:*", 0, Vec{Scalar(1)});
    Element x = tm.lambda->element("t:*", "r:*", -1, Vec{Scalar(1), Scalar(0)});
    Element w = tm.lambda->element("t:*", "r:*", -1, Vec{Scalar(0), Scalar(1)});
    CHECK(tm.lambda->compose(y, e).at(-1, 2) == Vec{Scalar(1), Scalar(0)});
    CHECK(tm.lambda->compose(w, e).at(-2, 1) == Vec{Scalar(-1)});
    CHECK(tm.lambda->compose(x, e).is_zero());

    // flipping the sign of the w-after-e entry breaks the Leibniz rule
    DgCategory bad = *tm.lambda;
    bad.comp.at(CompKey{"t:*", "t:*", "r:*", -1, 1, -1, 0}) = Vec{Scalar(1)};
    CHECK_FALSE(validate_dg_category(bad).ok);
}

TEST_CASE("normalized extension restricts back to the original module") {
    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    DgFunctor j = inclusion_functor(sub, A2);
    ModuleOp f = normalized_extension_op(j);
    DgModule ra = representable(sub, "a");
    DgModule rnd = random_module(sub, 11);
    CHECK(restrict_module(j, f.on_module(ra)) == ra);
    CHECK(restrict_module(j, f.on_module(rnd)) == rnd);
    CHECK(validate_dg_module(f.on_module(rnd)).ok);

    ModuleOp id = normalized_extension_op(DgFunctor::identity(A2));
    DgModule rm = random_module(A2, 12);
    CHECK(id.on_module(rm) == rm);

    CHECK_THROWS_AS(normalized_extension_op(collapse_a2(A2, K1)).on_module(rm),
                    std::invalid_argument);
}

TEST_CASE("pushforward along the identity returns the same value table") {
    for (Bimodule m : {point_bimodule(), slanted_bimodule(),
                       module_as_bimodule(representable(A2, "a"))}) {
        Bimodule n = bimodule_pushforward(identity_op(m.row), m);
        CHECK(n.mod == m.mod);
    }
    for (uint64_t seed : {5u, 6u, 7u}) {
        CatPtr c = make_cat(random_category(seed));
        Bimodule hb = hom_bimodule(c);
        REQUIRE(validate_bimodule(hb).ok);
        // throws if the square of action against slice maps loses a sign
        Bimodule n = bimodule_pushforward(identity_op(hb.row), hb);
        CHECK(n.mod.values == hb.mod.values);
        bool acts_match = true;
        for (const MorKey& k : hb.base->basis_morphisms())
            acts_match = acts_match && n.mod.act(k) == hb.mod.act(k);
        CHECK(acts_match);
    }
}

TEST_CASE("pushforward along extension and restriction operations") {
    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    DgFunctor j = inclusion_functor(sub, A2);
    ModuleOp f = normalized_extension_op(j);
    Bimodule m = module_as_bimodule(representable(sub, "a"));
    Bimodule n = bimodule_pushforward(f, m);
    CHECK(validate_bimodule(n).ok);
    CHECK(bimodule_slice(n, "*") == f.on_module(bimodule_slice(m, "*")));
    CHECK(n.value("a", "*").dim(0) == 1);
    CHECK(n.value("b", "*").dim(0) == 1);

    Bimodule pb = point_bimodule();
    Bimodule n2 = bimodule_pushforward(restriction_op(collapse_a2(A2, K1)), pb);
    CHECK(validate_bimodule(n2).ok);
    CHECK(n2.value("a", "*").dim(0) == 1);
    CHECK(n2.value("b", "*").dim(0) == 1);
    GradedMap au = n2.mod.act_element(
        n2.tens->pure(A2->basis_element(MorKey{"a", "b", 0, 0}), n2.col->identity("*")), 0);
    CHECK(au.block(0).at(0, 0) == Scalar(1));
}

TEST_CASE("transformation modules out of slices") {
    Bimodule pb = point_bimodule();
    DgModule b0 = module_over_point(pb.row, Complex::point(0, "v"));
    GData g0 = g_functor(pb, b0);
    CHECK(validate_dg_module(g0.value).ok);
    CHECK(dims_of(g0.value.value("*")) == std::map<int, size_t>{{0, 1}});
    DgModule b1 = module_over_point(pb.row, Complex::point(1, "v"));
    CHECK(dims_of(g_functor(pb, b1).value.value("*")) == std::map<int, size_t>{{1, 1}});

    // against the packaged representable this reduces to evaluation at a
    Bimodule ra = module_as_bimodule(representable(A2, "a"));
    CHECK(dims_of(g_functor(ra, representable(A2, "a")).value.value("*")) ==
          std::map<int, size_t>{{0, 1}});
    CHECK(g_functor(ra, representable(A2, "b")).value.value("*").space.total_dim() == 0);
    DgModule rnd = random_module(A2, 21);
    GData gr = g_functor(ra, rnd);
    CHECK(dims_of(gr.value.value("*")) == dims_of(rnd.value("a")));
    CHECK(homology_dims(gr.value.value("*")) == homology_dims(rnd.value("a")));

    // the slanted value makes the action twist sign load-bearing
    Bimodule sl = slanted_bimodule();
    DgModule br = random_module(sl.row, 22);
    GData gs = g_functor(sl, br);
    CHECK(validate_dg_module(gs.value).ok);

    CHECK(g_on_nat(gs, gs, nat_identity(br)) == nat_identity(gs.value));
    DgModule br2 = random_module(sl.row, 23);
    GData gs2 = g_functor(sl, br2);
    NatData nd = dgnat_complex(br, br2);
    for (int n : nd.e.cx.space.degrees()) {
        size_t dn = nd.e.cx.dim(n);
        for (size_t i = 0; i < dn; ++i) {
            DgNat eps = nd.to_nat(n, unit_vec(dn, i));
            DgNat img = g_on_nat(gs, gs2, eps);
            CHECK(validate_dg_nat(img).ok);
            CHECK(nat_d(img) == g_on_nat(gs, gs2, nat_d(eps)));
        }
    }
}

TEST_CASE("compatibility data for a normalized extension") {
    CatPtr sub = make_cat(full_subcategory(*A2, {"a"}));
    DgFunctor j = inclusion_functor(sub, A2);
    Bimodule m = module_as_bimodule(representable(sub, "a"));
    CompatibilityData d = compatibility_data(j, m, 300);
    REQUIRE(d.report.ok);
    CHECK(d.xi.size() == 2);
    CHECK(d.rho.size() == 3);
    CHECK(verify_compatibility(j, m, d).ok);

    // sabotaged comparison data is pinned down by the failing equation
    CompatibilityData bad = d;
    bad.rho[0] = bad.rho[0].scaled(Scalar(-1));
    ValidationReport vr = verify_compatibility(j, m, bad);
    CHECK_FALSE(vr.ok);
    bool pinned = false;
    for (const auto& s : vr.issues)
        pinned = pinned || s.find("compatibility equation fails at (X=") != std::string::npos;
    CHECK(pinned);

    Bimodule pb = point_bimodule();
    CHECK(compatibility_data(DgFunctor::identity(pb.row), pb, 301).report.ok);

    CHECK_FALSE(
        compatibility_data(collapse_a2(A2, K1), module_as_bimodule(representable(A2, "a")), 302)
            .report.ok);
}

TEST_CASE("comma construction over closed degree-zero connecting maps") {
    CommaCategory c1 = comma_category(K1, DgFunctor::identity(K1));
    CHECK(validate_dg_category(*c1.cat).ok);
    CHECK(c1.objects.size() == 2);
    CHECK(c1.cat->hom("(*|z0|*)", "(*|z0|*)").dim(0) == 1);
    CHECK(c1.cat->hom("(*|0|*)", "(*|0|*)").dim(0) == 2);
    CHECK(c1.cat->hom("(*|0|*)", "(*|z0|*)").dim(0) == 1);
    CHECK(c1.cat->hom("(*|z0|*)", "(*|0|*)").dim(0) == 1);

    // functor into the zero-endomorphism category leaves only the source side
    CatPtr z = make_cat(zero_cat());
    DgFunctor f0;
    f0.src = K1;
    f0.tgt = z;
    f0.ob = {{"*", "o"}};
    f0.mor = {{MorKey{"*", "*", 0, 0}, z->zero_element("o", "o")}};
    CommaCategory c2 = comma_category(z, f0);
    CHECK(validate_dg_category(*c2.cat).ok);
    CHECK(c2.objects.size() == 1);
    CHECK(c2.cat->hom("(o|0|*)", "(o|0|*)").dim(0) == 1);

    // picking out an object recovers the arrow-shape gluing dimensions
    DgFunctor fb;
    fb.src = K1;
    fb.tgt = A2;
    fb.ob = {{"*", "b"}};
    fb.mor = {{MorKey{"*", "*", 0, 0}, A2->identity("b")}};
    CommaCategory c3 = comma_category(A2, fb);
    CHECK(validate_dg_category(*c3.cat).ok);
    CHECK(c3.objects.size() == 4);
    Bimodule pb = point_bimodule();
    TriangularMatrixCategory tm = matrix_category(pb.col, pb, pb.row);
    CHECK(c3.cat->hom("(a|z0|*)", "(a|z0|*)").dim(0) == tm.lambda->hom("t:*", "t:*").dim(0));
    CHECK(c3.cat->hom("(b|z0|*)", "(b|z0|*)").dim(0) == tm.lambda->hom("r:*", "r:*").dim(0));
    CHECK(c3.cat->hom("(a|z0|*)", "(b|z0|*)").dim(0) == tm.lambda->hom("t:*", "r:*").dim(0));
    CHECK(c3.cat->hom("(b|z0|*)", "(a|z0|*)").space.total_dim() ==
          tm.lambda->hom("r:*", "t:*").space.total_dim());
}

TEST_CASE("six-operation recollement checks") {
    CHECK(dg_recollement_axioms(make_quotient_recollement(A2, {"b"}),
                                default_battery(A2, 310))
              .ok);
    CHECK(dg_recollement_axioms(make_quotient_recollement(A2, {"a"}),
                                default_battery(A2, 311))
              .ok);

    // degenerate sextuple: unit middle, zero sides
    CatPtr z = make_cat(zero_cat());
    RecollementOps zops{zero_module_op(K1, z), zero_module_op(z, K1), zero_module_op(K1, z),
                        zero_module_op(z, K1), zero_module_op(K1, z), zero_module_op(z, K1)};
    std::vector<DgModule> batt{representable(K1, "*"), zero_module(K1)};
    CHECK(dg_recollement_axioms(zops, batt).ok);

    // a sub extension that forgets everything is flagged as not fully faithful
    RecollementOps bad = make_quotient_recollement(A2, {"b"});
    bad.sub_extend = zero_module_op(bad.sub_extend.src, A2);
    ValidationReport vr = dg_recollement_axioms(bad, default_battery(A2, 312));
    CHECK_FALSE(vr.ok);
    bool flagged = false;
    for (const auto& s : vr.issues)
        flagged = flagged || s.find("fully faithful") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("gluing variants from pushed values") {
    Bimodule pb = point_bimodule();
    CHECK(*build_lambda_variant(identity_op(pb.row), pb).lambda ==
          *matrix_category(pb.col, pb, pb.row).lambda);
    Bimodule sl = slanted_bimodule();
    CHECK(*build_lambda_variant(identity_op(sl.row), sl).lambda ==
          *matrix_category(sl.col, sl, sl.row).lambda);

    CatPtr sub = make_cat(full_subcategory(*A2, {"b"}));
    DgFunctor j = inclusion_functor(sub, A2);
    Bimodule m = module_as_bimodule(representable(sub, "b"));
    TriangularMatrixCategory var = build_lambda_variant(normalized_extension_op(j), m);
    CHECK(validate_dg_category(*var.lambda).ok);
    CHECK(matrix_hom_formula(var).ok);
    CHECK(var.lambda->hom("t:*", "r:a").space.total_dim() == 0);
    CHECK(var.lambda->hom("t:*", "r:b").dim(0) == 1);
}
