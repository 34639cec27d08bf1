#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dgcat/fixtures.hpp"

using namespace dgcat;

namespace {

const CatPtr K1 = make_cat(k1());
const CatPtr A2 = make_cat(a2());
const CatPtr D1 = make_cat(d1());

std::map<int, size_t> dims_of(const Complex& c) {
    std::map<int, size_t> d;
    for (int n : c.space.degrees()) d[n] = c.dim(n);
    return d;
}

/* Independent naturality system: rows of G(f)∘η_X - (-1)^{n|f|} η_Y∘F(f) = 0,
 * assembled straight from module components, bypassing the tensor category. */
std::map<int, Matrix> naturality_system(const DgModule& f, const DgModule& g, const NatData& nd) {
    std::map<int, Matrix> sys;
    const Complex& total = nd.e.total;
    std::map<std::string, size_t> pos;
    for (size_t i = 0; i < nd.e.objects.size(); ++i) pos[nd.e.objects[i]] = i;
    for (int n : total.space.degrees()) {
        size_t dimn = total.dim(n);
        std::vector<Vec> rows;
        for (const MorKey& k : f.base->basis_morphisms()) {
            const HomComplex& hxx = nd.homs.at({k.src, k.src});
            const HomComplex& hyy = nd.homs.at({k.tgt, k.tgt});
            const HomComplex& hxy = nd.homs.at({k.src, k.tgt});
            size_t tdim = hxy.cx.dim(n + k.deg);
            if (!tdim) continue;
            GradedMap gf = g.act(k), ff = f.act(k);
            std::vector<Vec> rws(tdim, Vec(dimn));
            if (size_t dx = hxx.cx.dim(n)) {
                size_t off = nd.e.sum.offsets[pos.at(k.src)].at(n);
                for (size_t s = 0; s < dx; ++s) {
                    Vec cs = hxy.coords(gf.compose(hxx.basis_map(n, s)));
                    for (size_t r = 0; r < tdim; ++r) rws[r][off + s] += cs[r];
                }
            }
            if (size_t dy = hyy.cx.dim(n)) {
                size_t off = nd.e.sum.offsets[pos.at(k.tgt)].at(n);
                Scalar sg = Scalar::sign(n * k.deg);
                for (size_t s = 0; s < dy; ++s) {
                    Vec cs = hxy.coords(hyy.basis_map(n, s).compose(ff));
                    for (size_t r = 0; r < tdim; ++r) rws[r][off + s] -= sg * cs[r];
                }
            }
            for (auto& r : rws)
                if (!is_zero(r)) rows.push_back(std::move(r));
        }
        sys.emplace(n, Matrix::from_columns(dimn, rows).transpose());
    }
    return sys;
}

void check_end_against_oracle(const DgModule& f, const DgModule& g) {
    NatData nd = dgnat_complex(f, g);
    auto sys = naturality_system(f, g, nd);
    for (int n : nd.e.total.space.degrees()) {
        const Matrix& s = sys.at(n);
        Matrix incl = nd.e.incl.block(n);
        CHECK((s * incl).is_zero());
        Matrix k = s.kernel();
        CHECK(k.cols() == nd.e.cx.dim(n));
        for (size_t j = 0; j < k.cols(); ++j) CHECK(in_span(incl, k.column(j)));
    }
    for (int n : nd.e.cx.space.degrees()) {
        for (size_t j = 0; j < nd.e.cx.dim(n); ++j) {
            Vec ej(nd.e.cx.dim(n));
            ej[j] = Scalar::one();
            DgNat eta = nd.to_nat(n, ej);
            CHECK(validate_dg_nat(eta).ok);
            CHECK(nd.nat_coords(eta) == ej);
            CHECK(nat_d(eta) == nd.to_nat(n + 1, nd.e.cx.d.apply(n, ej)));
        }
    }
}

GradedMap random_homotopy(const Complex& c, std::mt19937_64& rng) {
    GradedMap h = GradedMap::zero(c.space, c.space, -1);
    for (int n : c.space.degrees()) {
        size_t rows = c.space.dim(n - 1), cols = c.space.dim(n);
        if (!rows || !cols) continue;
        Matrix m(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) m.at(i, j) = Scalar(long(rng() % 5) - 2);
        h.set_block(n, m);
    }
    return h;
}

void check_factorizations(const Bifunctor& t, std::mt19937_64& rng) {
    EndData e = end_of_bifunctor(t);
    CHECK(factor_through_end(e, e.cx, e.legs) == GradedMap::id(e.cx.space));
    GradedMap h = random_homotopy(e.cx, rng);
    GradedMap u = e.cx.d.compose(h) + h.compose(e.cx.d);
    std::map<std::string, GradedMap> legs;
    for (const auto& [a, leg] : e.legs) legs.emplace(a, leg.compose(u));
    CHECK(factor_through_end(e, e.cx, legs) == u);

    CoendData c = coend_of_bifunctor(t);
    std::map<std::string, GradedMap> ids;
    for (const auto& [a, mu] : c.ins) ids.emplace(a, mu);
    CHECK(factor_through_coend(c, c.cx, ids) == GradedMap::id(c.cx.space));
    GradedMap h2 = random_homotopy(c.cx, rng);
    GradedMap v = c.cx.d.compose(h2) + h2.compose(c.cx.d);
    std::map<std::string, GradedMap> cl;
    for (const auto& [a, mu] : c.ins) cl.emplace(a, v.compose(mu));
    CHECK(factor_through_coend(c, c.cx, cl) == v);
}

void check_coyoneda(const DgModule& w, const CatPtr& a_cat, const std::string& a) {
    TensorOver to = tensor_over_category(w, representable(a_cat, a));
    const Complex& wa = w.value(a);
    for (int n : wa.space.degrees()) CHECK(to.c.cx.dim(n) == wa.dim(n));
    for (int n : to.c.cx.space.degrees()) CHECK(to.c.cx.dim(n) == wa.dim(n));
    const Vec& unit = a_cat->units.at(a);
    GradedMap ev = GradedMap::zero(wa.space, to.c.cx.space, 0);
    for (int n : wa.space.degrees()) {
        size_t dn = wa.dim(n);
        Matrix blk(to.c.cx.dim(n), dn);
        for (size_t j = 0; j < dn; ++j) {
            Vec wv(dn);
            wv[j] = Scalar::one();
            blk.set_column(j, to.pure_class(a, n, wv, 0, unit));
        }
        CHECK(blk.invertible());
        ev.set_block(n, blk);
    }
    CHECK(ev.compose(wa.d) == to.c.cx.d.compose(ev));
}

void check_balanced(const DgModule& w, const DgModule& g) {
    TensorOver to = tensor_over_category(w, g);
    const CatPtr& a_cat = g.base;
    for (const MorKey& k : a_cat->basis_morphisms()) {
        const std::string& a2 = k.src;  // f : a2 -> a1
        const std::string& a1 = k.tgt;
        GradedMap wf = w.act(MorKey{a1, a2, k.deg, k.idx});  // contravariant side
        GradedMap gf = g.act(k);
        for (int i : w.value(a1).space.degrees())
            for (size_t wi = 0; wi < w.value(a1).dim(i); ++wi)
                for (int j : g.value(a2).space.degrees())
                    for (size_t gi = 0; gi < g.value(a2).dim(j); ++gi) {
                        Vec wv(w.value(a1).dim(i));
                        wv[wi] = Scalar::one();
                        Vec gv(g.value(a2).dim(j));
                        gv[gi] = Scalar::one();
                        Vec lhs = to.pure_class(a2, i + k.deg, wf.apply(i, wv), j, gv);
                        Vec rhs = to.pure_class(a1, i, wv, j + k.deg, gf.apply(j, gv));
                        CHECK(lhs == Scalar::sign(k.deg * i) * rhs);
                    }
    }
}

void check_pure_leibniz(const DgModule& w, const DgModule& g) {
    TensorOver to = tensor_over_category(w, g);
    for (const auto& a : g.base->objects) {
        const Complex& wv = w.value(a);
        const Complex& gv = g.value(a);
        for (int i : wv.space.degrees())
            for (size_t wi = 0; wi < wv.dim(i); ++wi)
                for (int j : gv.space.degrees())
                    for (size_t gi = 0; gi < gv.dim(j); ++gi) {
                        Vec wb(wv.dim(i));
                        wb[wi] = Scalar::one();
                        Vec gb(gv.dim(j));
                        gb[gi] = Scalar::one();
                        Vec cls = to.pure_class(a, i, wb, j, gb);
                        Vec dcls = to.c.cx.d.apply(i + j, cls);
                        Vec t1 = to.pure_class(a, i + 1, wv.d.apply(i, wb), j, gb);
                        Vec t2 = to.pure_class(a, i, wb, j + 1, gv.d.apply(j, gb));
                        CHECK(dcls == t1 + Scalar::sign(i) * t2);
                    }
    }
}

}  // namespace

TEST_CASE("bifunctor constructions satisfy the module laws") {
    for (const CatPtr& c : {K1, A2, D1}) {
        auto rep = validate_bifunctor(hom_bifunctor(c));
        INFO(rep.summary());
        CHECK(rep.ok);
        CatPtr op = make_cat(opposite_category(*c));
        CHECK(validate_bifunctor(tensor_bifunctor(random_module(op, 1), random_module(c, 2))).ok);
        CHECK(validate_bifunctor(nat_bifunctor(random_module(c, 3), random_module(c, 4))).ok);
    }
    for (uint64_t s = 0; s < 6; ++s) {
        CatPtr rc = make_cat(random_category(s + 20));
        auto rep = validate_bifunctor(random_bifunctor(rc, s));
        INFO("seed ", s, ": ", rep.summary());
        CHECK(rep.ok);
    }
}

TEST_CASE("ends of the hom bifunctor on the fixtures") {
    EndData e1 = end_of_bifunctor(hom_bifunctor(K1));
    CHECK(dims_of(e1.cx) == std::map<int, size_t>{{0, 1}});
    CHECK(homology_dims(e1.cx) == std::map<int, size_t>{{0, 1}});

    EndData e2 = end_of_bifunctor(hom_bifunctor(A2));
    CHECK(dims_of(e2.cx) == std::map<int, size_t>{{0, 1}});
    // the universal element is the identity family (1_a, 1_b)
    Vec one{Scalar::one()};
    CHECK(e2.legs.at("a").apply(0, one) == A2->units.at("a"));
    CHECK(e2.legs.at("b").apply(0, one) == A2->units.at("b"));

    EndData e3 = end_of_bifunctor(hom_bifunctor(D1));
    CHECK(dims_of(e3.cx) == std::map<int, size_t>{{-1, 1}, {0, 1}});
    CHECK(homology_dims(e3.cx).empty());
}

TEST_CASE("coends of the hom bifunctor on the fixtures") {
    CoendData c1 = coend_of_bifunctor(hom_bifunctor(K1));
    CHECK(dims_of(c1.cx) == std::map<int, size_t>{{0, 1}});

    CoendData c2 = coend_of_bifunctor(hom_bifunctor(A2));
    CHECK(dims_of(c2.cx) == std::map<int, size_t>{{0, 2}});

    CoendData c3 = coend_of_bifunctor(hom_bifunctor(D1));
    CHECK(dims_of(c3.cx) == std::map<int, size_t>{{-1, 1}, {0, 1}});
    CHECK(homology_dims(c3.cx).empty());
}

TEST_CASE("transformation complexes match the brute-force naturality systems") {
    check_end_against_oracle(representable(A2, "a"), representable(A2, "a"));
    check_end_against_oracle(representable(A2, "a"), representable(A2, "b"));
    check_end_against_oracle(representable(A2, "b"), representable(A2, "a"));
    check_end_against_oracle(d1_two_term_module(D1), d1_two_term_module(D1));
    for (uint64_t s = 0; s < 4; ++s) {
        for (const CatPtr& c : {K1, A2, D1})
            check_end_against_oracle(random_module(c, 2 * s), random_module(c, 2 * s + 1));
        CatPtr rc = make_cat(random_category(s + 40));
        check_end_against_oracle(random_module(rc, 2 * s), random_module(rc, 2 * s + 1));
    }
}

TEST_CASE("closed degree-0 transformations between representables") {
    DgModule pa = representable(A2, "a"), pb = representable(A2, "b");

    auto ida = z0_hom(pa, pa);
    REQUIRE(ida.size() == 1);
    CHECK(ida[0] == nat_identity(pa));

    CHECK(z0_hom(pa, pb).empty());  // Nat(Hom(a,-),Hom(b,-)) ≅ hom(b,a) = 0

    auto ba = z0_hom(pb, pa);       // ≅ hom(a,b) = K·u
    REQUIRE(ba.size() == 1);
    GradedMap comp = ba[0].at("b");
    CHECK(comp.block(0) == Matrix::identity(1));  // 1_b ↦ u in coordinates
    CHECK(validate_dg_nat(ba[0]).ok);

    auto dd = z0_hom(representable(D1, "*"), representable(D1, "*"));
    REQUIRE(dd.size() == 1);
    CHECK(dd[0] == nat_identity(representable(D1, "*")));
}

TEST_CASE("evaluation at the identity is a chain isomorphism") {
    for (const CatPtr& c : {K1, A2, D1})
        for (const auto& x : c->objects) {
            for (const auto& y : c->objects) CHECK_NOTHROW(yoneda_iso(representable(c, y), x));
            CHECK_NOTHROW(yoneda_iso(random_module(c, 5), x));
        }
    for (uint64_t s = 0; s < 3; ++s) {
        CatPtr rc = make_cat(random_category(s + 60));
        for (const auto& x : rc->objects) CHECK_NOTHROW(yoneda_iso(random_module(rc, s), x));
    }
}

TEST_CASE("wedge and cowedge factorization, existence and uniqueness") {
    std::mt19937_64 rng(99);
    for (const CatPtr& c : {K1, A2, D1})
        for (uint64_t s = 0; s < 3; ++s) check_factorizations(random_bifunctor(c, s), rng);
    for (uint64_t s = 0; s < 4; ++s)
        check_factorizations(random_bifunctor(make_cat(random_category(s + 80)), s), rng);
}

TEST_CASE("non-wedges and non-cowedges are rejected") {
    DgModule w = yoneda_module(A2, "b");
    DgModule g = representable(A2, "a");
    Bifunctor t = tensor_bifunctor(w, g);

    EndData e = end_of_bifunctor(t);
    REQUIRE(dims_of(e.cx) == std::map<int, size_t>{{0, 1}});
    auto legs = e.legs;
    legs.at("b") = legs.at("b").scaled(Scalar(2));
    CHECK_THROWS_AS(factor_through_end(e, e.cx, legs), std::invalid_argument);

    CoendData cd = coend_of_bifunctor(t);
    REQUIRE(dims_of(cd.cx) == std::map<int, size_t>{{0, 1}});
    std::map<std::string, GradedMap> cl(cd.ins.begin(), cd.ins.end());
    cl.at("b") = cl.at("b").scaled(Scalar(2));
    CHECK_THROWS_AS(factor_through_coend(cd, cd.cx, cl), std::invalid_argument);
}

TEST_CASE("tensor over the category: co-Yoneda evaluation is an isomorphism") {
    check_coyoneda(yoneda_module(A2, "a"), A2, "a");
    check_coyoneda(yoneda_module(A2, "b"), A2, "a");
    check_coyoneda(yoneda_module(A2, "b"), A2, "b");
    check_coyoneda(yoneda_module(D1, "*"), D1, "*");
    for (uint64_t s = 0; s < 3; ++s) {
        CatPtr rc = make_cat(random_category(s + 100));
        CatPtr op = make_cat(opposite_category(*rc));
        for (const auto& x : rc->objects) check_coyoneda(random_module(op, s), rc, x);
    }
}

TEST_CASE("tensor over the category: balancing and Leibniz through the quotient") {
    CatPtr opa = make_cat(opposite_category(*A2));
    CatPtr opd = make_cat(opposite_category(*D1));
    check_balanced(random_module(opa, 7), random_module(A2, 8));
    check_balanced(random_module(opd, 9), random_module(D1, 10));
    check_pure_leibniz(random_module(opd, 11), random_module(D1, 12));
    CatPtr rc = make_cat(random_category(123));
    CatPtr opr = make_cat(opposite_category(*rc));
    check_balanced(random_module(opr, 13), random_module(rc, 14));
    check_pure_leibniz(random_module(opr, 15), random_module(rc, 16));
}

TEST_CASE("weighted limit and colimit agree with their definitions") {
    DgModule w = random_module(A2, 17), f = random_module(A2, 18);
    CHECK(weighted_limit(w, f).e.cx == dgnat_complex(w, f).e.cx);
    CatPtr opa = make_cat(opposite_category(*A2));
    DgModule wr = random_module(opa, 19);
    CHECK(weighted_colimit(wr, f).c.cx == tensor_over_category(wr, f).c.cx);
}
