#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgcat/complex.hpp"
#include "dgcat/matrix.hpp"
#include "dgcat/scalar.hpp"

#include <stdexcept>

using namespace dgcat;

namespace {

Scalar S(long n) { return Scalar(n); }

Matrix mat(size_t r, size_t c, std::initializer_list<long> vals) {
    Matrix m(r, c);
    size_t k = 0;
    for (long v : vals) m.at(k / c, k % c) = S(v), ++k;
    REQUIRE(k == r * c);
    return m;
}

Vec vec(std::initializer_list<long> vals) {
    Vec v;
    for (long x : vals) v.push_back(S(x));
    return v;
}

/* Two-term contractible complex x @ -1 |-> y @ 0. */
Complex contractible() {
    Complex c;
    c.space.basis = {{-1, {"x"}}, {0, {"y"}}};
    c.d = GradedMap::zero(c.space, c.space, 1);
    c.d.set_block(-1, mat(1, 1, {1}));
    return c;
}

}  // namespace

TEST_CASE("rational scalar arithmetic is exact") {
    CHECK(Scalar(1, 2) + Scalar(1, 3) == Scalar(5, 6));
    CHECK(Scalar(2, 4) == Scalar(1, 2));
    CHECK(Scalar(2, 4).str() == "1/2");
    CHECK((Scalar(3) / Scalar(2)) == Scalar(3, 2));
    CHECK(Scalar(4, 9).inv() == Scalar(9, 4));
    CHECK((S(7) - S(7)).is_zero());
    CHECK((S(-1) * S(-1)).is_one());
    CHECK_THROWS_AS(S(1) / S(0), std::domain_error);
    CHECK_THROWS_AS(S(0).inv(), std::domain_error);
}

TEST_CASE("scalar text round-trip") {
    for (const char* t : {"0", "7", "-3/4", "5/6", "-12"}) {
        CHECK(Scalar::parse(t).str() == t);
    }
    CHECK(Scalar::parse("4/8") == Scalar(1, 2));
    CHECK_THROWS_AS(Scalar::parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse(""), std::invalid_argument);
}

TEST_CASE("koszul sign helper") {
    CHECK(Scalar::sign(0).is_one());
    CHECK(Scalar::sign(2).is_one());
    CHECK(Scalar::sign(-2).is_one());
    CHECK(Scalar::sign(1) == S(-1));
    CHECK(Scalar::sign(-1) == S(-1));
    CHECK(Scalar::sign(-3) == S(-1));
}

TEST_CASE("prime field arithmetic") {
    FieldGuard guard(FieldSpec::parse("fp:5"));
    CHECK(S(7) == S(2));
    CHECK(S(7).str() == "2");
    CHECK(S(2) + S(4) == S(1));
    CHECK(S(2).inv() == S(3));
    CHECK(Scalar(1, 2) == S(3));
    CHECK(S(5).is_zero());
    CHECK(S(-1) == S(4));
    CHECK_THROWS_AS(S(1) / S(5), std::domain_error);
}

TEST_CASE("field spec parsing") {
    CHECK(FieldSpec::parse("q") == FieldSpec{});
    CHECK(FieldSpec::parse("fp:7").p == 7);
    CHECK(FieldSpec::parse("fp:7").to_string() == "fp:7");
    CHECK_THROWS_AS(FieldSpec::parse("fp:4"), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::parse("r"), std::invalid_argument);
}

TEST_CASE("matrix products and inverses") {
    Matrix a = mat(2, 2, {1, 1, 0, 1});
    CHECK(Matrix::identity(2) * a == a);
    CHECK(a * Matrix::identity(2) == a);
    CHECK(*a.inverse() == mat(2, 2, {1, -1, 0, 1}));
    CHECK(a.invertible());
    CHECK_FALSE(mat(2, 2, {1, 2, 2, 4}).invertible());
    CHECK((a - a).is_zero());
    CHECK(a.transpose() == mat(2, 2, {1, 0, 1, 1}));
    CHECK(a.apply(vec({3, 2})) == vec({5, 2}));
    CHECK(*a.solve_matrix(a) == Matrix::identity(2));
}

TEST_CASE("rref is canonical") {
    Matrix m = mat(2, 2, {1, 2, 2, 4});
    auto e = m.rref();
    CHECK(e.m == mat(2, 2, {1, 2, 0, 0}));
    CHECK(e.pivots == std::vector<size_t>{0});
    CHECK(e.m.rref().m == e.m);  // idempotent
    CHECK(m.rank() == 1);
    CHECK(mat(3, 2, {0, 1, 1, 0, 1, 1}).rank() == 2);
}

TEST_CASE("kernel basis is canonical") {
    std::vector<size_t> free_cols;
    Matrix k = mat(2, 2, {1, 2, 2, 4}).kernel(free_cols);
    CHECK(k.cols() == 1);
    CHECK(k.column(0) == vec({-2, 1}));
    CHECK(free_cols == std::vector<size_t>{1});
    CHECK((mat(2, 2, {1, 2, 2, 4}) * k).is_zero());
    CHECK(Matrix::identity(3).kernel().cols() == 0);
}

TEST_CASE("solve reports inconsistency") {
    Matrix a = mat(2, 2, {1, 1, 0, 1});
    CHECK(*a.solve(vec({3, 2})) == vec({1, 2}));
    CHECK_FALSE(mat(2, 1, {1, 1}).solve(vec({1, 2})).has_value());
    CHECK(mat(2, 1, {1, 1}).solve(vec({2, 2})).has_value());
}

TEST_CASE("quotient split is a canonical complement") {
    Matrix gens = mat(2, 1, {1, 1});
    QuotientSplit q = quotient_by_columns(gens, 2);
    CHECK(q.kept == std::vector<size_t>{1});
    CHECK(q.proj * q.section == Matrix::identity(1));
    CHECK((q.proj * gens).is_zero());

    QuotientSplit whole = quotient_by_columns(Matrix(2, 0), 2);
    CHECK(whole.kept == std::vector<size_t>{0, 1});
    CHECK(whole.proj == Matrix::identity(2));

    QuotientSplit nothing = quotient_by_columns(Matrix::identity(2), 2);
    CHECK(nothing.kept.empty());
}

TEST_CASE("span membership") {
    Matrix cols = mat(2, 1, {1, 1});
    CHECK(in_span(cols, vec({2, 2})));
    CHECK_FALSE(in_span(cols, vec({1, 0})));
    CHECK(in_span(cols, vec({0, 0})));
}

TEST_CASE("point and zero complexes validate") {
    CHECK(validate_complex(Complex::zero()).ok);
    Complex p = Complex::point(0, "1");
    CHECK(validate_complex(p).ok);
    CHECK(homology_dims(p) == std::map<int, size_t>{{0, 1}});
    CHECK(homology_dims(Complex::zero()).empty());
}

TEST_CASE("contractible complex validates and is acyclic") {
    Complex c = contractible();
    CHECK(validate_complex(c).ok);
    CHECK(homology_dims(c).empty());
}

TEST_CASE("d squared violation is reported with its degree") {
    Complex bad;
    bad.space.basis = {{-1, {"x"}}, {0, {"y"}}, {1, {"z"}}};
    bad.d = GradedMap::zero(bad.space, bad.space, 1);
    bad.d.set_block(-1, mat(1, 1, {1}));
    bad.d.set_block(0, mat(1, 1, {1}));
    auto rep = validate_complex(bad);
    CHECK_FALSE(rep.ok);
    bool mentions = false;
    for (auto& s : rep.issues) mentions |= s.find("-1") != std::string::npos;
    CHECK(mentions);
}

TEST_CASE("hom complex of points") {
    HomComplex h = hom_complex(Complex::point(0, "1"), Complex::point(0, "1"));
    CHECK(h.cx.space.basis == GradedSpace{{{0, {"1@0=>1"}}}}.basis);
    CHECK(h.cx.d.is_zero());

    HomComplex shifted = hom_complex(Complex::point(0, "1"), Complex::point(1, "1"));
    CHECK(shifted.cx.dim(1) == 1);
    CHECK(shifted.cx.space.total_dim() == 1);
}

TEST_CASE("hom complex of the contractible complex") {
    Complex c = contractible();
    HomComplex h = hom_complex(c, c);
    CHECK(validate_complex(h.cx).ok);
    CHECK(h.cx.dim(-1) == 1);
    CHECK(h.cx.dim(0) == 2);
    CHECK(h.cx.dim(1) == 1);
    CHECK(h.cx.space.total_dim() == 4);
    CHECK(homology_dims(h.cx).empty());  // contractible source and target

    // chain maps = Z^0 = multiples of the identity: the degree-0 cycle space is 1-dim
    Matrix d0 = h.cx.d.block(0);
    CHECK(d0.cols() - d0.rank() == 1);
    CHECK(h.cx.d.apply(0, h.coords(GradedMap::id(c.space))) == vec({0}));

    // d(h) for the degree -1 map y |-> x is d∘h + h∘d = identity
    GradedMap hmap = GradedMap::zero(c.space, c.space, -1);
    hmap.set_block(0, mat(1, 1, {1}));
    CHECK(h.element(0, h.cx.d.apply(-1, h.coords(hmap))) == GradedMap::id(c.space));
}

TEST_CASE("hom complex coords round-trip") {
    Complex c = contractible();
    HomComplex h = hom_complex(c, c);
    for (int k : h.cx.space.degrees()) {
        for (size_t i = 0; i < h.cx.dim(k); ++i) {
            GradedMap b = h.basis_map(k, i);
            Vec coords = h.coords(b);
            CHECK(h.element(k, coords) == b);
            CHECK(coords[i].is_one());
        }
    }
}

TEST_CASE("tensor complex dimensions and unit law") {
    Complex c = contractible();
    TensorComplex unit = tensor_complex(Complex::point(0, "1"), c);
    CHECK(unit.cx.dim(-1) == 1);
    CHECK(unit.cx.dim(0) == 1);
    CHECK(validate_complex(unit.cx).ok);

    TensorComplex two = tensor_complex(Complex::point(1, "1"), Complex::point(1, "1"));
    CHECK(two.cx.space.total_dim() == 1);
    CHECK(two.cx.dim(2) == 1);

    TensorComplex cc = tensor_complex(c, c);
    CHECK(validate_complex(cc.cx).ok);
    CHECK(cc.cx.dim(-2) == 1);
    CHECK(cc.cx.dim(-1) == 2);
    CHECK(cc.cx.dim(0) == 1);
    CHECK(homology_dims(cc.cx).empty());
}

TEST_CASE("tensor differential carries the koszul sign") {
    // x⊗x in degree -2: d(x⊗x) = y⊗x + (-1)^{-1} x⊗y = y⊗x - x⊗y
    Complex c = contractible();
    TensorComplex cc = tensor_complex(c, c);
    Vec dxx = cc.cx.d.apply(-2, vec({1}));
    Vec expect = cc.pure(0, vec({1}), -1, vec({1})) - cc.pure(-1, vec({1}), 0, vec({1}));
    CHECK(dxx == expect);
}

TEST_CASE("tensor of maps carries the koszul sign") {
    Complex m = Complex::point(1, "m");
    Complex n0 = Complex::point(0, "n");
    Complex n1 = Complex::point(1, "n");
    TensorComplex src = tensor_complex(m, n0);
    TensorComplex tgt = tensor_complex(m, n1);
    GradedMap u = GradedMap::id(m.space);
    GradedMap v = GradedMap::zero(n0.space, n1.space, 1);
    v.set_block(0, mat(1, 1, {1}));
    GradedMap uv = tensor_map(src, tgt, u, v);
    CHECK(uv.deg == 1);
    CHECK(uv.block(1) == mat(1, 1, {-1}));  // (-1)^{|v|*|m|} = -1
}

TEST_CASE("hom tensor adjunction dimension check") {
    Complex c = contractible();
    Complex lhs = hom_complex(tensor_complex(c, c).cx, c).cx;
    Complex rhs = hom_complex(c, hom_complex(c, c).cx).cx;
    for (int k = -5; k <= 5; ++k) CHECK(lhs.dim(k) == rhs.dim(k));
}

TEST_CASE("subquotient of identity and zero maps") {
    Complex p = Complex::point(0, "1");
    Subquotient id_sq = subquotient_complex(p, p, GradedMap::id(p.space));
    CHECK(id_sq.kernel.space.total_dim() == 0);
    CHECK(id_sq.coker.space.total_dim() == 0);

    Subquotient zero_sq = subquotient_complex(p, p, GradedMap::zero(p.space, p.space, 0));
    CHECK(zero_sq.kernel.dim(0) == 1);
    CHECK(zero_sq.coker.dim(0) == 1);
    CHECK(zero_sq.coker_proj.block(0) == Matrix::identity(1));
}

TEST_CASE("subquotient rejects non-chain maps") {
    // the degree-0 coordinate projection off the contractible complex fails f∘d = d∘f
    Complex c = contractible();
    Complex p = Complex::point(0, "1");
    GradedMap bad = GradedMap::zero(c.space, p.space, 0);
    bad.set_block(0, mat(1, 1, {1}));
    CHECK_THROWS_AS(subquotient_complex(c, p, bad), std::invalid_argument);

    GradedMap wrong_deg = GradedMap::zero(c.space, c.space, 1);
    CHECK_THROWS_AS(subquotient_complex(c, c, wrong_deg), std::invalid_argument);
}

TEST_CASE("subquotient of the degree -1 projection") {
    // x |-> x is a chain map C -> K@-1; kernel = K@0, cokernel = 0
    Complex c = contractible();
    Complex p = Complex::point(-1, "1");
    GradedMap f = GradedMap::zero(c.space, p.space, 0);
    f.set_block(-1, mat(1, 1, {1}));
    Subquotient sq = subquotient_complex(c, p, f);
    CHECK(sq.kernel.dim(0) == 1);
    CHECK(sq.kernel.space.total_dim() == 1);
    CHECK(sq.kernel.d.is_zero());
    CHECK(validate_complex(sq.kernel).ok);
    CHECK(sq.coker.space.total_dim() == 0);
    CHECK(sq.kernel_incl.block(0) == Matrix::identity(1));
}

TEST_CASE("subquotient of the degree 0 inclusion") {
    // 1 |-> y is a chain map K@0 -> C; kernel = 0, cokernel = K@-1 with zero d
    Complex c = contractible();
    Complex p = Complex::point(0, "1");
    GradedMap g = GradedMap::zero(p.space, c.space, 0);
    g.set_block(0, mat(1, 1, {1}));
    Subquotient sq = subquotient_complex(p, c, g);
    CHECK(sq.kernel.space.total_dim() == 0);
    CHECK(sq.coker.dim(-1) == 1);
    CHECK(sq.coker.space.total_dim() == 1);
    CHECK(sq.coker.d.is_zero());
    CHECK(validate_complex(sq.coker).ok);
    CHECK(sq.coker_proj.block(-1) == Matrix::identity(1));
}

TEST_CASE("direct sum concatenates with provenance labels") {
    Complex p = Complex::point(0, "1");
    Complex c = contractible();
    DirectSum ds = direct_sum({&p, &c}, {"p", "c"});
    CHECK(validate_complex(ds.total).ok);
    CHECK(ds.total.dim(-1) == 1);
    CHECK(ds.total.dim(0) == 2);
    CHECK(ds.total.space.label(0, 0) == "p:1");
    CHECK(ds.total.space.label(0, 1) == "c:y");
    CHECK(ds.offsets[1].at(0) == 1);
    CHECK(ds.offsets[1].at(-1) == 0);
    CHECK(homology_dims(ds.total) == std::map<int, size_t>{{0, 1}});
}

TEST_CASE("graded map composition and arithmetic") {
    Complex c = contractible();
    GradedMap d = c.d;
    CHECK(d.compose(d).is_zero());
    CHECK((d - d).is_zero());
    CHECK((d + d) == d.scaled(S(2)));
    CHECK((-d) == d.scaled(S(-1)));
    CHECK(GradedMap::id(c.space).compose(d) == d);
    CHECK(d.compose(GradedMap::id(c.space)) == d);
}
