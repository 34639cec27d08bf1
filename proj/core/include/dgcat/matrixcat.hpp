#pragma once

#include <functional>

#include "dgcat/ideal.hpp"
#include "dgcat/kan.hpp"

namespace dgcat {

/* A two-sided module: covariant in objects of `row`, contravariant in objects
 * of `col`, stored as a one-sided module over tensor(row, opposite(col)). */
struct Bimodule {
    CatPtr row;
    CatPtr col;
    std::shared_ptr<const TensorCategory> tens;
    CatPtr base;
    DgModule mod;

    /* Value complex at (row object r, col object t); zero complex if absent. */
    const Complex& value(const std::string& r, const std::string& t) const;
};

/* Empty bimodule skeleton over the given sides; fill `mod` afterwards. */
Bimodule bimodule_frame(CatPtr row, CatPtr col);

ValidationReport validate_bimodule(const Bimodule& m);

/* One-dimensional value in degree 0 over two one-object categories. */
Bimodule point_bimodule();

Bimodule zero_bimodule(CatPtr row, CatPtr col);

/* Degree-slanted value over (one-object, endomorphism-with-contraction):
 * contractible 4-dimensional value y@0/x@-1 and w@-1/z@-2, with the degree -1
 * endomorphism acting by the contracting homotopy y->x, w->z. */
Bimodule slanted_bimodule();

/* Hom pairing of a category packaged two-sidedly: value(r, t) = hom(r, t),
 * both indices running over the opposite presentation of c. */
Bimodule hom_bimodule(CatPtr c);

/* Package a one-sided module as a bimodule whose contravariant side is the
 * one-object unit category: value(r, *) = m(r). */
Bimodule module_as_bimodule(const DgModule& m);

/* Basis key, in the tensor presentation `m.base`, of the pure pair of a row
 * basis morphism with a (flipped) col basis morphism. Throws
 * std::invalid_argument when the pair has no slot. */
MorKey bimodule_pure_key(const Bimodule& m, const MorKey& row, const MorKey& col);

/* Inverse of bimodule_pure_key: split a tensor basis key into its factors,
 * returned as (row key, col key) with the col key stated in `m.col`. */
std::pair<MorKey, MorKey> bimodule_split_key(const Bimodule& m, const MorKey& k);

/* Fix the contravariant index at t: a module over `row`. */
DgModule bimodule_slice(const Bimodule& m, const std::string& t);

/* A homogeneous t: T -> T' of degree `deg` in `col` induces a degree-`deg`
 * transformation slice(T') -> slice(T) with components m(1_r (x) t-flipped). */
DgNat slice_map(const Bimodule& m, const Element& t, int deg);

/* Upper-triangular gluing of two categories along a bimodule.  Objects are
 * the disjoint union (labels t:<X> from t_part, r:<Y> from r_part); the only
 * cross homs run t:<X> -> r:<Y> and carry m.value(Y, X).  Composition with a
 * t-side morphism twists by the Koszul sign of the flipped index. */
struct TriangularMatrixCategory {
    CatPtr t_part;
    CatPtr r_part;
    Bimodule m;
    CatPtr lambda;

    static std::string t_label(const std::string& x) { return "t:" + x; }
    static std::string r_label(const std::string& x) { return "r:" + x; }
};

TriangularMatrixCategory matrix_category(CatPtr t_part, const Bimodule& m, CatPtr r_part);

/* Per-degree dimensions of the four hom blocks against the defining data:
 * dim(t:X, t:X') = dim t_part(X, X'), dim(t:X, r:Y') = dim m(Y', X),
 * dim(r:Y, r:Y') = dim r_part(Y, Y'), dim(r:Y, t:X') = 0. */
ValidationReport matrix_hom_formula(const TriangularMatrixCategory& lam);

/* An operation on module categories: sends modules over `src` to modules
 * over `tgt` and transformations to transformations of the same degree. */
struct ModuleOp {
    CatPtr src;
    CatPtr tgt;
    std::function<DgModule(const DgModule&)> on_module;
    std::function<DgNat(const DgNat&)> on_nat;
};

ModuleOp identity_op(CatPtr c);
ModuleOp extension_op(const DgFunctor& f);
ModuleOp restriction_op(const DgFunctor& f);
ModuleOp coextension_op(const DgFunctor& f);
ModuleOp zero_module_op(CatPtr src, CatPtr tgt);

/* Left extension along a fully faithful, object-injective functor, re-indexed
 * on the image so that restricting the result gives back the input module
 * table-for-table (the adjunction unit becomes the identity). */
ModuleOp normalized_extension_op(const DgFunctor& f);

/* Push the covariant side through op: value(s, t) = op(slice(t))(s).  The
 * action of a pure (g, t-flipped) pair is computable two ways — act after
 * slicing down, or slice after acting, with the Koszul interchange sign —
 * and both are evaluated; disagreement (a non-dg op) throws logic_error. */
Bimodule bimodule_pushforward(const ModuleOp& op, const Bimodule& m);

/* The contravariant transformation-space functor of a bimodule: value at a
 * col object t is the complex of transformations slice(t) -> b, with col
 * morphisms acting by signed precomposition with slice_map. */
struct GData {
    Bimodule m;
    DgModule b;
    std::map<std::string, NatData> pieces;
    DgModule value;
};

GData g_functor(const Bimodule& m, const DgModule& b);

/* Image of eps: from.b -> to.b under the transformation-space functor;
 * components postcompose with eps. */
DgNat g_on_nat(const GData& from, const GData& to, const DgNat& eps);

/* Comparison data between the transformation-space functors of m and of its
 * pushforward along the normalized extension over f: per test module X over
 * f.src, xi maps G_m(X) -> G_n(ext X) by applying the extension; per test
 * module L over f.tgt, rho maps G_n(L) -> G_m(res L) by restricting. */
struct CompatibilityData {
    DgFunctor f;
    Bimodule m;
    Bimodule pushed;
    std::vector<DgModule> left_batt;
    std::vector<DgModule> right_batt;
    std::vector<DgNat> xi;
    std::vector<DgNat> rho;
    ValidationReport report;
};

CompatibilityData compatibility_data(const DgFunctor& f, const Bimodule& m, uint64_t seed);

/* Re-verify stored comparison data: xi/rho valid, closed, degree 0; rho
 * degreewise injective; and for every homogeneous basis transformation
 * h: ext(X) -> L the square G_m(res h) == rho_L . G_n(h) . xi_X, reported
 * with the offending (X, L, degree, index) on failure. */
ValidationReport verify_compatibility(const DgFunctor& f, const Bimodule& m, const CompatibilityData& d);

/* Strict comma construction of a functor f against its target category d:
 * objects are triples (D, g, C) with g a closed degree-0 map D -> f(C),
 * enumerated as the zero map plus each canonical basis vector of the closed
 * degree-0 subspace; homs are the subcomplexes of hom(D,D') (+) hom(C,C')
 * cut out by the strict square g' . phi = f(psi) . g. */
struct CommaCategory {
    struct Obj {
        std::string d;
        std::string c;
        Element g;
    };
    CatPtr cat;
    std::map<std::string, Obj> objects;
};

CommaCategory comma_category(CatPtr d, const DgFunctor& f);

/* The six module-category operations of a two-sided gluing situation:
 * quot_* run between modules over the middle category and over the quotient
 * side, sub_* between the sub side and the middle. */
struct RecollementOps {
    ModuleOp quot_extend;
    ModuleOp inflate;
    ModuleOp quot_coextend;
    ModuleOp sub_extend;
    ModuleOp sub_restrict;
    ModuleOp sub_coextend;
};

/* The standard instance: quotient by the factorization ideal through the
 * given objects on one side, the full subcategory on those objects on the
 * other. */
RecollementOps make_quotient_recollement(CatPtr base, const std::vector<std::string>& through);

/* Axioms over a test battery of modules on the middle category: adjunction
 * pairs (quot_extend, inflate), (sub_extend, sub_restrict) and their mirror
 * (inflate, quot_coextend), (sub_restrict, sub_coextend) hold degreewise on
 * transformation complexes; sub_restrict kills inflated modules; inflate,
 * sub_extend, and sub_coextend embed hom complexes fully faithfully. */
ValidationReport dg_recollement_axioms(const RecollementOps& ops, const std::vector<DgModule>& battery);

/* Transport the triangular gluing across jbang: the same col side over the
 * pushed bimodule, with jbang.tgt replacing the row side. */
TriangularMatrixCategory build_lambda_variant(const ModuleOp& jbang, const Bimodule& m);

}  // namespace dgcat
