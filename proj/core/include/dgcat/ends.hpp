#pragma once

#include "dgcat/module.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dgcat {

/* Functor of two variables C^op ⊗ D -> complexes, packaged as a dg-module over
 * the tensor category `contra` ⊗ `co`, where `contra` is handed over already
 * opposed. All Koszul signs live inside the module action; the end/coend
 * constructions below are sign-free in these coordinates. */
struct Bifunctor {
    CatPtr contra;  // first tensor factor (an opposite category)
    CatPtr co;      // second tensor factor
    std::shared_ptr<const TensorCategory> tens;
    CatPtr base;    // make_cat(tens->cat); base of `mod`
    DgModule mod;

    const Complex& value(const std::string& a, const std::string& b) const;
    /* T(u ⊗ 1_b) for homogeneous u : a -> a' in `contra`. */
    GradedMap act1(const Element& u, const std::string& b) const;
    /* T(1_a ⊗ v) for homogeneous v : b -> b' in `co`. */
    GradedMap act2(const std::string& a, const Element& v) const;
};

/* Structural soundness: factor bookkeeping plus the module laws over the tensor
 * category (which encode functoriality, interchange and Leibniz). */
ValidationReport validate_bifunctor(const Bifunctor& t);

/* T(x,y) = hom_C(x,y) with (α^op⊗β)·f = (-1)^{|α|(|β|+|f|)} β∘f∘α. */
Bifunctor hom_bifunctor(const CatPtr& c);

/* T(x,y) = W(x) ⊗ G(y) for W a module over an opposite category and G a module
 * over the covariant factor; morphisms act by Koszul-signed tensor of maps. */
Bifunctor tensor_bifunctor(const DgModule& w, const DgModule& g);

/* T(x,y) = Hom(F(x), G(y)) for modules F, G over the same base; morphisms act
 * by (α^op⊗β)·h = (-1)^{|α|(|β|+|h|)} G(β)∘h∘F(α). */
Bifunctor nat_bifunctor(const DgModule& f, const DgModule& g);

/* End over C of T (requires contra to be the opposite of co): the subcomplex of
 * ⊕_A T(A,A) cut by T(1_A⊗f)(x_A) = T(f⊗1_B)(x_B) for every basis f : A -> B. */
struct EndData {
    Complex total;                    // ⊕_A T(A,A)
    DirectSum sum;                    // offsets, summand order = `objects`
    std::vector<std::string> objects;
    Complex cx;                       // the end
    GradedMap incl;                   // cx -> total, degree-0 chain map
    std::map<std::string, GradedMap> legs;  // λ_A : cx -> T(A,A)
};
EndData end_of_bifunctor(const Bifunctor& t);

/* Factor a wedge (degree-0 chain maps w_A : W -> T(A,A) with
 * T(1⊗f)∘w_A = T(f⊗1)∘w_B) uniquely through the end; throws
 * std::invalid_argument if the family is not a wedge. */
GradedMap factor_through_end(const EndData& e, const Complex& w,
                             const std::map<std::string, GradedMap>& legs);

/* Coend over C of T: quotient of ⊕_A T(A,A) by the span of
 * T(1_{A1}⊗f)(x) - T(f⊗1_{A2})(x) over basis f : A2 -> A1, x ∈ T(A1,A2). */
struct CoendData {
    Complex total;
    DirectSum sum;
    std::vector<std::string> objects;
    std::map<int, Matrix> relations;  // generator columns per degree
    Complex cx;                       // the coend
    GradedMap proj;                   // total -> cx, degree-0 chain map
    GradedMap section;                // linear splitting of proj (not a chain map)
    std::map<std::string, GradedMap> ins;  // μ_A : T(A,A) -> cx
};
CoendData coend_of_bifunctor(const Bifunctor& t);

/* Factor a cowedge (degree-0 chain maps c_A : T(A,A) -> W with
 * c_{A1}∘T(1⊗f) = c_{A2}∘T(f⊗1)) uniquely through the coend; throws
 * std::invalid_argument if the family is not a cowedge. */
GradedMap factor_through_coend(const CoendData& c, const Complex& w,
                               const std::map<std::string, GradedMap>& legs);

/* Degree-deg descent: given maps c_A : T(A,A) -> W of common degree deg whose
 * assembled sum kills the coend relations degreewise, return the induced map
 * on the coend. No chain condition is imposed (used to transport module
 * actions, which obey the Leibniz rule instead of commuting with d). Throws
 * std::invalid_argument if the relations are not killed. */
GradedMap descend_through_coend(const CoendData& c, const GradedSpace& w, int deg,
                                const std::map<std::string, GradedMap>& legs);

/* Complex of graded transformations F -> G as the end of Hom(F-, G=). Elements
 * of degree n are exactly the transformations with the sign-twisted naturality
 * G(f)∘η_X = (-1)^{n|f|} η_Y∘F(f); d is the componentwise differential. */
struct NatData {
    DgModule from, to;
    Bifunctor t;
    std::map<std::pair<std::string, std::string>, HomComplex> homs;
    EndData e;

    DgNat to_nat(int deg, const Vec& coords) const;
    /* End coordinates of a transformation; throws std::invalid_argument if the
     * components are not natural. */
    Vec nat_coords(const DgNat& eta) const;
};
NatData dgnat_complex(const DgModule& f, const DgModule& g);

/* Basis of the closed degree-0 transformations F -> G (the chain maps F -> G up
 * to nothing: Z^0 of the transformation complex). */
std::vector<DgNat> z0_hom(const DgModule& f, const DgModule& g);

/* Evaluation at the identity: Nat(Hom(a,-), G) -> G(a), η ↦ η_a(1_a). Returns
 * the transformation complex plus the evaluation, a degree-0 chain isomorphism;
 * throws std::logic_error if evaluation fails to be one. */
struct YonedaIso {
    NatData nat;
    GradedMap eval;  // nat.e.cx -> G(a)
};
YonedaIso yoneda_iso(const DgModule& g, const std::string& a);

/* W ⊗_C G: coend of (x,y) ↦ W(x)⊗G(y), with per-pair slot tables kept so pure
 * tensors can be pushed into the quotient. */
struct TensorOver {
    DgModule w, g;
    Bifunctor t;
    std::map<std::pair<std::string, std::string>, TensorComplex> pairs;
    CoendData c;

    /* Class of (w-part ⊗ g-part) at object a; w-part has degree i, g-part j. */
    Vec pure_class(const std::string& a, int i, const Vec& wpart, int j, const Vec& gpart) const;
};
TensorOver tensor_over_category(const DgModule& w, const DgModule& g);

/* Weighted limit {W,F} = transformation complex from the weight into F; weighted
 * colimit W ⋆ F = W ⊗_C F. */
NatData weighted_limit(const DgModule& w, const DgModule& f);
TensorOver weighted_colimit(const DgModule& w, const DgModule& f);

}  // namespace dgcat
