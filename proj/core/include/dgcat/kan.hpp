#pragma once

#include "dgcat/ends.hpp"

namespace dgcat {

/* Left extension of a module g along a functor f : A -> C, computed objectwise
 * as the tensor product over A of the restricted representable weight
 * x ↦ hom_C(f(x), c) with g. `pieces` keeps the per-object coend presentations
 * used to build classes and transport transformations. */
struct LanData {
    DgFunctor f;
    DgModule g;
    std::map<std::string, TensorOver> pieces;  // keyed by object of the target
    DgModule value;                            // module over the target
    DgNat unit;                                // g -> value∘f, closed degree 0
};
LanData lan(const DgFunctor& f, const DgModule& g);

/* Right extension of g along f, computed objectwise as the transformation
 * complex from the restricted representable weight x ↦ hom_C(c, f(x)) into g. */
struct RanData {
    DgFunctor f;
    DgModule g;
    std::map<std::string, NatData> pieces;
    DgModule value;
    DgNat counit;  // value∘f -> g, closed degree 0
};
RanData ran(const DgFunctor& f, const DgModule& g);

/* Functoriality of the extensions in the module argument: eta : from.g -> to.g
 * of any degree induces a transformation between the extension values. */
DgNat lan_on_nat(const LanData& from, const LanData& to, const DgNat& eta);
DgNat ran_on_nat(const RanData& from, const RanData& to, const DgNat& eta);

/* Adjoint transposition for lan ⊣ restriction: a closed degree-0
 * beta : g -> h∘f corresponds to lan_transpose(beta) : lan(g) -> h, with
 * inverse alpha ↦ (alpha∘f)∘unit. Throws std::invalid_argument on shape
 * mismatch or when beta is not a closed chain transformation. */
DgNat lan_transpose(const LanData& lg, const DgModule& h, const DgNat& beta);
DgNat lan_transpose_inv(const LanData& lg, const DgModule& h, const DgNat& alpha);

/* Adjoint transposition for restriction ⊣ ran: a closed degree-0
 * beta : h∘f -> g corresponds to ran_transpose(beta) : h -> ran(g), with
 * inverse alpha ↦ counit∘(alpha∘f). */
DgNat ran_transpose(const RanData& rg, const DgModule& h, const DgNat& beta);
DgNat ran_transpose_inv(const RanData& rg, const DgModule& h, const DgNat& alpha);

/* Explicit adjunction isomorphism of transformation complexes for one test
 * module h over the target: `iso` maps `upper` to `lower` by degreewise
 * invertible blocks commuting with the differentials. For the left extension,
 * upper = transformations lan(g) -> h and lower = transformations g -> h∘f;
 * for the right extension, upper = h -> ran(g) and lower = h∘f -> g. Throws
 * std::logic_error if bijectivity or the chain property fails. */
struct HomIso {
    NatData upper, lower;
    GradedMap iso;
};
HomIso lan_hom_iso(const LanData& lg, const DgModule& h);
HomIso ran_hom_iso(const RanData& rg, const DgModule& h);

/* Check both adjunctions against a test module h over the target: the unit and
 * counit are closed natural transformations, the transposition is a degreewise
 * bijection of transformation complexes commuting with differentials, the two
 * transpositions are mutually inverse on every closed degree-0 transformation,
 * and the triangle identities hold. */
ValidationReport adjunction_check(const DgFunctor& f, const DgModule& g, const DgModule& h);

/* True when every hom-level map of f is an isomorphism of complexes. */
bool fully_faithful(const DgFunctor& f);

/* For fully faithful f the extensions restrict back to g: the unit and counit
 * are componentwise isomorphisms, left extensions of representables have the
 * hom dimensions of the target representables, and closed transformations
 * transport bijectively through either extension. */
ValidationReport transfer_check(const DgFunctor& f, const DgModule& g);

}  // namespace dgcat
