#pragma once

#include "dgcat/category.hpp"

namespace dgcat {

/* Same presentation: pointer identity or structural equality. */
bool same_base(const CatPtr& a, const CatPtr& b);

/* Left dg-module: a dg-functor into complexes, presented by value complexes per
 * object and a degree-|f| graded map per homogeneous basis morphism f (absent
 * entries are zero). Actions of composites are always derived, never stored. */
struct DgModule {
    CatPtr base;
    std::map<std::string, Complex> values;
    std::map<MorKey, GradedMap> action;

    const Complex& value(const std::string& x) const;
    GradedMap act(const MorKey& k) const;
    /* Action of a coefficient vector in hom(x,y)^deg (linear extension). */
    GradedMap act_vec(const std::string& x, const std::string& y, int deg, const Vec& v) const;
    /* Action of a homogeneous element; `deg` fixes the degree when e is zero. */
    GradedMap act_element(const Element& e, int deg) const;

    bool operator==(const DgModule&) const;
};

/* Identity/composition/differential discipline checked on all basis pairs. */
ValidationReport validate_dg_module(const DgModule&);

/* Dg-functor between finite presentations: object map plus the image element of
 * every homogeneous basis morphism (homogeneous of the same degree; absent = 0). */
struct DgFunctor {
    CatPtr src, tgt;
    std::map<std::string, std::string> ob;
    std::map<MorKey, Element> mor;

    const std::string& on_ob(const std::string& x) const;
    Element on_element(const Element& e) const;

    static DgFunctor identity(CatPtr c);
};

ValidationReport validate_dg_functor(const DgFunctor&);

DgFunctor compose_functor(const DgFunctor& g, const DgFunctor& f);

/* The induced functor between the opposite categories (same data, arrows
 * reversed on both sides). */
DgFunctor opposite_functor(const DgFunctor& f);

/* Name-preserving inclusion of a full subcategory presentation. */
DgFunctor inclusion_functor(CatPtr sub, CatPtr whole);

/* Restriction of scalars F_*(S) = S∘F. */
DgModule restrict_module(const DgFunctor& f, const DgModule& s);

DgModule zero_module(CatPtr base);

/* Covariant representable Hom(a,-): values hom(a,x), action j ↦ f∘j. */
DgModule representable(CatPtr base, const std::string& a);

/* Contravariant representable Hom(-,a) as a module over opposite(base); the Koszul
 * sign j ↦ (-1)^{|f||j|} j∘f is exactly opposite composition, so this is the
 * covariant representable of the opposite presentation. */
DgModule yoneda_module(CatPtr base, const std::string& a);

/* Module over a one-object category whose hom is K·1 at degree 0. */
DgModule module_over_point(CatPtr base, const Complex& v);

/* Direct sum of modules over a common base; summand s is tagged "s<index>" in the
 * value labels. */
DgModule module_direct_sum(const std::vector<DgModule>& parts);

/* Degree-n dg-natural transformation with sign-twisted naturality
 * G(f)∘η_X = (-1)^{n|f|} η_Y∘F(f). */
struct DgNat {
    DgModule from, to;
    int deg = 0;
    std::map<std::string, GradedMap> comp;  // absent component = zero

    GradedMap at(const std::string& x) const;
    DgNat operator+(const DgNat&) const;
    DgNat operator-(const DgNat&) const;
    DgNat scaled(const Scalar&) const;
    bool is_zero() const;
    bool operator==(const DgNat&) const;
};

ValidationReport validate_dg_nat(const DgNat&);

DgNat nat_identity(const DgModule& m);
DgNat nat_zero(const DgModule& f, const DgModule& g, int deg);
/* Vertical composition (componentwise; degrees add, no sign). */
DgNat nat_compose(const DgNat& outer, const DgNat& inner);
/* Componentwise hom-complex differential d(η)_X = d∘η_X - (-1)^{|η|} η_X∘d. */
DgNat nat_d(const DgNat&);
/* Whisker along a functor: (η∘F)_X = η_{F(X)}, a DgNat between restrictions. */
DgNat restrict_nat(const DgFunctor& f, const DgNat& eta);

}  // namespace dgcat
