#pragma once

#include "dgcat/complex.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dgcat {

/* One homogeneous basis morphism: index `idx` into the degree-`deg` basis of
 * hom(src,tgt). */
struct MorKey {
    std::string src, tgt;
    int deg = 0;
    size_t idx = 0;
    auto operator<=>(const MorKey&) const = default;
};

/* Key of one composable basis pair g∘f, f: x -> y, g: y -> z. */
struct CompKey {
    std::string x, y, z;
    int gdeg = 0;
    size_t gidx = 0;  // g in hom(y,z)
    int fdeg = 0;
    size_t fidx = 0;  // f in hom(x,y)
    auto operator<=>(const CompKey&) const = default;
};

/* Element of one hom complex: degree -> coefficient vector. Zero vectors are never
 * stored, so operator== is equality of elements. */
struct Element {
    std::string src, tgt;
    std::map<int, Vec> coords;

    bool is_zero() const { return coords.empty(); }
    bool homogeneous() const { return coords.size() == 1; }
    int degree() const;  // throws unless homogeneous
    Vec at(int deg, size_t dim) const;  // materialized coefficient vector

    Element operator+(const Element&) const;
    Element operator-(const Element&) const;
    Element scaled(const Scalar&) const;
    void normalize();  // drop zero vectors
    bool operator==(const Element&) const = default;
};

/* Finite presentation of a dg-category: ordered objects, hom complexes per ordered
 * pair (absent pair = zero complex), sparse composition table on homogeneous basis
 * pairs, and identity coordinates per object. Bilinearity extends the basis tables;
 * the validator checks the axioms on bases, which suffices by linearity. */
struct DgCategory {
    std::vector<std::string> objects;
    std::map<std::pair<std::string, std::string>, Complex> homs;
    std::map<CompKey, Vec> comp;        // coords of g∘f in hom(x,z)^{gdeg+fdeg}
    std::map<std::string, Vec> units;   // coords in hom(x,x)^0

    bool has_object(const std::string& x) const;
    const Complex& hom(const std::string& x, const std::string& y) const;
    size_t hom_dim(const std::string& x, const std::string& y, int deg) const;

    Element zero_element(const std::string& x, const std::string& y) const;
    Element basis_element(const MorKey& k) const;
    Element element(const std::string& x, const std::string& y, int deg, const Vec& v) const;
    Element identity(const std::string& x) const;

    /* Bilinear composition g∘f via the table. */
    Element compose(const Element& g, const Element& f) const;
    /* Hom-complex differential of an element. */
    Element d_of(const Element& e) const;

    /* All homogeneous basis morphisms, in deterministic order. */
    std::vector<MorKey> basis_morphisms() const;

    bool operator==(const DgCategory&) const = default;
};

using CatPtr = std::shared_ptr<const DgCategory>;
CatPtr make_cat(DgCategory c);

/* Checks d² = 0 per hom, table shapes, unit laws, associativity on all composable
 * basis triples, Leibniz d(g∘f) = d(g)∘f + (-1)^{|g|} g∘d(f) on all basis pairs, and
 * d(1) = 0. */
ValidationReport validate_dg_category(const DgCategory&);

/* Same objects and hom complexes (hom^op(x,y) = hom(y,x), identical differential);
 * composition picks up the Koszul sign g^op∘f^op = (-1)^{|f||g|} (f∘g)^op. */
DgCategory opposite_category(const DgCategory&);

/* Tensor product category. Objects are pairs labelled "(a,b)"; hom complexes are
 * tensor complexes of the factor homs; composition carries the interchange sign
 * (α₂⊗β₂)∘(α₁⊗β₁) = (-1)^{|β₂||α₁|} (α₂α₁)⊗(β₂β₁). Slot tables are retained so
 * morphisms can be embedded and split. */
struct TensorCategory {
    DgCategory cat;
    /* slots[(X,Y)][k][idx] identifies basis idx of hom(X,Y)^k with a pure tensor:
     * left factor degree i, left index a, right index b. */
    std::map<std::pair<std::string, std::string>, std::map<int, std::vector<TensorComplex::Slot>>>
        slots;
    std::map<std::string, std::pair<std::string, std::string>> factors;  // label -> (a,b)

    static std::string obj_label(const std::string& a, const std::string& b);
    /* Bilinear pure-tensor embedding of elements α of A and β of B (no sign). */
    Element pure(const Element& alpha, const Element& beta) const;
};
TensorCategory tensor_category(const DgCategory& a, const DgCategory& b);

/* Full subcategory on the listed objects (order preserved from `keep`). */
DgCategory full_subcategory(const DgCategory& c, const std::vector<std::string>& keep);

}  // namespace dgcat
