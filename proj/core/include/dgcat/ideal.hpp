#pragma once

#include "dgcat/kan.hpp"

namespace dgcat {

/* Two-sided dg-ideal: for each ordered object pair a graded subspace of the hom
 * complex, stored as one canonical column-span matrix per degree (empty/absent =
 * zero). Valid ideals are closed under the hom differential and under
 * composition with arbitrary basis morphisms on both sides. */
struct DgIdeal {
    CatPtr base;
    std::map<std::pair<std::string, std::string>, std::map<int, Matrix>> span;

    /* Materialized generator matrix (hom_dim x k, possibly k = 0). */
    Matrix gens(const std::string& x, const std::string& y, int n) const;
    bool contains(const Element& e) const;
};

/* Shape, differential closure and two-sided absorption, checked on the stored
 * spans against every basis morphism of the base. */
ValidationReport validate_ideal(const DgIdeal& i);

/* The two-sided ideal of morphisms factoring through the listed objects: the
 * linear span, per pair and total degree, of all composites g∘f whose middle
 * object lies in `through`. Throws std::invalid_argument on unknown labels. */
DgIdeal ideal_from_subcategory(CatPtr base, const std::vector<std::string>& through);

/* Base presentation modulo an ideal. Hom complexes are the canonical coordinate
 * complements, so quotienting by the zero ideal reproduces the base exactly;
 * `project ∘ inflate` is the identity on the quotient. */
struct QuotientCategory {
    CatPtr base;
    DgIdeal ideal;
    CatPtr quotient;
    DgFunctor projection;  // base -> quotient, degreewise surjective
    std::map<std::pair<std::string, std::string>, std::map<int, QuotientSplit>> splits;

    Element project(const Element& e) const;  // base hom -> quotient hom
    Element inflate(const Element& e) const;  // canonical coordinate section
};

/* Throws std::invalid_argument when the ideal fails its invariants. */
QuotientCategory quotient_category(CatPtr base, const DgIdeal& i);

/* A module over the base whose actions kill the ideal, rewritten over the
 * quotient; restriction along the projection reproduces the input
 * table-for-table. Throws std::invalid_argument if some action does not kill
 * the ideal. */
DgModule deflate_module(const QuotientCategory& q, const DgModule& m);

/* Standard test battery over a base: every representable, the zero module, and
 * one seeded random module. */
std::vector<DgModule> default_battery(CatPtr base, uint64_t seed);

/* Verifies the two adjoint triples induced by a full subcategory B of the base
 * C on the given battery of modules over C:
 *   (i)   extension/restriction adjunctions along both the quotient projection
 *         π : C -> C/I_B and the inclusion j : B -> C;
 *   (ii)  modules vanishing on B are exactly the ones inflated from C/I_B,
 *         table-for-table in both directions;
 *   (iii) inflation embeds transformation complexes as an exact equality of
 *         the assembled presentations;
 *   (iv)  both extensions along j are dg-fully faithful.
 * Battery modules are validated first; a corrupt battery fails the report
 * before any recollement check runs. */
ValidationReport recollement_report(CatPtr base, const std::vector<std::string>& through,
                                    const std::vector<DgModule>& battery);

/* The closed-degree-0 shadow of recollement_report: (R1) inflation induces a
 * bijection of closed transformation sets, (R2) kernel-equals-image at the
 * level of closed structure, (R3) adjunction bijections between closed
 * transformation sets. Battery is validated first, as above. */
ValidationReport z0_recollement(CatPtr base, const std::vector<std::string>& through,
                                const std::vector<DgModule>& battery);

}  // namespace dgcat
