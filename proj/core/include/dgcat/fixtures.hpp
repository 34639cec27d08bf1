#pragma once

#include "dgcat/category.hpp"
#include "dgcat/ends.hpp"

#include <cstdint>

namespace dgcat {

/* One object "*", hom = K·1 at degree 0, d = 0. */
DgCategory k1();

/* Two objects a, b; hom(a,b) = K·u at degree 0, both identities, d = 0. */
DgCategory a2();

/* One object "*"; hom = K·1 @0 ⊕ K·e @-1 with d(e) = 1 and e∘e = 0. */
DgCategory d1();

/* The contractible two-term complex x@-1 -> y@0 with d = id. */
Complex two_term_contractible();

/* Seed-deterministic valid dg-category: the endomorphism category of 1-3 random
 * sphere/disk complexes (hom complexes, honest map composition), followed by a
 * random invertible degreewise change of basis on every hom complex. Transport of
 * structure keeps every axiom, so the result is valid by construction. Bounds:
 * ≤3 objects, hom degrees within [-2,2], per-degree hom dims ≤2. */
DgCategory random_category(uint64_t seed);

struct Corruption {
    DgCategory corrupted;
    std::string description;
};

/* Flips the sign of one nonzero composition-table or differential entry — the first
 * candidate in seed order whose flip the validator actually detects (a blind flip
 * can land on a rescaling that yields an isomorphic valid category). Throws
 * std::logic_error if no detectable flip exists (cannot happen for categories with a
 * nonzero identity). */
Corruption inject_corruption(const DgCategory& c, uint64_t seed);

/* Functor a -> b, both objects to "*", everything to the identity. */
DgFunctor collapse_a2(CatPtr a2_cat, CatPtr k1_cat);

/* The module over d1() with value the contractible two-term complex, e acting as the
 * degree -1 map y |-> x; the unique action making the differential discipline hold. */
DgModule d1_two_term_module(CatPtr d1_cat);

/* Transport of structure along per-object degreewise invertible base changes
 * (values, actions); the result is a module isomorphic to m, valid by construction. */
DgModule conjugate_module(const DgModule& m,
                          const std::map<std::string, std::map<int, Matrix>>& p);

/* Seed-deterministic valid module: a direct sum of one or two representables with a
 * random degreewise change of basis applied at every object. */
DgModule random_module(CatPtr base, uint64_t seed);

/* Deterministic pseudo-random bifunctor over c: rotates through the regular hom
 * bifunctor, a tensor of random one-sided modules, and a transformation-type
 * bifunctor between random modules. Valid by construction. */
Bifunctor random_bifunctor(const CatPtr& c, uint64_t seed);

}  // namespace dgcat
