#pragma once

#include "dgcat/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace dgcat {

/* Shared result shape for every validator in the library. */
struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(const std::string& what) {
        ok = false;
        issues.push_back(what);
    }
    std::string summary() const;
};

/* Finite-dimensional graded vector space with ordered, per-degree-unique basis
 * labels. Only nonzero degrees are stored. */
struct GradedSpace {
    std::map<int, std::vector<std::string>> basis;

    size_t dim(int d) const {
        auto it = basis.find(d);
        return it == basis.end() ? 0 : it->second.size();
    }
    size_t total_dim() const;
    std::vector<int> degrees() const;
    const std::string& label(int d, size_t i) const;
    bool operator==(const GradedSpace&) const = default;
    bool labels_unique() const;
};

/* Homogeneous degree-n map between graded spaces: block(i) : src^i -> tgt^{i+n}.
 * Zero blocks are never stored, so operator== is equality of maps. */
struct GradedMap {
    GradedSpace src, tgt;
    int deg = 0;
    std::map<int, Matrix> blocks;

    static GradedMap zero(const GradedSpace& s, const GradedSpace& t, int deg);
    static GradedMap id(const GradedSpace& s);

    Matrix block(int i) const;  // materialized with correct shape
    void set_block(int i, const Matrix& m);  // shape-checked; drops zero blocks

    /* this ∘ inner (degrees add). */
    GradedMap compose(const GradedMap& inner) const;
    GradedMap operator+(const GradedMap&) const;
    GradedMap operator-(const GradedMap&) const;
    GradedMap operator-() const;
    GradedMap scaled(const Scalar&) const;
    Vec apply(int i, const Vec& v) const;  // src^i coords -> tgt^{i+deg} coords

    bool is_zero() const { return blocks.empty(); }
    bool operator==(const GradedMap&) const = default;
};

/* Cochain complex: d has degree +1 and d∘d = 0 (checked by validate_complex, not
 * assumed by the container). */
struct Complex {
    GradedSpace space;
    GradedMap d;  // src == tgt == space, deg == +1

    static Complex zero();
    /* One-dimensional complex K in degree n. */
    static Complex point(int n, const std::string& label);
    size_t dim(int k) const { return space.dim(k); }
    bool operator==(const Complex&) const = default;
};

ValidationReport validate_complex(const Complex&);

/* dim H^n for every degree (omits zeros). */
std::map<int, size_t> homology_dims(const Complex&);

/* Total hom complex Hom(M,N)^k = ⊕_i Hom(M^i, N^{i+k}) with the differential
 * d(u) = d_N ∘ u - (-1)^{|u|} u ∘ d_M. `slots[k]` identifies basis vectors of
 * degree k with elementary maps M^i ∋ e_a ↦ e_b ∈ N^{i+k}. */
struct HomComplex {
    struct Slot {
        int i;
        size_t a, b;
    };
    GradedSpace msrc, ntgt;  // the two underlying spaces
    Complex cx;
    std::map<int, std::vector<Slot>> slots;

    Vec coords(const GradedMap& f) const;           // f : M -> N homogeneous, degree k
    GradedMap element(int k, const Vec& coords) const;
    GradedMap basis_map(int k, size_t idx) const;
};
HomComplex hom_complex(const Complex& m, const Complex& n);

/* Tensor complex (M⊗N)^k = ⊕_{i+j=k} M^i ⊗ N^j with
 * d(m⊗n) = dm⊗n + (-1)^{|m|} m⊗dn. `slots[k]` lists (i, a, b) pairs. */
struct TensorComplex {
    struct Slot {
        int i;  // degree of the left factor; right factor degree is k - i
        size_t a, b;
    };
    GradedSpace left, right;
    Complex cx;
    std::map<int, std::vector<Slot>> slots;

    /* Bilinear embedding of a pure tensor of homogeneous elements. */
    Vec pure(int i, const Vec& m, int j, const Vec& n) const;
    /* Koszul tensor of maps: (u⊗v)(m⊗n) = (-1)^{|v||m|} u(m)⊗v(n); needs the slot
     * tables of the target tensor complex, hence a free function below. */
};
TensorComplex tensor_complex(const Complex& m, const Complex& n);

/* u : M -> M' and v : N -> N' homogeneous; returns M⊗N -> M'⊗N' of degree
 * |u|+|v| with the Koszul sign (-1)^{|v| * i} on the M-degree-i slice. */
GradedMap tensor_map(const TensorComplex& src, const TensorComplex& tgt, const GradedMap& u,
                     const GradedMap& v);

/* Kernel and cokernel of a closed degree-0 chain map f : src -> tgt, as complexes
 * with induced differentials plus the canonical inclusion/projection. Throws
 * std::invalid_argument if f is not a degree-0 chain map between the ambient
 * complexes. */
struct Subquotient {
    Complex kernel;
    GradedMap kernel_incl;  // kernel -> src
    Complex coker;
    GradedMap coker_proj;   // tgt -> coker
};
Subquotient subquotient_complex(const Complex& src, const Complex& tgt, const GradedMap& f);

/* Direct sum with provenance labels "<tag>:<label>"; `offsets[t][k]` is the
 * coordinate offset of summand t in total degree k. */
struct DirectSum {
    Complex total;
    std::vector<std::map<int, size_t>> offsets;
};
DirectSum direct_sum(const std::vector<const Complex*>& parts, const std::vector<std::string>& tags);

}  // namespace dgcat
