#include "dgcat/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dgcat {

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::string s = "failed (" + std::to_string(issues.size()) + " issue(s))";
    for (const auto& i : issues) s += "\n  - " + i;
    return s;
}

size_t GradedSpace::total_dim() const {
    size_t n = 0;
    for (const auto& [d, ls] : basis) n += ls.size();
    return n;
}

std::vector<int> GradedSpace::degrees() const {
    std::vector<int> ds;
    for (const auto& [d, ls] : basis)
        if (!ls.empty()) ds.push_back(d);
    return ds;
}

const std::string& GradedSpace::label(int d, size_t i) const {
    auto it = basis.find(d);
    if (it == basis.end() || i >= it->second.size())
        throw std::out_of_range("graded space: no basis vector " + std::to_string(i) + " in degree " +
                                std::to_string(d));
    return it->second[i];
}

bool GradedSpace::labels_unique() const {
    for (const auto& [d, ls] : basis) {
        std::set<std::string> seen(ls.begin(), ls.end());
        if (seen.size() != ls.size()) return false;
    }
    return true;
}

GradedMap GradedMap::zero(const GradedSpace& s, const GradedSpace& t, int deg) {
    GradedMap f;
    f.src = s;
    f.tgt = t;
    f.deg = deg;
    return f;
}

GradedMap GradedMap::id(const GradedSpace& s) {
    GradedMap f = zero(s, s, 0);
    for (const auto& [d, ls] : s.basis)
        if (!ls.empty()) f.blocks.emplace(d, Matrix::identity(ls.size()));
    return f;
}

Matrix GradedMap::block(int i) const {
    auto it = blocks.find(i);
    if (it != blocks.end()) return it->second;
    return Matrix(tgt.dim(i + deg), src.dim(i));
}

void GradedMap::set_block(int i, const Matrix& m) {
    if (m.rows() != tgt.dim(i + deg) || m.cols() != src.dim(i))
        throw std::invalid_argument("graded map: block shape mismatch in degree " + std::to_string(i));
    if (m.is_zero())
        blocks.erase(i);
    else
        blocks.emplace(i, m).first->second = m;
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
    if (!(inner.tgt == src)) throw std::invalid_argument("graded map: compose shape mismatch");
    GradedMap f = zero(inner.src, tgt, deg + inner.deg);
    for (const auto& [i, m] : inner.blocks) {
        auto it = blocks.find(i + inner.deg);
        if (it == blocks.end()) continue;
        Matrix prod = it->second * m;
        if (!prod.is_zero()) f.blocks.emplace(i, prod);
    }
    return f;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (!(src == o.src) || !(tgt == o.tgt) || deg != o.deg)
        throw std::invalid_argument("graded map: shape mismatch in +");
    GradedMap f = zero(src, tgt, deg);
    std::set<int> keys;
    for (const auto& [i, m] : blocks) keys.insert(i);
    for (const auto& [i, m] : o.blocks) keys.insert(i);
    for (int i : keys) f.set_block(i, block(i) + o.block(i));
    return f;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + (-o); }

GradedMap GradedMap::operator-() const {
    GradedMap f = zero(src, tgt, deg);
    for (const auto& [i, m] : blocks) f.blocks.emplace(i, -m);
    return f;
}

GradedMap GradedMap::scaled(const Scalar& s) const {
    GradedMap f = zero(src, tgt, deg);
    if (s.is_zero()) return f;
    for (const auto& [i, m] : blocks) f.blocks.emplace(i, m.scaled(s));
    return f;
}

Vec GradedMap::apply(int i, const Vec& v) const { return block(i).apply(v); }

Complex Complex::zero() {
    Complex c;
    c.d = GradedMap::zero(c.space, c.space, 1);
    return c;
}

Complex Complex::point(int n, const std::string& label) {
    Complex c;
    c.space.basis[n] = {label};
    c.d = GradedMap::zero(c.space, c.space, 1);
    return c;
}

ValidationReport validate_complex(const Complex& c) {
    ValidationReport r;
    if (!c.space.labels_unique()) r.fail("complex: duplicate basis labels within a degree");
    if (!(c.d.src == c.space) || !(c.d.tgt == c.space)) r.fail("complex: differential space mismatch");
    if (c.d.deg != 1) r.fail("complex: differential degree is " + std::to_string(c.d.deg) + ", not +1");
    if (r.ok) {
        GradedMap dd = c.d.compose(c.d);
        for (const auto& [i, blk] : dd.blocks) {
            if (!blk.is_zero()) r.fail("complex: d∘d != 0 starting at degree " + std::to_string(i));
        }
    }
    return r;
}

std::map<int, size_t> homology_dims(const Complex& c) {
    std::map<int, size_t> h;
    std::set<int> degs;
    for (const auto& [d, ls] : c.space.basis) degs.insert(d);
    for (int n : degs) {
        size_t dimn = c.space.dim(n);
        size_t rk_out = c.d.block(n).rank();
        size_t ker = dimn - rk_out;
        size_t rk_in = c.d.block(n - 1).rank();
        if (ker > rk_in) h[n] = ker - rk_in;
    }
    return h;
}

HomComplex hom_complex(const Complex& m, const Complex& n) {
    HomComplex h;
    h.msrc = m.space;
    h.ntgt = n.space;
    for (const auto& [i, ml] : m.space.basis) {
        if (ml.empty()) continue;
        for (const auto& [j, nl] : n.space.basis) {
            if (nl.empty()) continue;
            int k = j - i;
            auto& sl = h.slots[k];
            auto& labels = h.cx.space.basis[k];
            for (size_t a = 0; a < ml.size(); ++a)
                for (size_t b = 0; b < nl.size(); ++b) {
                    sl.push_back({i, a, b});
                    labels.push_back(ml[a] + "@" + std::to_string(i) + "=>" + nl[b]);
                }
        }
    }
    /* Slot order must be (i, a, b)-lexicographic; the map iteration above gives i
     * ascending but groups by (i, j): re-sort each degree. */
    for (auto& [k, sl] : h.slots) {
        std::vector<size_t> perm(sl.size());
        for (size_t t = 0; t < perm.size(); ++t) perm[t] = t;
        std::stable_sort(perm.begin(), perm.end(), [&](size_t x, size_t y) {
            const auto &sx = sl[x], &sy = sl[y];
            if (sx.i != sy.i) return sx.i < sy.i;
            if (sx.a != sy.a) return sx.a < sy.a;
            return sx.b < sy.b;
        });
        std::vector<HomComplex::Slot> sl2(sl.size());
        std::vector<std::string> lb2(sl.size());
        auto& labels = h.cx.space.basis[k];
        for (size_t t = 0; t < perm.size(); ++t) {
            sl2[t] = sl[perm[t]];
            lb2[t] = labels[perm[t]];
        }
        sl = sl2;
        labels = lb2;
    }
    h.cx.d = GradedMap::zero(h.cx.space, h.cx.space, 1);
    for (const auto& [k, sl] : h.slots) {
        size_t dim_next = h.cx.space.dim(k + 1);
        if (dim_next == 0 || sl.empty()) continue;
        Matrix blk(dim_next, sl.size());
        for (size_t idx = 0; idx < sl.size(); ++idx) {
            GradedMap u = h.basis_map(k, idx);
            GradedMap du = n.d.compose(u) - u.compose(m.d).scaled(Scalar::sign(k));
            blk.set_column(idx, h.coords(du));
        }
        h.cx.d.set_block(k, blk);
    }
    return h;
}

Vec HomComplex::coords(const GradedMap& f) const {
    if (!(f.src == msrc) || !(f.tgt == ntgt)) throw std::invalid_argument("hom complex: wrong map shape");
    auto it = slots.find(f.deg);
    Vec v(it == slots.end() ? 0 : it->second.size());
    if (it == slots.end()) {
        if (!f.is_zero()) throw std::invalid_argument("hom complex: nonzero map in empty degree");
        return v;
    }
    for (size_t idx = 0; idx < it->second.size(); ++idx) {
        const Slot& s = it->second[idx];
        auto bit = f.blocks.find(s.i);
        if (bit != f.blocks.end()) v[idx] = bit->second.at(s.b, s.a);
    }
    return v;
}

GradedMap HomComplex::element(int k, const Vec& v) const {
    GradedMap f = GradedMap::zero(msrc, ntgt, k);
    auto it = slots.find(k);
    size_t n = it == slots.end() ? 0 : it->second.size();
    if (v.size() != n) throw std::invalid_argument("hom complex: coordinate length mismatch");
    if (n == 0) return f;
    std::map<int, Matrix> blk;
    for (size_t idx = 0; idx < n; ++idx) {
        if (v[idx].is_zero()) continue;
        const Slot& s = it->second[idx];
        auto [bit, fresh] = blk.try_emplace(s.i, Matrix(ntgt.dim(s.i + k), msrc.dim(s.i)));
        bit->second.at(s.b, s.a) += v[idx];
    }
    for (const auto& [i, m] : blk) f.set_block(i, m);
    return f;
}

GradedMap HomComplex::basis_map(int k, size_t idx) const {
    auto it = slots.find(k);
    if (it == slots.end() || idx >= it->second.size())
        throw std::out_of_range("hom complex: no basis map " + std::to_string(idx));
    Vec v(it->second.size());
    v[idx] = Scalar::one();
    return element(k, v);
}

TensorComplex tensor_complex(const Complex& m, const Complex& n) {
    TensorComplex t;
    t.left = m.space;
    t.right = n.space;
    for (const auto& [i, ml] : m.space.basis) {
        if (ml.empty()) continue;
        for (const auto& [j, nl] : n.space.basis) {
            if (nl.empty()) continue;
            int k = i + j;
            auto& sl = t.slots[k];
            auto& labels = t.cx.space.basis[k];
            for (size_t a = 0; a < ml.size(); ++a)
                for (size_t b = 0; b < nl.size(); ++b) {
                    sl.push_back({i, a, b});
                    labels.push_back(ml[a] + "@" + std::to_string(i) + "(x)" + nl[b]);
                }
        }
    }
    for (auto& [k, sl] : t.slots) {
        std::vector<size_t> perm(sl.size());
        for (size_t q = 0; q < perm.size(); ++q) perm[q] = q;
        std::stable_sort(perm.begin(), perm.end(), [&](size_t x, size_t y) {
            const auto &sx = sl[x], &sy = sl[y];
            if (sx.i != sy.i) return sx.i < sy.i;
            if (sx.a != sy.a) return sx.a < sy.a;
            return sx.b < sy.b;
        });
        std::vector<TensorComplex::Slot> sl2(sl.size());
        std::vector<std::string> lb2(sl.size());
        auto& labels = t.cx.space.basis[k];
        for (size_t q = 0; q < perm.size(); ++q) {
            sl2[q] = sl[perm[q]];
            lb2[q] = labels[perm[q]];
        }
        sl = sl2;
        labels = lb2;
    }
    t.cx.d = GradedMap::zero(t.cx.space, t.cx.space, 1);
    for (const auto& [k, sl] : t.slots) {
        size_t dim_next = t.cx.space.dim(k + 1);
        if (dim_next == 0 || sl.empty()) continue;
        Matrix blk(dim_next, sl.size());
        for (size_t idx = 0; idx < sl.size(); ++idx) {
            const auto& s = sl[idx];
            int j = k - s.i;
            Vec ea(m.space.dim(s.i));
            ea[s.a] = Scalar::one();
            Vec eb(n.space.dim(j));
            eb[s.b] = Scalar::one();
            Vec col(dim_next);
            Vec dm = m.d.apply(s.i, ea);
            if (!is_zero(dm)) col = col + t.pure(s.i + 1, dm, j, eb);
            Vec dn = n.d.apply(j, eb);
            if (!is_zero(dn)) col = col + Scalar::sign(s.i) * t.pure(s.i, ea, j + 1, dn);
            blk.set_column(idx, col);
        }
        t.cx.d.set_block(k, blk);
    }
    return t;
}

Vec TensorComplex::pure(int i, const Vec& m, int j, const Vec& n) const {
    if (m.size() != left.dim(i) || n.size() != right.dim(j))
        throw std::invalid_argument("tensor complex: pure tensor shape mismatch");
    int k = i + j;
    auto it = slots.find(k);
    Vec v(it == slots.end() ? 0 : it->second.size());
    if (it == slots.end()) return v;
    for (size_t idx = 0; idx < it->second.size(); ++idx) {
        const Slot& s = it->second[idx];
        if (s.i != i) continue;
        v[idx] = m[s.a] * n[s.b];
    }
    return v;
}

GradedMap tensor_map(const TensorComplex& src, const TensorComplex& tgt, const GradedMap& u,
                     const GradedMap& v) {
    if (!(u.src == src.left) || !(v.src == src.right) || !(u.tgt == tgt.left) || !(v.tgt == tgt.right))
        throw std::invalid_argument("tensor map: factor shape mismatch");
    GradedMap f = GradedMap::zero(src.cx.space, tgt.cx.space, u.deg + v.deg);
    for (const auto& [k, sl] : src.slots) {
        size_t dim_out = tgt.cx.space.dim(k + f.deg);
        if (dim_out == 0 || sl.empty()) continue;
        Matrix blk(dim_out, sl.size());
        bool any = false;
        for (size_t idx = 0; idx < sl.size(); ++idx) {
            const auto& s = sl[idx];
            int j = k - s.i;
            Matrix ub = u.block(s.i);   // left^i -> left'^{i+|u|}
            Matrix vb = v.block(j);     // right^j -> right'^{j+|v|}
            if (ub.is_zero() || vb.is_zero()) continue;
            Scalar sg = Scalar::sign(static_cast<long>(v.deg) * s.i);
            Vec ua = ub.column(s.a);
            Vec vbb = vb.column(s.b);
            Vec contrib = tgt.pure(s.i + u.deg, ua, j + v.deg, vbb);
            for (size_t r = 0; r < dim_out; ++r)
                if (!contrib[r].is_zero()) {
                    blk.at(r, idx) += sg * contrib[r];
                    any = true;
                }
        }
        if (any) f.set_block(k, blk);
    }
    return f;
}

Subquotient subquotient_complex(const Complex& src, const Complex& tgt, const GradedMap& f) {
    if (f.deg != 0) throw std::invalid_argument("subquotient: map must have degree 0");
    if (!(f.src == src.space) || !(f.tgt == tgt.space))
        throw std::invalid_argument("subquotient: map does not match ambient complexes");
    if (!(f.compose(src.d) == tgt.d.compose(f)))
        throw std::invalid_argument("subquotient: map does not commute with the differentials");

    Subquotient sq;

    /* Kernel, degreewise, with the induced differential solved in kernel coords. */
    std::map<int, Matrix> ker;
    for (const auto& [i, ls] : src.space.basis) {
        std::vector<size_t> free_cols;
        Matrix k = f.block(i).kernel(free_cols);
        ker[i] = k;
        std::vector<std::string> labels;
        for (size_t fc : free_cols) labels.push_back(ls[fc]);
        if (!labels.empty()) sq.kernel.space.basis[i] = labels;
    }
    sq.kernel.d = GradedMap::zero(sq.kernel.space, sq.kernel.space, 1);
    sq.kernel_incl = GradedMap::zero(sq.kernel.space, src.space, 0);
    for (const auto& [i, k] : ker) {
        if (k.cols() == 0) continue;
        sq.kernel_incl.set_block(i, k);
        auto next = ker.find(i + 1);
        Matrix dk = src.d.block(i) * k;
        if (next == ker.end() || next->second.cols() == 0) {
            if (!dk.is_zero()) throw std::invalid_argument("subquotient: kernel not d-stable");
            continue;
        }
        auto x = next->second.solve_matrix(dk);
        if (!x) throw std::invalid_argument("subquotient: kernel not d-stable");
        sq.kernel.d.set_block(i, *x);
    }

    /* Cokernel, degreewise, via the canonical quotient split. */
    std::map<int, QuotientSplit> q;
    for (const auto& [i, ls] : tgt.space.basis) {
        QuotientSplit s = quotient_by_columns(f.block(i), ls.size());
        std::vector<std::string> labels;
        for (size_t kc : s.kept) labels.push_back(ls[kc]);
        if (!labels.empty()) sq.coker.space.basis[i] = labels;
        q.emplace(i, std::move(s));
    }
    sq.coker.d = GradedMap::zero(sq.coker.space, sq.coker.space, 1);
    sq.coker_proj = GradedMap::zero(tgt.space, sq.coker.space, 0);
    for (const auto& [i, s] : q) {
        if (!s.kept.empty()) sq.coker_proj.set_block(i, s.proj);
        auto next = q.find(i + 1);
        if (next == q.end() || next->second.kept.empty() || s.kept.empty()) continue;
        /* Well-defined because f is a chain map; assert it exactly anyway. */
        Matrix guard = next->second.proj * (tgt.d.block(i) * f.block(i));
        if (!guard.is_zero()) throw std::invalid_argument("subquotient: image not d-stable");
        sq.coker.d.set_block(i, next->second.proj * tgt.d.block(i) * s.section);
    }
    return sq;
}

DirectSum direct_sum(const std::vector<const Complex*>& parts, const std::vector<std::string>& tags) {
    if (parts.size() != tags.size()) throw std::invalid_argument("direct sum: tag count mismatch");
    DirectSum ds;
    ds.offsets.resize(parts.size());
    for (size_t t = 0; t < parts.size(); ++t) {
        for (const auto& [k, ls] : parts[t]->space.basis) {
            auto& labels = ds.total.space.basis[k];
            ds.offsets[t][k] = labels.size();
            for (const auto& l : ls) labels.push_back(tags[t] + ":" + l);
        }
    }
    ds.total.d = GradedMap::zero(ds.total.space, ds.total.space, 1);
    std::set<int> degs;
    for (const auto& [k, ls] : ds.total.space.basis) degs.insert(k);
    for (int k : degs) {
        size_t rows = ds.total.space.dim(k + 1), cols = ds.total.space.dim(k);
        if (rows == 0 || cols == 0) continue;
        Matrix blk(rows, cols);
        bool any = false;
        for (size_t t = 0; t < parts.size(); ++t) {
            Matrix b = parts[t]->d.block(k);
            if (b.is_zero()) continue;
            auto co = ds.offsets[t].find(k);
            auto ro = ds.offsets[t].find(k + 1);
            if (co == ds.offsets[t].end() || ro == ds.offsets[t].end()) continue;
            for (size_t i = 0; i < b.rows(); ++i)
                for (size_t j = 0; j < b.cols(); ++j)
                    if (!b.at(i, j).is_zero()) {
                        blk.at(ro->second + i, co->second + j) = b.at(i, j);
                        any = true;
                    }
        }
        if (any) ds.total.d.set_block(k, blk);
    }
    return ds;
}

}  // namespace dgcat
