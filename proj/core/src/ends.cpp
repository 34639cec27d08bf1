#include "dgcat/ends.hpp"

#include <stdexcept>
#include <utility>

namespace dgcat {

namespace {

/* Shared scaffolding: the direct sum ⊕_A T(A,A) plus summand bookkeeping. */
struct Diagonal {
    std::vector<std::string> objects;
    std::vector<const Complex*> parts;
    DirectSum sum;
    std::map<std::string, size_t> pos;
};

Diagonal diagonal_total(const Bifunctor& t) {
    if (!(opposite_category(*t.co) == *t.contra))
        throw std::invalid_argument("end/coend: contra factor is not the opposite of the co factor");
    Diagonal d;
    d.objects = t.co->objects;
    for (size_t i = 0; i < d.objects.size(); ++i) {
        d.parts.push_back(&t.value(d.objects[i], d.objects[i]));
        d.pos.emplace(d.objects[i], i);
    }
    d.sum = direct_sum(d.parts, d.objects);
    return d;
}

/* One naturality condition per basis morphism f : A -> B of the covariant
 * factor: T(1_A⊗f) on the A-summand against T(f⊗1_B) on the B-summand. */
struct Condition {
    size_t ia, ib;
    int m;  // degree of f
    const Complex* tab;  // T(A,B), the common target
    GradedMap lf, rf;
};

std::vector<Condition> all_conditions(const Bifunctor& t, const Diagonal& dg) {
    std::vector<Condition> conds;
    for (const MorKey& k : t.co->basis_morphisms()) {
        Element f = t.co->basis_element(k);
        Element fop = f;
        fop.src = k.tgt;  // same coordinates in the opposite hom complex
        fop.tgt = k.src;
        Condition c;
        c.ia = dg.pos.at(k.src);
        c.ib = dg.pos.at(k.tgt);
        c.m = k.deg;
        c.tab = &t.value(k.src, k.tgt);
        c.lf = t.act2(k.src, f);
        c.rf = t.act1(fop, k.tgt);
        conds.push_back(std::move(c));
    }
    return conds;
}

std::vector<std::string> fresh_labels(const char* stem, size_t n) {
    std::vector<std::string> lab;
    lab.reserve(n);
    for (size_t i = 0; i < n; ++i) lab.push_back(stem + std::to_string(i));
    return lab;
}

}  // namespace

const Complex& Bifunctor::value(const std::string& a, const std::string& b) const {
    return mod.value(TensorCategory::obj_label(a, b));
}

GradedMap Bifunctor::act1(const Element& u, const std::string& b) const {
    Element pe = tens->pure(u, co->identity(b));
    return mod.act_element(pe, u.is_zero() ? 0 : u.degree());
}

GradedMap Bifunctor::act2(const std::string& a, const Element& v) const {
    Element pe = tens->pure(contra->identity(a), v);
    return mod.act_element(pe, v.is_zero() ? 0 : v.degree());
}

ValidationReport validate_bifunctor(const Bifunctor& t) {
    ValidationReport r;
    if (!t.contra || !t.co || !t.tens || !t.base) {
        r.fail("bifunctor: missing factor or base data");
        return r;
    }
    if (!(t.tens->cat == *t.base)) r.fail("bifunctor: base differs from the tensor category");
    if (!same_base(t.mod.base, t.base)) r.fail("bifunctor: module lives over a different base");
    for (const auto& [lab, fac] : t.tens->factors)
        if (!t.contra->has_object(fac.first) || !t.co->has_object(fac.second))
            r.fail("bifunctor: factor bookkeeping names a missing object at " + lab);
    if (!r.ok) return r;
    ValidationReport mr = validate_dg_module(t.mod);
    for (const auto& s : mr.issues) r.fail("bifunctor: " + s);
    return r;
}

Bifunctor hom_bifunctor(const CatPtr& c) {
    Bifunctor t;
    t.contra = make_cat(opposite_category(*c));
    t.co = c;
    t.tens = std::make_shared<TensorCategory>(tensor_category(*t.contra, *c));
    t.base = make_cat(t.tens->cat);
    t.mod.base = t.base;
    for (const auto& x : c->objects)
        for (const auto& y : c->objects) {
            const Complex& h = c->hom(x, y);
            if (h.space.total_dim()) t.mod.values.emplace(TensorCategory::obj_label(x, y), h);
        }
    for (const MorKey& mk : t.base->basis_morphisms()) {
        const auto& [x, y] = t.tens->factors.at(mk.src);
        const auto& [xp, yp] = t.tens->factors.at(mk.tgt);
        TensorComplex::Slot sl = t.tens->slots.at({mk.src, mk.tgt}).at(mk.deg)[mk.idx];
        Element alpha = c->basis_element(MorKey{xp, x, sl.i, sl.a});  // α : x' -> x
        Element beta = c->basis_element(MorKey{y, yp, mk.deg - sl.i, sl.b});
        const Complex& src = c->hom(x, y);
        const Complex& tgt = c->hom(xp, yp);
        GradedMap gm = GradedMap::zero(src.space, tgt.space, mk.deg);
        for (int j : src.space.degrees()) {
            size_t dj = src.dim(j);
            Matrix blk(tgt.space.dim(j + mk.deg), dj);
            for (size_t col = 0; col < dj; ++col) {
                Element f = c->basis_element(MorKey{x, y, j, col});
                Element r = c->compose(beta, c->compose(f, alpha))
                                .scaled(Scalar::sign(sl.i * ((mk.deg - sl.i) + j)));
                blk.set_column(col, r.at(mk.deg + j, blk.rows()));
            }
            gm.set_block(j, blk);
        }
        t.mod.action.emplace(mk, std::move(gm));
    }
    return t;
}

namespace {

Bifunctor tensor_build(const DgModule& w, const DgModule& g,
                       std::map<std::pair<std::string, std::string>, TensorComplex>* pairs_out) {
    Bifunctor t;
    t.contra = w.base;
    t.co = g.base;
    t.tens = std::make_shared<TensorCategory>(tensor_category(*w.base, *g.base));
    t.base = make_cat(t.tens->cat);
    t.mod.base = t.base;
    std::map<std::pair<std::string, std::string>, TensorComplex> pairs;
    for (const auto& x : w.base->objects)
        for (const auto& y : g.base->objects) {
            TensorComplex tc = tensor_complex(w.value(x), g.value(y));
            if (tc.cx.space.total_dim())
                t.mod.values.emplace(TensorCategory::obj_label(x, y), tc.cx);
            pairs.emplace(std::make_pair(x, y), std::move(tc));
        }
    for (const MorKey& mk : t.base->basis_morphisms()) {
        const auto& [x, y] = t.tens->factors.at(mk.src);
        const auto& [xp, yp] = t.tens->factors.at(mk.tgt);
        TensorComplex::Slot sl = t.tens->slots.at({mk.src, mk.tgt}).at(mk.deg)[mk.idx];
        GradedMap u = w.act(MorKey{x, xp, sl.i, sl.a});
        GradedMap v = g.act(MorKey{y, yp, mk.deg - sl.i, sl.b});
        t.mod.action.emplace(mk, tensor_map(pairs.at({x, y}), pairs.at({xp, yp}), u, v));
    }
    if (pairs_out) *pairs_out = std::move(pairs);
    return t;
}

Bifunctor nat_build(const DgModule& f, const DgModule& g,
                    std::map<std::pair<std::string, std::string>, HomComplex>* homs_out) {
    if (!same_base(f.base, g.base))
        throw std::invalid_argument("transformation complex: modules live over different bases");
    Bifunctor t;
    t.contra = make_cat(opposite_category(*f.base));
    t.co = g.base;
    t.tens = std::make_shared<TensorCategory>(tensor_category(*t.contra, *g.base));
    t.base = make_cat(t.tens->cat);
    t.mod.base = t.base;
    std::map<std::pair<std::string, std::string>, HomComplex> homs;
    for (const auto& x : f.base->objects)
        for (const auto& y : g.base->objects) {
            HomComplex hc = hom_complex(f.value(x), g.value(y));
            if (hc.cx.space.total_dim())
                t.mod.values.emplace(TensorCategory::obj_label(x, y), hc.cx);
            homs.emplace(std::make_pair(x, y), std::move(hc));
        }
    for (const MorKey& mk : t.base->basis_morphisms()) {
        const auto& [x, y] = t.tens->factors.at(mk.src);
        const auto& [xp, yp] = t.tens->factors.at(mk.tgt);
        TensorComplex::Slot sl = t.tens->slots.at({mk.src, mk.tgt}).at(mk.deg)[mk.idx];
        GradedMap fa = f.act(MorKey{xp, x, sl.i, sl.a});  // F(α) : F(x') -> F(x)
        GradedMap gb = g.act(MorKey{y, yp, mk.deg - sl.i, sl.b});
        const HomComplex& hs = homs.at({x, y});
        const HomComplex& ht = homs.at({xp, yp});
        GradedMap gm = GradedMap::zero(hs.cx.space, ht.cx.space, mk.deg);
        for (int j : hs.cx.space.degrees()) {
            size_t dj = hs.cx.dim(j);
            Matrix blk(ht.cx.space.dim(j + mk.deg), dj);
            for (size_t col = 0; col < dj; ++col) {
                GradedMap h = hs.basis_map(j, col);
                GradedMap r = gb.compose(h).compose(fa).scaled(
                    Scalar::sign(sl.i * ((mk.deg - sl.i) + j)));
                blk.set_column(col, ht.coords(r));
            }
            gm.set_block(j, blk);
        }
        t.mod.action.emplace(mk, std::move(gm));
    }
    if (homs_out) *homs_out = std::move(homs);
    return t;
}

}  // namespace

Bifunctor tensor_bifunctor(const DgModule& w, const DgModule& g) {
    return tensor_build(w, g, nullptr);
}

Bifunctor nat_bifunctor(const DgModule& f, const DgModule& g) { return nat_build(f, g, nullptr); }

EndData end_of_bifunctor(const Bifunctor& t) {
    Diagonal dg = diagonal_total(t);
    EndData e;
    e.total = dg.sum.total;
    e.sum = dg.sum;
    e.objects = dg.objects;

    std::vector<Condition> conds = all_conditions(t, dg);

    std::map<int, Matrix> kernels;
    for (int n : e.total.space.degrees()) {
        size_t dimn = e.total.dim(n);
        std::vector<Matrix> rowblocks;
        size_t nrows = 0;
        for (const Condition& c : conds) {
            size_t r = c.tab->space.dim(n + c.m);
            if (!r) continue;
            size_t da = dg.parts[c.ia]->space.dim(n);
            size_t db = dg.parts[c.ib]->space.dim(n);
            if (!da && !db) continue;
            Matrix blk(r, dimn);
            if (da) {
                Matrix lb = c.lf.block(n);
                size_t off = dg.sum.offsets[c.ia].at(n);
                for (size_t i = 0; i < r; ++i)
                    for (size_t j = 0; j < da; ++j) blk.at(i, off + j) += lb.at(i, j);
            }
            if (db) {
                Matrix rb = c.rf.block(n);
                size_t off = dg.sum.offsets[c.ib].at(n);
                for (size_t i = 0; i < r; ++i)
                    for (size_t j = 0; j < db; ++j) blk.at(i, off + j) -= rb.at(i, j);
            }
            if (blk.is_zero()) continue;
            nrows += r;
            rowblocks.push_back(std::move(blk));
        }
        Matrix k = Matrix::identity(dimn);
        if (nrows) {
            Matrix sys(nrows, dimn);
            size_t at = 0;
            for (const Matrix& blk : rowblocks) {
                for (size_t i = 0; i < blk.rows(); ++i)
                    for (size_t j = 0; j < dimn; ++j) sys.at(at + i, j) = blk.at(i, j);
                at += blk.rows();
            }
            k = sys.kernel();
        }
        if (k.cols()) kernels.emplace(n, std::move(k));
    }

    GradedSpace space;
    for (const auto& [n, kn] : kernels) space.basis.emplace(n, fresh_labels("e", kn.cols()));
    e.cx.space = space;

    GradedMap d = GradedMap::zero(space, space, 1);
    GradedMap incl = GradedMap::zero(space, e.total.space, 0);
    for (const auto& [n, kn] : kernels) {
        incl.set_block(n, kn);
        Matrix img = e.total.d.block(n) * kn;
        auto up = kernels.find(n + 1);
        if (up == kernels.end()) {
            if (!img.is_zero()) throw std::logic_error("end: differential does not restrict");
            continue;
        }
        auto x = up->second.solve_matrix(img);
        if (!x) throw std::logic_error("end: differential does not restrict");
        d.set_block(n, *x);
    }
    e.cx.d = d;
    e.incl = incl;

    for (size_t ia = 0; ia < dg.objects.size(); ++ia) {
        GradedMap leg = GradedMap::zero(space, dg.parts[ia]->space, 0);
        for (const auto& [n, kn] : kernels) {
            size_t da = dg.parts[ia]->space.dim(n);
            if (!da) continue;
            size_t off = dg.sum.offsets[ia].at(n);
            Matrix blk(da, kn.cols());
            for (size_t i = 0; i < da; ++i)
                for (size_t j = 0; j < kn.cols(); ++j) blk.at(i, j) = kn.at(off + i, j);
            leg.set_block(n, blk);
        }
        e.legs.emplace(dg.objects[ia], std::move(leg));
    }

    if (!validate_complex(e.cx).ok) throw std::logic_error("end: induced differential fails d*d=0");
    return e;
}

GradedMap factor_through_end(const EndData& e, const Complex& w,
                             const std::map<std::string, GradedMap>& legs) {
    GradedMap wt = GradedMap::zero(w.space, e.total.space, 0);
    std::map<int, Matrix> wblocks;
    for (int n : w.space.degrees()) wblocks.emplace(n, Matrix(e.total.dim(n), w.space.dim(n)));
    for (size_t ia = 0; ia < e.objects.size(); ++ia) {
        auto it = legs.find(e.objects[ia]);
        if (it == legs.end()) continue;
        const GradedMap& lg = it->second;
        if (lg.deg != 0 || lg.src != w.space || lg.tgt != e.legs.at(e.objects[ia]).tgt)
            throw std::invalid_argument("wedge: leg shape mismatch at " + e.objects[ia]);
        for (const auto& [n, blk] : lg.blocks) {
            size_t off = e.sum.offsets[ia].at(n);
            Matrix& out = wblocks.at(n);
            for (size_t i = 0; i < blk.rows(); ++i)
                for (size_t j = 0; j < blk.cols(); ++j) out.at(off + i, j) = blk.at(i, j);
        }
    }
    for (const auto& [n, blk] : wblocks) wt.set_block(n, blk);
    if (!(e.total.d.compose(wt) == wt.compose(w.d)))
        throw std::invalid_argument("wedge: legs are not chain maps");
    GradedMap u = GradedMap::zero(w.space, e.cx.space, 0);
    for (int n : w.space.degrees()) {
        auto x = e.incl.block(n).solve_matrix(wt.block(n));
        if (!x) throw std::invalid_argument("wedge: family does not satisfy the end conditions");
        u.set_block(n, *x);
    }
    return u;
}

CoendData coend_of_bifunctor(const Bifunctor& t) {
    Diagonal dg = diagonal_total(t);
    CoendData c;
    c.total = dg.sum.total;
    c.sum = dg.sum;
    c.objects = dg.objects;

    std::map<int, std::vector<Vec>> gens;
    for (const MorKey& k : t.co->basis_morphisms()) {
        const std::string& a2 = k.src;  // f : A2 -> A1
        const std::string& a1 = k.tgt;
        Element f = t.co->basis_element(k);
        Element fop = f;
        fop.src = a1;
        fop.tgt = a2;
        GradedMap lf = t.act2(a1, f);     // T(A1,A2) -> T(A1,A1)
        GradedMap rf = t.act1(fop, a2);   // T(A1,A2) -> T(A2,A2)
        const Complex& src = t.value(a1, a2);
        size_t i1 = dg.pos.at(a1), i2 = dg.pos.at(a2);
        for (int j : src.space.degrees()) {
            int n = j + k.deg;
            size_t dimn = c.total.dim(n);
            Matrix lb = lf.block(j), rb = rf.block(j);
            for (size_t x = 0; x < src.dim(j); ++x) {
                Vec v(dimn);
                if (lb.rows()) {
                    size_t off = dg.sum.offsets[i1].at(n);
                    for (size_t i = 0; i < lb.rows(); ++i) v[off + i] += lb.at(i, x);
                }
                if (rb.rows()) {
                    size_t off = dg.sum.offsets[i2].at(n);
                    for (size_t i = 0; i < rb.rows(); ++i) v[off + i] -= rb.at(i, x);
                }
                if (!dgcat::is_zero(v)) gens[n].push_back(std::move(v));
            }
        }
    }

    GradedSpace space;
    std::map<int, QuotientSplit> qs;
    for (int n : c.total.space.degrees()) {
        size_t dimn = c.total.dim(n);
        Matrix g(dimn, 0);
        auto it = gens.find(n);
        if (it != gens.end()) g = Matrix::from_columns(dimn, it->second);
        if (g.cols()) c.relations.emplace(n, g);
        QuotientSplit q = quotient_by_columns(g, dimn);
        if (!q.kept.empty()) space.basis.emplace(n, fresh_labels("c", q.kept.size()));
        qs.emplace(n, std::move(q));
    }

    for (const auto& [n, g] : c.relations) {
        Matrix img = c.total.d.block(n) * g;
        auto up = c.relations.find(n + 1);
        Matrix next = up == c.relations.end() ? Matrix(c.total.dim(n + 1), 0) : up->second;
        for (size_t j = 0; j < img.cols(); ++j)
            if (!in_span(next, img.column(j)))
                throw std::logic_error("coend: relations not closed under differential");
    }

    GradedMap proj = GradedMap::zero(c.total.space, space, 0);
    GradedMap sec = GradedMap::zero(space, c.total.space, 0);
    for (const auto& [n, q] : qs) {
        if (q.kept.empty()) continue;
        proj.set_block(n, q.proj);
        sec.set_block(n, q.section);
    }
    c.cx.space = space;
    c.cx.d = proj.compose(c.total.d).compose(sec);
    c.proj = proj;
    c.section = sec;

    for (size_t ia = 0; ia < dg.objects.size(); ++ia) {
        GradedMap mu = GradedMap::zero(dg.parts[ia]->space, space, 0);
        for (const auto& [n, q] : qs) {
            size_t da = dg.parts[ia]->space.dim(n);
            if (!da || q.kept.empty()) continue;
            size_t off = dg.sum.offsets[ia].at(n);
            Matrix blk(q.kept.size(), da);
            for (size_t i = 0; i < q.kept.size(); ++i)
                for (size_t j = 0; j < da; ++j) blk.at(i, j) = q.proj.at(i, off + j);
            mu.set_block(n, blk);
        }
        c.ins.emplace(dg.objects[ia], std::move(mu));
    }

    if (!validate_complex(c.cx).ok) throw std::logic_error("coend: induced differential fails d*d=0");
    return c;
}

GradedMap factor_through_coend(const CoendData& c, const Complex& w,
                               const std::map<std::string, GradedMap>& legs) {
    GradedMap ct = GradedMap::zero(c.total.space, w.space, 0);
    std::map<int, Matrix> cblocks;
    for (int n : c.total.space.degrees()) cblocks.emplace(n, Matrix(w.space.dim(n), c.total.dim(n)));
    for (size_t ia = 0; ia < c.objects.size(); ++ia) {
        auto it = legs.find(c.objects[ia]);
        if (it == legs.end()) continue;
        const GradedMap& lg = it->second;
        if (lg.deg != 0 || lg.tgt != w.space || lg.src != c.ins.at(c.objects[ia]).src)
            throw std::invalid_argument("cowedge: leg shape mismatch at " + c.objects[ia]);
        for (const auto& [n, blk] : lg.blocks) {
            size_t off = c.sum.offsets[ia].at(n);
            Matrix& out = cblocks.at(n);
            for (size_t i = 0; i < blk.rows(); ++i)
                for (size_t j = 0; j < blk.cols(); ++j) out.at(i, off + j) = blk.at(i, j);
        }
    }
    for (const auto& [n, blk] : cblocks) ct.set_block(n, blk);
    if (!(w.d.compose(ct) == ct.compose(c.total.d)))
        throw std::invalid_argument("cowedge: legs are not chain maps");
    for (const auto& [n, g] : c.relations)
        if (!(ct.block(n) * g).is_zero())
            throw std::invalid_argument("cowedge: family does not kill the coend relations");
    return ct.compose(c.section);
}

GradedMap descend_through_coend(const CoendData& c, const GradedSpace& w, int deg,
                                const std::map<std::string, GradedMap>& legs) {
    GradedMap ct = GradedMap::zero(c.total.space, w, deg);
    std::map<int, Matrix> cblocks;
    for (int n : c.total.space.degrees()) cblocks.emplace(n, Matrix(w.dim(n + deg), c.total.dim(n)));
    for (size_t ia = 0; ia < c.objects.size(); ++ia) {
        auto it = legs.find(c.objects[ia]);
        if (it == legs.end()) continue;
        const GradedMap& lg = it->second;
        if (lg.deg != deg || lg.tgt != w || lg.src != c.ins.at(c.objects[ia]).src)
            throw std::invalid_argument("descend: leg shape mismatch at " + c.objects[ia]);
        for (const auto& [n, blk] : lg.blocks) {
            size_t off = c.sum.offsets[ia].at(n);
            Matrix& out = cblocks.at(n);
            for (size_t i = 0; i < blk.rows(); ++i)
                for (size_t j = 0; j < blk.cols(); ++j) out.at(i, off + j) = blk.at(i, j);
        }
    }
    for (const auto& [n, blk] : cblocks) ct.set_block(n, blk);
    for (const auto& [n, g] : c.relations)
        if (!(ct.block(n) * g).is_zero())
            throw std::invalid_argument("descend: map does not kill the coend relations");
    return ct.compose(c.section);
}

NatData dgnat_complex(const DgModule& f, const DgModule& g) {
    NatData nd;
    nd.from = f;
    nd.to = g;
    nd.t = nat_build(f, g, &nd.homs);
    nd.e = end_of_bifunctor(nd.t);
    return nd;
}

DgNat NatData::to_nat(int deg, const Vec& coords) const {
    DgNat eta;
    eta.from = from;
    eta.to = to;
    eta.deg = deg;
    for (const auto& a : e.objects) {
        Vec ca = e.legs.at(a).apply(deg, coords);
        GradedMap comp = homs.at({a, a}).element(deg, ca);
        if (!comp.is_zero()) eta.comp.emplace(a, std::move(comp));
    }
    return eta;
}

Vec NatData::nat_coords(const DgNat& eta) const {
    if (!(eta.from == from) || !(eta.to == to))
        throw std::invalid_argument("nat_coords: transformation has different endpoints");
    int n = eta.deg;
    Vec tot(e.total.dim(n));
    for (size_t ia = 0; ia < e.objects.size(); ++ia) {
        const auto& a = e.objects[ia];
        Vec ca = homs.at({a, a}).coords(eta.at(a));
        auto off = e.sum.offsets[ia].find(n);
        if (off == e.sum.offsets[ia].end()) {
            if (!dgcat::is_zero(ca))
                throw std::invalid_argument("nat_coords: component outside the hom complex");
            continue;
        }
        for (size_t i = 0; i < ca.size(); ++i) tot[off->second + i] = ca[i];
    }
    auto sol = e.incl.block(n).solve(tot);
    if (!sol) throw std::invalid_argument("nat_coords: components are not natural");
    return *sol;
}

std::vector<DgNat> z0_hom(const DgModule& f, const DgModule& g) {
    NatData nd = dgnat_complex(f, g);
    std::vector<DgNat> out;
    if (!nd.e.cx.dim(0)) return out;
    Matrix k = nd.e.cx.d.block(0).kernel();
    for (size_t j = 0; j < k.cols(); ++j) out.push_back(nd.to_nat(0, k.column(j)));
    return out;
}

YonedaIso yoneda_iso(const DgModule& g, const std::string& a) {
    YonedaIso y{dgnat_complex(representable(g.base, a), g), GradedMap{}};
    const Complex& ga = g.value(a);
    const Vec& unit = g.base->units.at(a);
    GradedMap ev = GradedMap::zero(y.nat.e.cx.space, ga.space, 0);
    for (int n : y.nat.e.cx.space.degrees()) {
        size_t dn = y.nat.e.cx.dim(n);
        if (ga.space.dim(n) != dn)
            throw std::logic_error("yoneda: transformation complex has the wrong dimensions");
        Matrix blk(dn, dn);
        for (size_t j = 0; j < dn; ++j) {
            Vec coords(dn);
            coords[j] = Scalar::one();
            blk.set_column(j, y.nat.to_nat(n, coords).at(a).apply(0, unit));
        }
        if (!blk.invertible()) throw std::logic_error("yoneda: evaluation is not invertible");
        ev.set_block(n, blk);
    }
    for (int n : ga.space.degrees())
        if (y.nat.e.cx.dim(n) != ga.space.dim(n))
            throw std::logic_error("yoneda: transformation complex has the wrong dimensions");
    if (!(ev.compose(y.nat.e.cx.d) == ga.d.compose(ev)))
        throw std::logic_error("yoneda: evaluation is not a chain map");
    y.eval = ev;
    return y;
}

TensorOver tensor_over_category(const DgModule& w, const DgModule& g) {
    TensorOver to;
    to.w = w;
    to.g = g;
    to.t = tensor_build(w, g, &to.pairs);
    to.c = coend_of_bifunctor(to.t);
    return to;
}

Vec TensorOver::pure_class(const std::string& a, int i, const Vec& wpart, int j,
                           const Vec& gpart) const {
    const TensorComplex& tc = pairs.at({a, a});
    Vec v = tc.pure(i, wpart, j, gpart);
    int n = i + j;
    size_t ia = 0;
    while (ia < c.objects.size() && c.objects[ia] != a) ++ia;
    if (ia == c.objects.size()) throw std::invalid_argument("pure_class: unknown object " + a);
    Vec tot(c.total.dim(n));
    auto off = c.sum.offsets[ia].find(n);
    if (off != c.sum.offsets[ia].end())
        for (size_t s = 0; s < v.size(); ++s) tot[off->second + s] = v[s];
    else if (!dgcat::is_zero(v))
        throw std::invalid_argument("pure_class: element outside the tensor complex");
    return c.proj.apply(n, tot);
}

NatData weighted_limit(const DgModule& w, const DgModule& f) { return dgnat_complex(w, f); }

TensorOver weighted_colimit(const DgModule& w, const DgModule& f) {
    return tensor_over_category(w, f);
}

}  // namespace dgcat
