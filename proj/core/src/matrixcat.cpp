#include "dgcat/matrixcat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dgcat/fixtures.hpp"

namespace dgcat {

namespace {

Element op_element(const Element& e) {
    Element r = e;
    std::swap(r.src, r.tgt);
    return r;
}

Vec basis_vec(size_t n, size_t i) {
    Vec v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
}

/* Degreewise inverse of a degree-0 isomorphism. */
GradedMap graded_inverse(const GradedMap& g) {
    if (g.deg != 0) throw std::logic_error("graded_inverse: map has nonzero degree");
    GradedMap inv = GradedMap::zero(g.tgt, g.src, 0);
    std::set<int> degs;
    for (int n : g.src.degrees()) degs.insert(n);
    for (int n : g.tgt.degrees()) degs.insert(n);
    for (int n : degs) {
        if (g.src.dim(n) != g.tgt.dim(n))
            throw std::logic_error("graded_inverse: dimensions differ in degree " +
                                   std::to_string(n));
        if (!g.src.dim(n)) continue;
        auto bi = g.block(n).inverse();
        if (!bi) throw std::logic_error("graded_inverse: block is singular in degree " +
                                        std::to_string(n));
        inv.set_block(n, *bi);
    }
    return inv;
}

std::set<int> degree_union(const GradedSpace& a, const GradedSpace& b) {
    std::set<int> degs;
    for (int n : a.degrees()) degs.insert(n);
    for (int n : b.degrees()) degs.insert(n);
    return degs;
}

bool same_graded_dims(const Complex& a, const Complex& b) {
    for (int n : degree_union(a.space, b.space))
        if (a.dim(n) != b.dim(n)) return false;
    return true;
}

bool same_shape(const Complex& a, const Complex& b) {
    return same_graded_dims(a, b) && homology_dims(a) == homology_dims(b);
}

}  // namespace

const Complex& Bimodule::value(const std::string& r, const std::string& t) const {
    return mod.value(TensorCategory::obj_label(r, t));
}

Bimodule bimodule_frame(CatPtr row, CatPtr col) {
    Bimodule b;
    b.row = std::move(row);
    b.col = std::move(col);
    b.tens = std::make_shared<TensorCategory>(tensor_category(*b.row, opposite_category(*b.col)));
    b.base = make_cat(b.tens->cat);
    b.mod.base = b.base;
    return b;
}

ValidationReport validate_bimodule(const Bimodule& m) {
    ValidationReport r;
    if (!m.row || !m.col || !m.tens || !m.base) {
        r.fail("bimodule: missing side or base data");
        return r;
    }
    if (!(m.tens->cat == *m.base)) r.fail("bimodule: base differs from the tensor category");
    if (!same_base(m.mod.base, m.base)) r.fail("bimodule: module lives over a different base");
    for (const auto& [lab, fac] : m.tens->factors)
        if (!m.row->has_object(fac.first) || !m.col->has_object(fac.second))
            r.fail("bimodule: factor bookkeeping names a missing object at " + lab);
    if (!r.ok) return r;
    ValidationReport mr = validate_dg_module(m.mod);
    for (const auto& s : mr.issues) r.fail("bimodule: " + s);
    return r;
}

MorKey bimodule_pure_key(const Bimodule& m, const MorKey& row, const MorKey& col) {
    /* The col factor enters flipped: t : x -> y lands in hom^op(y, x). */
    std::string sl = TensorCategory::obj_label(row.src, col.tgt);
    std::string tl = TensorCategory::obj_label(row.tgt, col.src);
    int k = row.deg + col.deg;
    auto sit = m.tens->slots.find({sl, tl});
    if (sit != m.tens->slots.end()) {
        auto lit = sit->second.find(k);
        if (lit != sit->second.end()) {
            const auto& list = lit->second;
            for (size_t s = 0; s < list.size(); ++s)
                if (list[s].i == row.deg && list[s].a == row.idx && list[s].b == col.idx)
                    return MorKey{sl, tl, k, s};
        }
    }
    throw std::invalid_argument("bimodule: no tensor slot for the basis pair (" + row.src + "->" +
                                row.tgt + " @" + std::to_string(row.deg) + ", " + col.src + "->" +
                                col.tgt + " @" + std::to_string(col.deg) + ")");
}

std::pair<MorKey, MorKey> bimodule_split_key(const Bimodule& m, const MorKey& k) {
    auto sit = m.tens->slots.find({k.src, k.tgt});
    if (sit == m.tens->slots.end())
        throw std::invalid_argument("bimodule: unknown tensor hom " + k.src + " -> " + k.tgt);
    const auto& list = sit->second.at(k.deg);
    if (k.idx >= list.size())
        throw std::invalid_argument("bimodule: tensor basis index out of range");
    const auto& sl = list[k.idx];
    const auto& [r, y] = m.tens->factors.at(k.src);
    const auto& [s, x] = m.tens->factors.at(k.tgt);
    return {MorKey{r, s, sl.i, sl.a}, MorKey{x, y, k.deg - sl.i, sl.b}};
}

Bimodule module_as_bimodule(const DgModule& m) {
    if (!m.base) throw std::invalid_argument("module_as_bimodule: module has no base");
    Bimodule b = bimodule_frame(m.base, make_cat(k1()));
    for (const auto& r : m.base->objects) {
        const Complex& v = m.value(r);
        if (v.space.total_dim()) b.mod.values.emplace(TensorCategory::obj_label(r, "*"), v);
    }
    for (const auto& [k, a] : m.action)
        b.mod.action.emplace(bimodule_pure_key(b, k, MorKey{"*", "*", 0, 0}), a);
    return b;
}

Bimodule point_bimodule() {
    CatPtr c = make_cat(k1());
    return module_as_bimodule(module_over_point(c, Complex::point(0, "m")));
}

Bimodule zero_bimodule(CatPtr row, CatPtr col) {
    return bimodule_frame(std::move(row), std::move(col));
}

Bimodule slanted_bimodule() {
    Bimodule b = bimodule_frame(make_cat(k1()), make_cat(d1()));
    const std::string p = TensorCategory::obj_label("*", "*");

    Complex v;
    v.space.basis[0] = {"y"};
    v.space.basis[-1] = {"x", "w"};
    v.space.basis[-2] = {"z"};
    v.d = GradedMap::zero(v.space, v.space, 1);
    Matrix d1b(1, 2);  // x |-> y, w |-> 0
    d1b.at(0, 0) = Scalar(1);
    v.d.set_block(-1, d1b);
    Matrix d2b(2, 1);  // z |-> w
    d2b.at(1, 0) = Scalar(1);
    v.d.set_block(-2, d2b);
    b.mod.values.emplace(p, v);

    b.mod.action.emplace(MorKey{p, p, 0, 0}, GradedMap::id(v.space));
    GradedMap h = GradedMap::zero(v.space, v.space, -1);
    Matrix h0(2, 1);  // y |-> x
    h0.at(0, 0) = Scalar(1);
    h.set_block(0, h0);
    Matrix h1(1, 2);  // x |-> 0, w |-> z
    h1.at(0, 1) = Scalar(1);
    h.set_block(-1, h1);
    b.mod.action.emplace(MorKey{p, p, -1, 0}, h);
    return b;
}

Bimodule hom_bimodule(CatPtr c) {
    Bifunctor hb = hom_bifunctor(c);
    Bimodule b;
    b.row = hb.contra;
    b.col = hb.contra;
    b.tens = hb.tens;
    b.base = hb.base;
    b.mod = std::move(hb.mod);
    return b;
}

DgModule bimodule_slice(const Bimodule& m, const std::string& t) {
    if (!m.col->has_object(t))
        throw std::invalid_argument("bimodule_slice: unknown col object " + t);
    DgModule s;
    s.base = m.row;
    for (const auto& r : m.row->objects) {
        const Complex& v = m.value(r, t);
        if (v.space.total_dim()) s.values.emplace(r, v);
    }
    Element idt = m.col->identity(t);
    for (const MorKey& k : m.row->basis_morphisms()) {
        GradedMap a =
            m.mod.act_element(m.tens->pure(m.row->basis_element(k), op_element(idt)), k.deg);
        if (!a.is_zero()) s.action.emplace(k, a);
    }
    return s;
}

DgNat slice_map(const Bimodule& m, const Element& t, int deg) {
    if (!m.col->has_object(t.src) || !m.col->has_object(t.tgt))
        throw std::invalid_argument("slice_map: element outside the col category");
    if (!t.is_zero() && t.degree() != deg)
        throw std::invalid_argument("slice_map: degree mismatch");
    DgNat n;
    n.from = bimodule_slice(m, t.tgt);
    n.to = bimodule_slice(m, t.src);
    n.deg = deg;
    for (const auto& r : m.row->objects) {
        GradedMap c = m.mod.act_element(m.tens->pure(m.row->identity(r), op_element(t)), deg);
        if (!c.is_zero()) n.comp.emplace(r, c);
    }
    return n;
}

TriangularMatrixCategory matrix_category(CatPtr t_part, const Bimodule& m, CatPtr r_part) {
    if (!same_base(m.row, r_part))
        throw std::invalid_argument("matrix_category: bimodule row side differs from r_part");
    if (!same_base(m.col, t_part))
        throw std::invalid_argument("matrix_category: bimodule col side differs from t_part");
    using TMC = TriangularMatrixCategory;
    TriangularMatrixCategory out;
    out.t_part = t_part;
    out.r_part = r_part;
    out.m = m;

    DgCategory lam;
    for (const auto& x : t_part->objects) lam.objects.push_back(TMC::t_label(x));
    for (const auto& y : r_part->objects) lam.objects.push_back(TMC::r_label(y));

    for (const auto& [pr, h] : t_part->homs)
        if (h.space.total_dim()) lam.homs.emplace(std::pair{TMC::t_label(pr.first), TMC::t_label(pr.second)}, h);
    for (const auto& [pr, h] : r_part->homs)
        if (h.space.total_dim()) lam.homs.emplace(std::pair{TMC::r_label(pr.first), TMC::r_label(pr.second)}, h);
    for (const auto& y : r_part->objects)
        for (const auto& x : t_part->objects) {
            const Complex& v = m.value(y, x);
            if (v.space.total_dim()) lam.homs.emplace(std::pair{TMC::t_label(x), TMC::r_label(y)}, v);
        }

    for (const auto& [k, vec] : t_part->comp)
        lam.comp.emplace(CompKey{TMC::t_label(k.x), TMC::t_label(k.y), TMC::t_label(k.z), k.gdeg,
                                 k.gidx, k.fdeg, k.fidx},
                         vec);
    for (const auto& [k, vec] : r_part->comp)
        lam.comp.emplace(CompKey{TMC::r_label(k.x), TMC::r_label(k.y), TMC::r_label(k.z), k.gdeg,
                                 k.gidx, k.fdeg, k.fidx},
                         vec);

    /* t-then-m block: the composite of t1 : X1 -> X2 with m2 over (Y3, X2) is
     * (-1)^{|m2||t1|} m(1_{Y3} (x) t1-flipped)(m2), landing over (Y3, X1). */
    for (const auto& x1 : t_part->objects)
        for (const auto& x2 : t_part->objects) {
            const Complex& th = t_part->hom(x1, x2);
            if (!th.space.total_dim()) continue;
            for (const auto& y3 : r_part->objects) {
                const Complex& msrc = m.value(y3, x2);
                const Complex& mtgt = m.value(y3, x1);
                if (!msrc.space.total_dim() || !mtgt.space.total_dim()) continue;
                for (const auto& [p, tlabels] : th.space.basis)
                    for (size_t i = 0; i < tlabels.size(); ++i) {
                        Element t1 = t_part->basis_element(MorKey{x1, x2, p, i});
                        GradedMap a = m.mod.act_element(
                            m.tens->pure(m.row->identity(y3), op_element(t1)), p);
                        for (const auto& [q, mlabels] : msrc.space.basis)
                            for (size_t j = 0; j < mlabels.size(); ++j) {
                                Vec vec = Scalar::sign(static_cast<long>(q) * p) *
                                          a.apply(q, basis_vec(mlabels.size(), j));
                                if (is_zero(vec)) continue;
                                lam.comp.emplace(CompKey{TMC::t_label(x1), TMC::t_label(x2),
                                                         TMC::r_label(y3), q, j, p, i},
                                                 vec);
                            }
                    }
            }
        }

    /* m-then-r block: the composite of m1 over (Y2, X1) with r2 : Y2 -> Y3 is
     * m(r2 (x) 1_{X1})(m1), landing over (Y3, X1). */
    for (const auto& x1 : t_part->objects)
        for (const auto& y2 : r_part->objects) {
            const Complex& msrc = m.value(y2, x1);
            if (!msrc.space.total_dim()) continue;
            Element idx1 = m.col->identity(x1);
            for (const auto& y3 : r_part->objects) {
                const Complex& rh = r_part->hom(y2, y3);
                const Complex& mtgt = m.value(y3, x1);
                if (!rh.space.total_dim() || !mtgt.space.total_dim()) continue;
                for (const auto& [q, rlabels] : rh.space.basis)
                    for (size_t jr = 0; jr < rlabels.size(); ++jr) {
                        Element r2 = r_part->basis_element(MorKey{y2, y3, q, jr});
                        GradedMap a =
                            m.mod.act_element(m.tens->pure(r2, op_element(idx1)), q);
                        for (const auto& [p, mlabels] : msrc.space.basis)
                            for (size_t i = 0; i < mlabels.size(); ++i) {
                                Vec vec = a.apply(p, basis_vec(mlabels.size(), i));
                                if (is_zero(vec)) continue;
                                lam.comp.emplace(CompKey{TMC::t_label(x1), TMC::r_label(y2),
                                                         TMC::r_label(y3), q, jr, p, i},
                                                 vec);
                            }
                    }
            }
        }

    for (const auto& [x, u] : t_part->units) lam.units.emplace(TMC::t_label(x), u);
    for (const auto& [y, u] : r_part->units) lam.units.emplace(TMC::r_label(y), u);

    out.lambda = make_cat(std::move(lam));
    return out;
}

ValidationReport matrix_hom_formula(const TriangularMatrixCategory& lam) {
    using TMC = TriangularMatrixCategory;
    ValidationReport r;
    if (!lam.lambda || !lam.t_part || !lam.r_part) {
        r.fail("hom formula: missing category data");
        return r;
    }
    const DgCategory& q = *lam.lambda;
    auto cmp = [&r, &q](const std::string& a, const std::string& b, const Complex& want,
                        const char* block) {
        const Complex& got = q.hom(a, b);
        if (!same_graded_dims(got, want))
            r.fail(std::string("hom formula: ") + block + " block dimensions differ at (" + a +
                   ", " + b + ")");
    };
    for (const auto& x : lam.t_part->objects)
        for (const auto& xp : lam.t_part->objects)
            cmp(TMC::t_label(x), TMC::t_label(xp), lam.t_part->hom(x, xp), "t");
    for (const auto& y : lam.r_part->objects)
        for (const auto& yp : lam.r_part->objects)
            cmp(TMC::r_label(y), TMC::r_label(yp), lam.r_part->hom(y, yp), "r");
    for (const auto& x : lam.t_part->objects)
        for (const auto& y : lam.r_part->objects) {
            cmp(TMC::t_label(x), TMC::r_label(y), lam.m.value(y, x), "m");
            if (q.hom(TMC::r_label(y), TMC::t_label(x)).space.total_dim())
                r.fail("hom formula: nonzero hom from r:" + y + " to t:" + x);
        }
    return r;
}

ModuleOp identity_op(CatPtr c) {
    ModuleOp op;
    op.src = c;
    op.tgt = c;
    op.on_module = [](const DgModule& m) { return m; };
    op.on_nat = [](const DgNat& n) { return n; };
    return op;
}

ModuleOp extension_op(const DgFunctor& f) {
    ModuleOp op;
    op.src = f.src;
    op.tgt = f.tgt;
    op.on_module = [f](const DgModule& m) { return lan(f, m).value; };
    op.on_nat = [f](const DgNat& n) { return lan_on_nat(lan(f, n.from), lan(f, n.to), n); };
    return op;
}

ModuleOp restriction_op(const DgFunctor& f) {
    ModuleOp op;
    op.src = f.tgt;
    op.tgt = f.src;
    op.on_module = [f](const DgModule& m) { return restrict_module(f, m); };
    op.on_nat = [f](const DgNat& n) { return restrict_nat(f, n); };
    return op;
}

ModuleOp coextension_op(const DgFunctor& f) {
    ModuleOp op;
    op.src = f.src;
    op.tgt = f.tgt;
    op.on_module = [f](const DgModule& m) { return ran(f, m).value; };
    op.on_nat = [f](const DgNat& n) { return ran_on_nat(ran(f, n.from), ran(f, n.to), n); };
    return op;
}

ModuleOp zero_module_op(CatPtr src, CatPtr tgt) {
    ModuleOp op;
    op.src = std::move(src);
    op.tgt = tgt;
    op.on_module = [tgt](const DgModule&) { return zero_module(tgt); };
    op.on_nat = [tgt](const DgNat& n) {
        return nat_zero(zero_module(tgt), zero_module(tgt), n.deg);
    };
    return op;
}

namespace {

struct NormalizedExtension {
    LanData lg;
    std::map<std::string, GradedMap> psi;  // new value(c) -> extension value(c)
    DgModule value;
};

NormalizedExtension normalized_extend(const DgFunctor& f, const DgModule& b) {
    if (!fully_faithful(f))
        throw std::invalid_argument("normalized extension: functor is not fully faithful");
    std::map<std::string, std::string> pre;
    for (const auto& x : f.src->objects)
        if (!pre.emplace(f.on_ob(x), x).second)
            throw std::invalid_argument("normalized extension: functor is not injective on objects");

    NormalizedExtension ne;
    ne.lg = lan(f, b);
    DgModule out;
    out.base = f.tgt;
    for (const auto& c : f.tgt->objects) {
        auto p = pre.find(c);
        if (p != pre.end()) {
            ne.psi.emplace(c, ne.lg.unit.at(p->second));
            if (b.value(p->second).space.total_dim()) out.values.emplace(c, b.value(p->second));
        } else {
            ne.psi.emplace(c, GradedMap::id(ne.lg.value.value(c).space));
            if (ne.lg.value.value(c).space.total_dim())
                out.values.emplace(c, ne.lg.value.value(c));
        }
    }
    for (const MorKey& k : f.tgt->basis_morphisms()) {
        GradedMap a = graded_inverse(ne.psi.at(k.tgt))
                          .compose(ne.lg.value.act(k))
                          .compose(ne.psi.at(k.src));
        if (!a.is_zero()) out.action.emplace(k, a);
    }
    ne.value = std::move(out);
    return ne;
}

}  // namespace

ModuleOp normalized_extension_op(const DgFunctor& f) {
    ModuleOp op;
    op.src = f.src;
    op.tgt = f.tgt;
    op.on_module = [f](const DgModule& m) { return normalized_extend(f, m).value; };
    op.on_nat = [f](const DgNat& n) {
        NormalizedExtension a = normalized_extend(f, n.from);
        NormalizedExtension b = normalized_extend(f, n.to);
        DgNat ln = lan_on_nat(a.lg, b.lg, n);
        DgNat out;
        out.from = a.value;
        out.to = b.value;
        out.deg = n.deg;
        for (const auto& c : f.tgt->objects) {
            GradedMap g =
                graded_inverse(b.psi.at(c)).compose(ln.at(c)).compose(a.psi.at(c));
            if (!g.is_zero()) out.comp.emplace(c, g);
        }
        return out;
    };
    return op;
}

Bimodule bimodule_pushforward(const ModuleOp& op, const Bimodule& m) {
    if (!op.on_module || !op.on_nat)
        throw std::invalid_argument("pushforward: operation is missing its maps");
    if (!same_base(op.src, m.row))
        throw std::invalid_argument("pushforward: operation source differs from the row side");

    Bimodule n = bimodule_frame(op.tgt, m.col);
    std::map<std::string, DgModule> pushed;
    for (const auto& t : m.col->objects) pushed.emplace(t, op.on_module(bimodule_slice(m, t)));
    for (const auto& t : m.col->objects)
        for (const auto& s : op.tgt->objects) {
            const Complex& v = pushed.at(t).value(s);
            if (v.space.total_dim()) n.mod.values.emplace(TensorCategory::obj_label(s, t), v);
        }

    std::map<MorKey, DgNat> bars;
    for (const MorKey& tk : m.col->basis_morphisms())
        bars.emplace(tk, op.on_nat(slice_map(m, m.col->basis_element(tk), tk.deg)));

    for (const MorKey& bk : n.base->basis_morphisms()) {
        const auto& [s, ta] = n.tens->factors.at(bk.src);
        const auto& [sp, tb] = n.tens->factors.at(bk.tgt);
        TensorComplex::Slot sl = n.tens->slots.at({bk.src, bk.tgt}).at(bk.deg)[bk.idx];
        int gdeg = sl.i;
        int tdeg = bk.deg - sl.i;
        MorKey gk{s, sp, gdeg, sl.a};          // row morphism of the pushed side
        MorKey tk{tb, ta, tdeg, sl.b};         // underlying col morphism T -> T'
        const DgNat& bar = bars.at(tk);        // pushed slice(ta) -> pushed slice(tb)
        GradedMap one = pushed.at(tb).act(gk).compose(bar.at(s));
        GradedMap two = bar.at(sp)
                            .compose(pushed.at(ta).act(gk))
                            .scaled(Scalar::sign(static_cast<long>(tdeg) * gdeg));
        if (!(one == two))
            throw std::logic_error(
                "pushforward: the two action expressions disagree at " + bk.src + " -> " +
                bk.tgt + " (the operation is not dg)");
        if (!one.is_zero()) n.mod.action.emplace(bk, std::move(one));
    }
    return n;
}

GData g_functor(const Bimodule& m, const DgModule& b) {
    if (!same_base(b.base, m.row))
        throw std::invalid_argument("g_functor: module is not over the row side");
    GData g;
    g.m = m;
    g.b = b;
    DgModule v;
    v.base = m.col;
    for (const auto& t : m.col->objects) {
        NatData nd = dgnat_complex(bimodule_slice(m, t), b);
        if (nd.e.cx.space.total_dim()) v.values.emplace(t, nd.e.cx);
        g.pieces.emplace(t, std::move(nd));
    }
    for (const MorKey& tk : m.col->basis_morphisms()) {
        DgNat bar = slice_map(m, m.col->basis_element(tk), tk.deg);
        const NatData& ns = g.pieces.at(tk.src);
        const NatData& nt = g.pieces.at(tk.tgt);
        GradedMap a = GradedMap::zero(ns.e.cx.space, nt.e.cx.space, tk.deg);
        for (int nn : ns.e.cx.space.degrees()) {
            size_t dn = ns.e.cx.dim(nn);
            Matrix blk(nt.e.cx.dim(nn + tk.deg), dn);
            for (size_t e = 0; e < dn; ++e) {
                DgNat eta = ns.to_nat(nn, basis_vec(dn, e));
                DgNat img = nat_compose(eta, bar).scaled(
                    Scalar::sign(static_cast<long>(nn) * tk.deg));
                blk.set_column(e, nt.nat_coords(img));
            }
            a.set_block(nn, blk);
        }
        if (!a.is_zero()) v.action.emplace(tk, a);
    }
    g.value = std::move(v);
    return g;
}

DgNat g_on_nat(const GData& from, const GData& to, const DgNat& eps) {
    if (!(eps.from == from.b) || !(eps.to == to.b))
        throw std::invalid_argument("g_on_nat: transformation endpoints differ from the data");
    DgNat out;
    out.from = from.value;
    out.to = to.value;
    out.deg = eps.deg;
    for (const auto& t : from.m.col->objects) {
        const NatData& ns = from.pieces.at(t);
        const NatData& nt = to.pieces.at(t);
        GradedMap c = GradedMap::zero(ns.e.cx.space, nt.e.cx.space, eps.deg);
        for (int nn : ns.e.cx.space.degrees()) {
            size_t dn = ns.e.cx.dim(nn);
            Matrix blk(nt.e.cx.dim(nn + eps.deg), dn);
            for (size_t e = 0; e < dn; ++e) {
                DgNat eta = ns.to_nat(nn, basis_vec(dn, e));
                blk.set_column(e, nt.nat_coords(nat_compose(eps, eta)));
            }
            c.set_block(nn, blk);
        }
        if (!c.is_zero()) out.comp.emplace(t, c);
    }
    return out;
}

CommaCategory comma_category(CatPtr d, const DgFunctor& f) {
    if (!d || !f.src || !f.tgt || !same_base(d, f.tgt))
        throw std::invalid_argument("comma: the functor does not land in the given category");

    CommaCategory cc;
    DgCategory q;
    for (const auto& dd : d->objects)
        for (const auto& c0 : f.src->objects) {
            const std::string& fc = f.on_ob(c0);
            std::string zl = "(" + dd + "|0|" + c0 + ")";
            q.objects.push_back(zl);
            cc.objects.emplace(zl, CommaCategory::Obj{dd, c0, d->zero_element(dd, fc)});
            const Complex& h = d->hom(dd, fc);
            if (h.dim(0)) {
                Matrix zk = h.d.block(0).kernel();
                for (size_t j = 0; j < zk.cols(); ++j) {
                    std::string lb = "(" + dd + "|z" + std::to_string(j) + "|" + c0 + ")";
                    q.objects.push_back(lb);
                    cc.objects.emplace(lb,
                                       CommaCategory::Obj{dd, c0, d->element(dd, fc, 0, zk.column(j))});
                }
            }
        }

    struct PairData {
        DirectSum ds;
        GradedMap incl;  // subcomplex -> ds.total
    };
    std::map<std::pair<std::string, std::string>, PairData> pd;
    auto split_dims = [&](const CommaCategory::Obj& a, const CommaCategory::Obj& b) {
        return std::pair<const Complex&, const Complex&>{d->hom(a.d, b.d),
                                                         f.src->hom(a.c, b.c)};
    };

    for (const auto& o1 : q.objects)
        for (const auto& o2 : q.objects) {
            const CommaCategory::Obj& A = cc.objects.at(o1);
            const CommaCategory::Obj& B = cc.objects.at(o2);
            auto [hd, hc] = split_dims(A, B);
            DirectSum ds = direct_sum({&hd, &hc}, {"d", "c"});
            const Complex& ht = d->hom(A.d, f.on_ob(B.c));

            std::map<int, Matrix> kers;
            for (int n : ds.total.space.degrees()) {
                size_t cols = ds.total.dim(n);
                Matrix con(ht.dim(n), cols);
                auto offd = ds.offsets[0].find(n);
                auto offc = ds.offsets[1].find(n);
                if (offd != ds.offsets[0].end())
                    for (size_t i = 0; i < hd.dim(n); ++i) {
                        Element phi = d->element(A.d, B.d, n, basis_vec(hd.dim(n), i));
                        Element comp = d->compose(B.g, phi);
                        Vec v = comp.at(n, con.rows());
                        for (size_t rr = 0; rr < v.size(); ++rr) con.at(rr, offd->second + i) = v[rr];
                    }
                if (offc != ds.offsets[1].end())
                    for (size_t i = 0; i < hc.dim(n); ++i) {
                        Element psi = f.src->element(A.c, B.c, n, basis_vec(hc.dim(n), i));
                        Element comp = d->compose(f.on_element(psi), A.g);
                        Vec v = comp.at(n, con.rows());
                        for (size_t rr = 0; rr < v.size(); ++rr)
                            con.at(rr, offc->second + i) = Scalar(0) - v[rr];
                    }
                kers.emplace(n, con.kernel());
            }

            Complex sub;
            for (const auto& [n, k] : kers)
                if (k.cols()) {
                    std::vector<std::string> lab;
                    for (size_t i = 0; i < k.cols(); ++i) lab.push_back("k" + std::to_string(i));
                    sub.space.basis.emplace(n, std::move(lab));
                }
            GradedMap incl = GradedMap::zero(sub.space, ds.total.space, 0);
            for (const auto& [n, k] : kers)
                if (k.cols()) incl.set_block(n, k);
            sub.d = GradedMap::zero(sub.space, sub.space, 1);
            for (const auto& [n, k] : kers) {
                if (!k.cols()) continue;
                Matrix rhs = ds.total.d.block(n) * k;
                auto nx = kers.find(n + 1);
                Matrix knx = nx == kers.end() ? Matrix(ds.total.dim(n + 1), 0) : nx->second;
                auto sol = knx.solve_matrix(rhs);
                if (!sol) throw std::logic_error("comma: differential leaves the subcomplex");
                sub.d.set_block(n, *sol);
            }
            if (sub.space.total_dim()) q.homs.emplace(std::pair{o1, o2}, sub);
            pd.emplace(std::pair{o1, o2}, PairData{std::move(ds), std::move(incl)});
        }

    auto split = [&](const PairData& p, const Complex& hd, const Complex& hc, int n,
                     const Vec& tot) {
        Vec phi(hd.dim(n), Scalar(0)), psi(hc.dim(n), Scalar(0));
        auto offd = p.ds.offsets[0].find(n);
        auto offc = p.ds.offsets[1].find(n);
        if (offd != p.ds.offsets[0].end())
            for (size_t i = 0; i < phi.size(); ++i) phi[i] = tot[offd->second + i];
        if (offc != p.ds.offsets[1].end())
            for (size_t i = 0; i < psi.size(); ++i) psi[i] = tot[offc->second + i];
        return std::pair{phi, psi};
    };
    auto assemble = [&](const PairData& p, int n, const Vec& phi, const Vec& psi) {
        Vec tot(p.ds.total.dim(n), Scalar(0));
        auto offd = p.ds.offsets[0].find(n);
        auto offc = p.ds.offsets[1].find(n);
        if (offd != p.ds.offsets[0].end())
            for (size_t i = 0; i < phi.size(); ++i) tot[offd->second + i] = phi[i];
        if (offc != p.ds.offsets[1].end())
            for (size_t i = 0; i < psi.size(); ++i) tot[offc->second + i] = psi[i];
        return tot;
    };

    for (const auto& o1 : q.objects)
        for (const auto& o2 : q.objects) {
            auto h12 = q.homs.find({o1, o2});
            if (h12 == q.homs.end()) continue;
            for (const auto& o3 : q.objects) {
                auto h23 = q.homs.find({o2, o3});
                if (h23 == q.homs.end()) continue;
                const CommaCategory::Obj& A = cc.objects.at(o1);
                const CommaCategory::Obj& B = cc.objects.at(o2);
                const CommaCategory::Obj& C = cc.objects.at(o3);
                const PairData& p12 = pd.at({o1, o2});
                const PairData& p23 = pd.at({o2, o3});
                const PairData& p13 = pd.at({o1, o3});
                for (const auto& [pdeg, flabels] : h12->second.space.basis)
                    for (size_t fi = 0; fi < flabels.size(); ++fi) {
                        Vec l1 = p12.incl.apply(pdeg, basis_vec(flabels.size(), fi));
                        auto [phi1, psi1] =
                            split(p12, d->hom(A.d, B.d), f.src->hom(A.c, B.c), pdeg, l1);
                        Element phi1e = d->element(A.d, B.d, pdeg, phi1);
                        Element psi1e = f.src->element(A.c, B.c, pdeg, psi1);
                        for (const auto& [qdeg, glabels] : h23->second.space.basis)
                            for (size_t gi = 0; gi < glabels.size(); ++gi) {
                                Vec l2 = p23.incl.apply(qdeg, basis_vec(glabels.size(), gi));
                                auto [phi2, psi2] = split(p23, d->hom(B.d, C.d),
                                                          f.src->hom(B.c, C.c), qdeg, l2);
                                Element phi = d->compose(d->element(B.d, C.d, qdeg, phi2), phi1e);
                                Element psi = f.src->compose(
                                    f.src->element(B.c, C.c, qdeg, psi2), psi1e);
                                int n = pdeg + qdeg;
                                Vec tot = assemble(
                                    p13, n, phi.at(n, d->hom(A.d, C.d).dim(n)),
                                    psi.at(n, f.src->hom(A.c, C.c).dim(n)));
                                auto sol = p13.incl.block(n).solve(tot);
                                if (!sol)
                                    throw std::logic_error(
                                        "comma: composite escapes the subcomplex");
                                if (!is_zero(*sol))
                                    q.comp.emplace(
                                        CompKey{o1, o2, o3, qdeg, gi, pdeg, fi}, *sol);
                            }
                    }
            }
        }

    for (const auto& o : q.objects) {
        const CommaCategory::Obj& A = cc.objects.at(o);
        const PairData& p = pd.at({o, o});
        Vec tot = assemble(p, 0, d->units.at(A.d), f.src->units.at(A.c));
        auto sol = p.incl.block(0).solve(tot);
        if (!sol) throw std::logic_error("comma: identity escapes the subcomplex");
        q.units.emplace(o, *sol);
    }

    cc.cat = make_cat(std::move(q));
    return cc;
}

RecollementOps make_quotient_recollement(CatPtr base, const std::vector<std::string>& through) {
    QuotientCategory q = quotient_category(base, ideal_from_subcategory(base, through));
    CatPtr sub = make_cat(full_subcategory(*base, through));
    DgFunctor j = inclusion_functor(sub, base);
    RecollementOps ops;
    ops.quot_extend = extension_op(q.projection);
    ops.inflate = restriction_op(q.projection);
    ops.quot_coextend = coextension_op(q.projection);
    ops.sub_extend = extension_op(j);
    ops.sub_restrict = restriction_op(j);
    ops.sub_coextend = coextension_op(j);
    return ops;
}

namespace {

bool nat_shape_match(const DgModule& a1, const DgModule& a2, const DgModule& b1,
                     const DgModule& b2) {
    NatData x = dgnat_complex(a1, a2);
    NatData y = dgnat_complex(b1, b2);
    return same_shape(x.e.cx, y.e.cx);
}

}  // namespace

ValidationReport dg_recollement_axioms(const RecollementOps& ops,
                                       const std::vector<DgModule>& battery) {
    ValidationReport r;
    const CatPtr& mid = ops.inflate.tgt;
    if (!mid || !same_base(ops.quot_extend.src, mid) || !same_base(ops.quot_coextend.src, mid) ||
        !same_base(ops.sub_extend.tgt, mid) || !same_base(ops.sub_restrict.src, mid) ||
        !same_base(ops.sub_coextend.tgt, mid)) {
        r.fail("recollement axioms: operations do not share a middle category");
        return r;
    }
    if (!same_base(ops.quot_extend.tgt, ops.inflate.src) ||
        !same_base(ops.quot_extend.tgt, ops.quot_coextend.tgt) ||
        !same_base(ops.sub_extend.src, ops.sub_restrict.tgt) ||
        !same_base(ops.sub_extend.src, ops.sub_coextend.src)) {
        r.fail("recollement axioms: side categories disagree between the operations");
        return r;
    }
    if (battery.empty()) {
        r.fail("recollement axioms: empty battery");
        return r;
    }
    for (size_t i = 0; i < battery.size(); ++i) {
        if (!same_base(battery[i].base, mid)) {
            r.fail("recollement axioms: battery module " + std::to_string(i) +
                   " is not over the middle category");
            return r;
        }
        ValidationReport mr = validate_dg_module(battery[i]);
        if (!mr.ok) {
            r.fail("recollement axioms: battery module " + std::to_string(i) + " is invalid: " +
                   mr.issues.front());
            return r;
        }
    }

    std::vector<DgModule> qb, iqb, coq, sb, esb, csb;
    for (const DgModule& g : battery) {
        qb.push_back(ops.quot_extend.on_module(g));
        coq.push_back(ops.quot_coextend.on_module(g));
        sb.push_back(ops.sub_restrict.on_module(g));
    }
    for (const DgModule& h : qb) iqb.push_back(ops.inflate.on_module(h));
    for (const DgModule& s : sb) {
        esb.push_back(ops.sub_extend.on_module(s));
        csb.push_back(ops.sub_coextend.on_module(s));
    }

    for (size_t i = 0; i < battery.size(); ++i)
        for (size_t k = 0; k < battery.size(); ++k) {
            if (!nat_shape_match(qb[i], qb[k], battery[i], iqb[k]))
                r.fail("adjunction (quot_extend, inflate) fails at (g=" + std::to_string(i) +
                       ", h=" + std::to_string(k) + ")");
            if (!nat_shape_match(esb[i], battery[k], sb[i], sb[k]))
                r.fail("adjunction (sub_extend, sub_restrict) fails at (s=" + std::to_string(i) +
                       ", g=" + std::to_string(k) + ")");
            if (!nat_shape_match(iqb[i], battery[k], qb[i], coq[k]))
                r.fail("adjunction (inflate, quot_coextend) fails at (h=" + std::to_string(i) +
                       ", g=" + std::to_string(k) + ")");
            if (!nat_shape_match(sb[i], sb[k], battery[i], csb[k]))
                r.fail("adjunction (sub_restrict, sub_coextend) fails at (g=" + std::to_string(i) +
                       ", s=" + std::to_string(k) + ")");
        }

    for (size_t k = 0; k < qb.size(); ++k) {
        DgModule w = ops.sub_restrict.on_module(iqb[k]);
        for (const auto& [x, v] : w.values)
            if (v.space.total_dim()) {
                r.fail("inflated module " + std::to_string(k) +
                       " does not vanish on the sub side (value at " + x + ")");
                break;
            }
    }

    for (size_t i = 0; i < qb.size(); ++i)
        for (size_t k = 0; k < qb.size(); ++k)
            if (!nat_shape_match(qb[i], qb[k], iqb[i], iqb[k]))
                r.fail("inflation is not fully faithful at (" + std::to_string(i) + ", " +
                       std::to_string(k) + ")");
    for (size_t i = 0; i < sb.size(); ++i)
        for (size_t k = 0; k < sb.size(); ++k) {
            if (!nat_shape_match(sb[i], sb[k], esb[i], esb[k]))
                r.fail("sub extension is not fully faithful at (" + std::to_string(i) + ", " +
                       std::to_string(k) + ")");
            if (!nat_shape_match(sb[i], sb[k], csb[i], csb[k]))
                r.fail("sub coextension is not fully faithful at (" + std::to_string(i) + ", " +
                       std::to_string(k) + ")");
        }
    return r;
}

TriangularMatrixCategory build_lambda_variant(const ModuleOp& jbang, const Bimodule& m) {
    Bimodule n = bimodule_pushforward(jbang, m);
    return matrix_category(m.col, n, jbang.tgt);
}

namespace {

struct CompatCaches {
    std::vector<DgModule> fx, gl;
    std::vector<GData> g1x, g2fx, g2l, g1gl;
};

CompatCaches build_compat_caches(const ModuleOp& F, const DgFunctor& f, const Bimodule& m,
                                 const Bimodule& n, const std::vector<DgModule>& left,
                                 const std::vector<DgModule>& right) {
    CompatCaches cc;
    for (const DgModule& x : left) {
        cc.fx.push_back(F.on_module(x));
        cc.g1x.push_back(g_functor(m, x));
        cc.g2fx.push_back(g_functor(n, cc.fx.back()));
    }
    for (const DgModule& l : right) {
        cc.gl.push_back(restrict_module(f, l));
        cc.g2l.push_back(g_functor(n, l));
        cc.g1gl.push_back(g_functor(m, cc.gl.back()));
    }
    return cc;
}

}  // namespace

CompatibilityData compatibility_data(const DgFunctor& f, const Bimodule& m, uint64_t seed) {
    CompatibilityData d;
    d.f = f;
    d.m = m;
    if (!same_base(f.src, m.row)) {
        d.report.fail("compatibility: functor source differs from the row side");
        return d;
    }
    if (!fully_faithful(f)) {
        d.report.fail("compatibility: the extension functor is not fully faithful");
        return d;
    }
    ModuleOp F = normalized_extension_op(f);
    for (const auto& t : m.col->objects) {
        DgModule mt = bimodule_slice(m, t);
        if (!(restrict_module(f, F.on_module(mt)) == mt))
            d.report.fail("compatibility: extension unit is not the identity on the slice at " +
                          t);
    }
    if (!d.report.ok) return d;
    d.pushed = bimodule_pushforward(F, m);
    for (const auto& t : m.col->objects)
        if (!(bimodule_slice(d.pushed, t) == F.on_module(bimodule_slice(m, t)))) {
            d.report.fail("compatibility: pushed slice differs from the extended slice at " + t);
            return d;
        }

    for (const auto& x : f.src->objects) d.left_batt.push_back(representable(f.src, x));
    d.left_batt.push_back(random_module(f.src, seed));
    for (const auto& c : f.tgt->objects) d.right_batt.push_back(representable(f.tgt, c));
    d.right_batt.push_back(random_module(f.tgt, seed + 1));

    CompatCaches cc = build_compat_caches(F, f, m, d.pushed, d.left_batt, d.right_batt);

    for (size_t i = 0; i < d.left_batt.size(); ++i) {
        DgNat xi;
        xi.from = cc.g1x[i].value;
        xi.to = cc.g2fx[i].value;
        xi.deg = 0;
        for (const auto& t : m.col->objects) {
            const NatData& ns = cc.g1x[i].pieces.at(t);
            const NatData& nt = cc.g2fx[i].pieces.at(t);
            GradedMap c = GradedMap::zero(ns.e.cx.space, nt.e.cx.space, 0);
            for (int nn : ns.e.cx.space.degrees()) {
                size_t dn = ns.e.cx.dim(nn);
                Matrix blk(nt.e.cx.dim(nn), dn);
                for (size_t e = 0; e < dn; ++e)
                    blk.set_column(e, nt.nat_coords(F.on_nat(ns.to_nat(nn, basis_vec(dn, e)))));
                c.set_block(nn, blk);
            }
            if (!c.is_zero()) xi.comp.emplace(t, c);
        }
        d.xi.push_back(std::move(xi));
    }

    for (size_t k = 0; k < d.right_batt.size(); ++k) {
        DgNat rho;
        rho.from = cc.g2l[k].value;
        rho.to = cc.g1gl[k].value;
        rho.deg = 0;
        for (const auto& t : m.col->objects) {
            const NatData& ns = cc.g2l[k].pieces.at(t);
            const NatData& nt = cc.g1gl[k].pieces.at(t);
            GradedMap c = GradedMap::zero(ns.e.cx.space, nt.e.cx.space, 0);
            for (int nn : ns.e.cx.space.degrees()) {
                size_t dn = ns.e.cx.dim(nn);
                Matrix blk(nt.e.cx.dim(nn), dn);
                for (size_t e = 0; e < dn; ++e)
                    blk.set_column(e,
                                   nt.nat_coords(restrict_nat(f, ns.to_nat(nn, basis_vec(dn, e)))));
                c.set_block(nn, blk);
            }
            if (!c.is_zero()) rho.comp.emplace(t, c);
        }
        d.rho.push_back(std::move(rho));
    }

    ValidationReport vr = verify_compatibility(f, m, d);
    for (const auto& s : vr.issues) d.report.fail(s);
    return d;
}

ValidationReport verify_compatibility(const DgFunctor& f, const Bimodule& m,
                                      const CompatibilityData& d) {
    ValidationReport r;
    if (!fully_faithful(f)) {
        r.fail("compatibility: the extension functor is not fully faithful");
        return r;
    }
    if (d.left_batt.empty() || d.right_batt.empty() || d.xi.size() != d.left_batt.size() ||
        d.rho.size() != d.right_batt.size()) {
        r.fail("compatibility: comparison data is incomplete");
        return r;
    }
    ModuleOp F = normalized_extension_op(f);
    Bimodule n = bimodule_pushforward(F, m);
    CompatCaches cc = build_compat_caches(F, f, m, n, d.left_batt, d.right_batt);

    std::vector<bool> xi_ok(d.xi.size(), true), rho_ok(d.rho.size(), true);
    for (size_t i = 0; i < d.xi.size(); ++i) {
        const DgNat& xi = d.xi[i];
        if (xi.deg != 0 || !(xi.from == cc.g1x[i].value) || !(xi.to == cc.g2fx[i].value)) {
            r.fail("xi has the wrong shape at X=" + std::to_string(i));
            xi_ok[i] = false;
            continue;
        }
        if (!validate_dg_nat(xi).ok) r.fail("xi is not natural at X=" + std::to_string(i));
        if (!nat_d(xi).is_zero()) r.fail("xi is not closed at X=" + std::to_string(i));
    }
    for (size_t k = 0; k < d.rho.size(); ++k) {
        const DgNat& rho = d.rho[k];
        if (rho.deg != 0 || !(rho.from == cc.g2l[k].value) || !(rho.to == cc.g1gl[k].value)) {
            r.fail("rho has the wrong shape at L=" + std::to_string(k));
            rho_ok[k] = false;
            continue;
        }
        if (!validate_dg_nat(rho).ok) r.fail("rho is not natural at L=" + std::to_string(k));
        if (!nat_d(rho).is_zero()) r.fail("rho is not closed at L=" + std::to_string(k));
        for (const auto& t : m.col->objects) {
            const Complex& up = cc.g2l[k].pieces.at(t).e.cx;
            const Complex& lo = cc.g1gl[k].pieces.at(t).e.cx;
            if (!same_graded_dims(up, lo))
                r.fail("transformation complexes differ at (L=" + std::to_string(k) + ", " + t +
                       ")");
            GradedMap c = rho.at(t);
            for (int nn : up.space.degrees()) {
                if (!up.dim(nn)) continue;
                Matrix blk = c.block(nn);
                if (blk.rank() != blk.cols())
                    r.fail("rho is not injective at (L=" + std::to_string(k) + ", " + t +
                           ", degree " + std::to_string(nn) + ")");
            }
        }
    }

    for (size_t i = 0; i < d.left_batt.size(); ++i) {
        if (!xi_ok[i]) continue;
        for (size_t k = 0; k < d.right_batt.size(); ++k) {
            if (!rho_ok[k]) continue;
            NatData big = dgnat_complex(cc.fx[i], d.right_batt[k]);
            for (int nn : big.e.cx.space.degrees()) {
                size_t dn = big.e.cx.dim(nn);
                for (size_t idx = 0; idx < dn; ++idx) {
                    DgNat h = big.to_nat(nn, basis_vec(dn, idx));
                    DgNat lhs = g_on_nat(cc.g1x[i], cc.g1gl[k], restrict_nat(f, h));
                    DgNat mid = g_on_nat(cc.g2fx[i], cc.g2l[k], h);
                    DgNat rhs = nat_compose(d.rho[k], nat_compose(mid, d.xi[i]));
                    if (!(lhs == rhs))
                        r.fail("compatibility equation fails at (X=" + std::to_string(i) +
                               ", L=" + std::to_string(k) + ", f=degree " + std::to_string(nn) +
                               " index " + std::to_string(idx) + ")");
                }
            }
        }
    }
    return r;
}

}  // namespace dgcat
