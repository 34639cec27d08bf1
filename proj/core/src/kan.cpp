#include "dgcat/kan.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgcat {

namespace {

Vec basis_vec(size_t dim, size_t i) {
    Vec v(dim);
    v[i] = Scalar::one();
    return v;
}

/* Postcomposition by a homogeneous gamma: hom(x, src(gamma)) -> hom(x, tgt(gamma)),
 * j ↦ gamma∘j (no sign). */
GradedMap postcompose(const CatPtr& c, const std::string& x, const Element& gamma, int gdeg) {
    const Complex& s = c->hom(x, gamma.src);
    const Complex& t = c->hom(x, gamma.tgt);
    GradedMap m = GradedMap::zero(s.space, t.space, gdeg);
    for (int q : s.space.degrees()) {
        Matrix blk(t.space.dim(q + gdeg), s.dim(q));
        for (size_t a = 0; a < s.dim(q); ++a) {
            Element r = c->compose(gamma, c->element(x, gamma.src, q, basis_vec(s.dim(q), a)));
            blk.set_column(a, r.at(q + gdeg, blk.rows()));
        }
        m.set_block(q, blk);
    }
    return m;
}

/* Signed precomposition by gamma: hom(tgt(gamma), y) -> hom(src(gamma), y),
 * j ↦ (-1)^{|gamma||j|} j∘gamma. The sign makes the family a graded
 * transformation between the restricted representables. */
GradedMap precompose_signed(const CatPtr& c, const Element& gamma, int gdeg, const std::string& y) {
    const Complex& s = c->hom(gamma.tgt, y);
    const Complex& t = c->hom(gamma.src, y);
    GradedMap m = GradedMap::zero(s.space, t.space, gdeg);
    for (int q : s.space.degrees()) {
        Matrix blk(t.space.dim(q + gdeg), s.dim(q));
        for (size_t a = 0; a < s.dim(q); ++a) {
            Element j = c->element(gamma.tgt, y, q, basis_vec(s.dim(q), a));
            Element r = c->compose(j, gamma).scaled(Scalar::sign(gdeg * q));
            blk.set_column(a, r.at(q + gdeg, blk.rows()));
        }
        m.set_block(q, blk);
    }
    return m;
}

/* Componentwise inverse of a degree-0 transformation with invertible blocks. */
DgNat nat_inverse(const DgNat& eta) {
    if (eta.deg != 0) throw std::invalid_argument("nat_inverse: degree must be 0");
    DgNat out;
    out.from = eta.to;
    out.to = eta.from;
    out.deg = 0;
    for (const auto& x : eta.from.base->objects) {
        const GradedSpace& s = eta.from.value(x).space;
        const GradedSpace& t = eta.to.value(x).space;
        GradedMap m = eta.at(x);
        GradedMap inv = GradedMap::zero(t, s, 0);
        std::set<int> degs;
        for (int q : s.degrees()) degs.insert(q);
        for (int q : t.degrees()) degs.insert(q);
        for (int q : degs) {
            if (s.dim(q) != t.dim(q)) throw std::invalid_argument("nat_inverse: dimension mismatch");
            auto iv = m.block(q).inverse();
            if (!iv) throw std::invalid_argument("nat_inverse: block is not invertible");
            inv.set_block(q, *iv);
        }
        if (!inv.is_zero()) out.comp.emplace(x, inv);
    }
    return out;
}

bool same_dims(const GradedSpace& a, const GradedSpace& b) {
    std::set<int> degs;
    for (int q : a.degrees()) degs.insert(q);
    for (int q : b.degrees()) degs.insert(q);
    for (int q : degs)
        if (a.dim(q) != b.dim(q)) return false;
    return true;
}

void require_same_functor(const DgFunctor& a, const DgFunctor& b, const char* who) {
    if (!same_base(a.src, b.src) || !same_base(a.tgt, b.tgt) || a.ob != b.ob || !(a.mor == b.mor))
        throw std::invalid_argument(std::string(who) + ": the two extensions are along different functors");
}

}  // namespace

LanData lan(const DgFunctor& f, const DgModule& g) {
    if (!same_base(f.src, g.base)) throw std::invalid_argument("lan: module is not over the functor source");
    LanData out;
    out.f = f;
    out.g = g;
    const CatPtr& a = f.src;
    const CatPtr& c = f.tgt;
    DgFunctor opf = opposite_functor(f);
    DgModule value;
    value.base = c;
    for (const auto& ob : c->objects) {
        TensorOver to = tensor_over_category(restrict_module(opf, yoneda_module(c, ob)), g);
        if (to.c.cx.space.total_dim() > 0) value.values.emplace(ob, to.c.cx);
        out.pieces.emplace(ob, std::move(to));
    }
    for (const MorKey& k : c->basis_morphisms()) {
        const TensorOver& src = out.pieces.at(k.src);
        const TensorOver& dst = out.pieces.at(k.tgt);
        Element gamma = c->basis_element(k);
        std::map<std::string, GradedMap> legs;
        for (const auto& x : a->objects) {
            GradedMap post = postcompose(c, f.on_ob(x), gamma, k.deg);
            GradedMap tm = tensor_map(src.pairs.at({x, x}), dst.pairs.at({x, x}), post,
                                      GradedMap::id(g.value(x).space));
            legs.emplace(x, dst.c.ins.at(x).compose(tm));
        }
        GradedMap act = descend_through_coend(src.c, dst.c.cx.space, k.deg, legs);
        if (!act.is_zero()) value.action.emplace(k, act);
    }
    out.value = std::move(value);
    DgNat unit;
    unit.from = g;
    unit.to = restrict_module(f, out.value);
    unit.deg = 0;
    for (const auto& x : a->objects) {
        const std::string& fx = f.on_ob(x);
        const TensorOver& to = out.pieces.at(fx);
        const Complex& gx = g.value(x);
        GradedMap cm = GradedMap::zero(gx.space, to.c.cx.space, 0);
        const Vec& u = c->units.at(fx);
        for (int p : gx.space.degrees()) {
            Matrix blk(to.c.cx.dim(p), gx.dim(p));
            for (size_t b = 0; b < gx.dim(p); ++b)
                blk.set_column(b, to.pure_class(x, 0, u, p, basis_vec(gx.dim(p), b)));
            cm.set_block(p, blk);
        }
        if (!cm.is_zero()) unit.comp.emplace(x, cm);
    }
    out.unit = std::move(unit);
    return out;
}

RanData ran(const DgFunctor& f, const DgModule& g) {
    if (!same_base(f.src, g.base)) throw std::invalid_argument("ran: module is not over the functor source");
    RanData out;
    out.f = f;
    out.g = g;
    const CatPtr& a = f.src;
    const CatPtr& c = f.tgt;
    DgModule value;
    value.base = c;
    for (const auto& ob : c->objects) {
        NatData nd = dgnat_complex(restrict_module(f, representable(c, ob)), g);
        if (nd.e.cx.space.total_dim() > 0) value.values.emplace(ob, nd.e.cx);
        out.pieces.emplace(ob, std::move(nd));
    }
    for (const MorKey& k : c->basis_morphisms()) {
        const NatData& src = out.pieces.at(k.src);
        const NatData& dst = out.pieces.at(k.tgt);
        Element gamma = c->basis_element(k);
        DgNat vg;
        vg.from = dst.from;
        vg.to = src.from;
        vg.deg = k.deg;
        for (const auto& x : a->objects) {
            GradedMap pre = precompose_signed(c, gamma, k.deg, f.on_ob(x));
            if (!pre.is_zero()) vg.comp.emplace(x, pre);
        }
        GradedMap act = GradedMap::zero(src.e.cx.space, dst.e.cx.space, k.deg);
        for (int n : src.e.cx.space.degrees()) {
            size_t dn = src.e.cx.dim(n);
            Matrix blk(dst.e.cx.dim(n + k.deg), dn);
            for (size_t col = 0; col < dn; ++col) {
                DgNat comp =
                    nat_compose(src.to_nat(n, basis_vec(dn, col)), vg).scaled(Scalar::sign(k.deg * n));
                blk.set_column(col, dst.nat_coords(comp));
            }
            act.set_block(n, blk);
        }
        if (!act.is_zero()) value.action.emplace(k, act);
    }
    out.value = std::move(value);
    DgNat counit;
    counit.from = restrict_module(f, out.value);
    counit.to = g;
    counit.deg = 0;
    for (const auto& x : a->objects) {
        const std::string& fx = f.on_ob(x);
        const NatData& nd = out.pieces.at(fx);
        const Complex& gx = g.value(x);
        GradedMap cm = GradedMap::zero(nd.e.cx.space, gx.space, 0);
        const Vec& u = c->units.at(fx);
        for (int n : nd.e.cx.space.degrees()) {
            size_t dn = nd.e.cx.dim(n);
            Matrix blk(gx.dim(n), dn);
            for (size_t col = 0; col < dn; ++col)
                blk.set_column(col, nd.to_nat(n, basis_vec(dn, col)).at(x).apply(0, u));
            cm.set_block(n, blk);
        }
        if (!cm.is_zero()) counit.comp.emplace(x, cm);
    }
    out.counit = std::move(counit);
    return out;
}

DgNat lan_on_nat(const LanData& from, const LanData& to, const DgNat& eta) {
    require_same_functor(from.f, to.f, "lan_on_nat");
    if (!(eta.from == from.g) || !(eta.to == to.g))
        throw std::invalid_argument("lan_on_nat: transformation endpoints mismatch");
    DgNat out;
    out.from = from.value;
    out.to = to.value;
    out.deg = eta.deg;
    for (const auto& ob : from.f.tgt->objects) {
        const TensorOver& src = from.pieces.at(ob);
        const TensorOver& dst = to.pieces.at(ob);
        std::map<std::string, GradedMap> legs;
        for (const auto& x : from.f.src->objects) {
            GradedMap tm = tensor_map(src.pairs.at({x, x}), dst.pairs.at({x, x}),
                                      GradedMap::id(src.w.value(x).space), eta.at(x));
            legs.emplace(x, dst.c.ins.at(x).compose(tm));
        }
        GradedMap cm = descend_through_coend(src.c, dst.c.cx.space, eta.deg, legs);
        if (!cm.is_zero()) out.comp.emplace(ob, cm);
    }
    return out;
}

DgNat ran_on_nat(const RanData& from, const RanData& to, const DgNat& eta) {
    require_same_functor(from.f, to.f, "ran_on_nat");
    if (!(eta.from == from.g) || !(eta.to == to.g))
        throw std::invalid_argument("ran_on_nat: transformation endpoints mismatch");
    DgNat out;
    out.from = from.value;
    out.to = to.value;
    out.deg = eta.deg;
    for (const auto& ob : from.f.tgt->objects) {
        const NatData& src = from.pieces.at(ob);
        const NatData& dst = to.pieces.at(ob);
        GradedMap cm = GradedMap::zero(src.e.cx.space, dst.e.cx.space, eta.deg);
        for (int n : src.e.cx.space.degrees()) {
            size_t dn = src.e.cx.dim(n);
            Matrix blk(dst.e.cx.dim(n + eta.deg), dn);
            for (size_t col = 0; col < dn; ++col)
                blk.set_column(col, dst.nat_coords(nat_compose(eta, src.to_nat(n, basis_vec(dn, col)))));
            cm.set_block(n, blk);
        }
        if (!cm.is_zero()) out.comp.emplace(ob, cm);
    }
    return out;
}

DgNat lan_transpose(const LanData& lg, const DgModule& h, const DgNat& beta) {
    if (beta.deg != 0) throw std::invalid_argument("lan_transpose: transposition needs degree 0");
    if (!(beta.from == lg.g) || !(beta.to == restrict_module(lg.f, h)))
        throw std::invalid_argument("lan_transpose: endpoints mismatch");
    DgNat out;
    out.from = lg.value;
    out.to = h;
    out.deg = 0;
    for (const auto& ob : lg.f.tgt->objects) {
        const TensorOver& to = lg.pieces.at(ob);
        const Complex& hc = h.value(ob);
        std::map<std::string, GradedMap> legs;
        for (const auto& x : lg.f.src->objects) {
            const std::string& fx = lg.f.on_ob(x);
            const TensorComplex& tc = to.pairs.at({x, x});
            GradedMap bx = beta.at(x);
            GradedMap leg = GradedMap::zero(tc.cx.space, hc.space, 0);
            for (int n : tc.cx.space.degrees()) {
                Matrix blk(hc.dim(n), tc.cx.dim(n));
                const auto& slots = tc.slots.at(n);
                for (size_t col = 0; col < slots.size(); ++col) {
                    const auto& s = slots[col];
                    Vec w = bx.apply(n - s.i, basis_vec(tc.right.dim(n - s.i), s.b));
                    blk.set_column(col, h.act(MorKey{fx, ob, s.i, s.a}).apply(n - s.i, w));
                }
                leg.set_block(n, blk);
            }
            legs.emplace(x, leg);
        }
        GradedMap cm = factor_through_coend(to.c, hc, legs);
        if (!cm.is_zero()) out.comp.emplace(ob, cm);
    }
    return out;
}

DgNat lan_transpose_inv(const LanData& lg, const DgModule& h, const DgNat& alpha) {
    if (alpha.deg != 0 || !(alpha.from == lg.value) || !(alpha.to == h))
        throw std::invalid_argument("lan_transpose_inv: endpoints mismatch");
    return nat_compose(restrict_nat(lg.f, alpha), lg.unit);
}

DgNat ran_transpose(const RanData& rg, const DgModule& h, const DgNat& beta) {
    if (beta.deg != 0) throw std::invalid_argument("ran_transpose: transposition needs degree 0");
    if (!(beta.from == restrict_module(rg.f, h)) || !(beta.to == rg.g))
        throw std::invalid_argument("ran_transpose: endpoints mismatch");
    DgNat out;
    out.from = h;
    out.to = rg.value;
    out.deg = 0;
    for (const auto& ob : rg.f.tgt->objects) {
        const NatData& nd = rg.pieces.at(ob);
        const Complex& hc = h.value(ob);
        GradedMap cm = GradedMap::zero(hc.space, nd.e.cx.space, 0);
        for (int p : hc.space.degrees()) {
            Matrix blk(nd.e.cx.dim(p), hc.dim(p));
            for (size_t b = 0; b < hc.dim(p); ++b) {
                DgNat m;
                m.from = nd.from;
                m.to = rg.g;
                m.deg = p;
                for (const auto& x : rg.f.src->objects) {
                    const std::string& fx = rg.f.on_ob(x);
                    const Complex& vcx = nd.from.value(x);
                    const Complex& gx = rg.g.value(x);
                    GradedMap comp = GradedMap::zero(vcx.space, gx.space, p);
                    for (int q : vcx.space.degrees()) {
                        Matrix cb(gx.dim(p + q), vcx.dim(q));
                        for (size_t j = 0; j < vcx.dim(q); ++j) {
                            Vec w = h.act(MorKey{ob, fx, q, j}).apply(p, basis_vec(hc.dim(p), b));
                            cb.set_column(j, Scalar::sign(p * q) * beta.at(x).apply(p + q, w));
                        }
                        comp.set_block(q, cb);
                    }
                    if (!comp.is_zero()) m.comp.emplace(x, comp);
                }
                blk.set_column(b, nd.nat_coords(m));
            }
            cm.set_block(p, blk);
        }
        if (!cm.is_zero()) out.comp.emplace(ob, cm);
    }
    return out;
}

DgNat ran_transpose_inv(const RanData& rg, const DgModule& h, const DgNat& alpha) {
    if (alpha.deg != 0 || !(alpha.from == h) || !(alpha.to == rg.value))
        throw std::invalid_argument("ran_transpose_inv: endpoints mismatch");
    return nat_compose(rg.counit, restrict_nat(rg.f, alpha));
}

HomIso lan_hom_iso(const LanData& lg, const DgModule& h) {
    HomIso out;
    out.upper = dgnat_complex(lg.value, h);
    out.lower = dgnat_complex(lg.g, restrict_module(lg.f, h));
    GradedMap iso = GradedMap::zero(out.upper.e.cx.space, out.lower.e.cx.space, 0);
    std::set<int> degs;
    for (int n : out.upper.e.cx.space.degrees()) degs.insert(n);
    for (int n : out.lower.e.cx.space.degrees()) degs.insert(n);
    for (int n : degs) {
        if (out.upper.e.cx.dim(n) != out.lower.e.cx.dim(n))
            throw std::logic_error("lan_hom_iso: transformation complexes differ at degree " +
                                   std::to_string(n));
        Matrix blk(out.lower.e.cx.dim(n), out.upper.e.cx.dim(n));
        for (size_t e = 0; e < out.upper.e.cx.dim(n); ++e) {
            DgNat alpha = out.upper.to_nat(n, basis_vec(out.upper.e.cx.dim(n), e));
            blk.set_column(e, out.lower.nat_coords(nat_compose(restrict_nat(lg.f, alpha), lg.unit)));
        }
        if (!blk.invertible())
            throw std::logic_error("lan_hom_iso: transposition is not bijective at degree " +
                                   std::to_string(n));
        iso.set_block(n, blk);
    }
    if (!(out.lower.e.cx.d.compose(iso) == iso.compose(out.upper.e.cx.d)))
        throw std::logic_error("lan_hom_iso: transposition does not commute with the differentials");
    out.iso = iso;
    return out;
}

HomIso ran_hom_iso(const RanData& rg, const DgModule& h) {
    HomIso out;
    out.upper = dgnat_complex(h, rg.value);
    out.lower = dgnat_complex(restrict_module(rg.f, h), rg.g);
    GradedMap iso = GradedMap::zero(out.upper.e.cx.space, out.lower.e.cx.space, 0);
    std::set<int> degs;
    for (int n : out.upper.e.cx.space.degrees()) degs.insert(n);
    for (int n : out.lower.e.cx.space.degrees()) degs.insert(n);
    for (int n : degs) {
        if (out.upper.e.cx.dim(n) != out.lower.e.cx.dim(n))
            throw std::logic_error("ran_hom_iso: transformation complexes differ at degree " +
                                   std::to_string(n));
        Matrix blk(out.lower.e.cx.dim(n), out.upper.e.cx.dim(n));
        for (size_t e = 0; e < out.upper.e.cx.dim(n); ++e) {
            DgNat alpha = out.upper.to_nat(n, basis_vec(out.upper.e.cx.dim(n), e));
            blk.set_column(e, out.lower.nat_coords(nat_compose(rg.counit, restrict_nat(rg.f, alpha))));
        }
        if (!blk.invertible())
            throw std::logic_error("ran_hom_iso: transposition is not bijective at degree " +
                                   std::to_string(n));
        iso.set_block(n, blk);
    }
    if (!(out.lower.e.cx.d.compose(iso) == iso.compose(out.upper.e.cx.d)))
        throw std::logic_error("ran_hom_iso: transposition does not commute with the differentials");
    out.iso = iso;
    return out;
}

ValidationReport adjunction_check(const DgFunctor& f, const DgModule& g, const DgModule& h) {
    ValidationReport r;
    LanData lg = lan(f, g);
    RanData rg = ran(f, g);
    DgModule res = restrict_module(f, h);
    ValidationReport m1 = validate_dg_module(lg.value);
    if (!m1.ok) r.fail("left extension value: " + m1.issues.front());
    ValidationReport m2 = validate_dg_module(rg.value);
    if (!m2.ok) r.fail("right extension value: " + m2.issues.front());
    ValidationReport n1 = validate_dg_nat(lg.unit);
    if (!n1.ok)
        r.fail("unit: " + n1.issues.front());
    else if (!nat_d(lg.unit).is_zero())
        r.fail("unit is not closed");
    ValidationReport n2 = validate_dg_nat(rg.counit);
    if (!n2.ok)
        r.fail("counit: " + n2.issues.front());
    else if (!nat_d(rg.counit).is_zero())
        r.fail("counit is not closed");
    if (!r.ok) return r;
    try {
        if (!(lan_transpose(lg, lg.value, lg.unit) == nat_identity(lg.value)))
            r.fail("left extension triangle identity fails");
        if (!(ran_transpose(rg, rg.value, rg.counit) == nat_identity(rg.value)))
            r.fail("right extension triangle identity fails");
        lan_hom_iso(lg, h);
        ran_hom_iso(rg, h);
        std::vector<DgNat> below = z0_hom(g, res);
        std::vector<DgNat> above = z0_hom(lg.value, h);
        if (below.size() != above.size()) r.fail("left transposition: closed hom dimensions differ");
        for (const DgNat& b : below) {
            DgNat alpha = lan_transpose(lg, h, b);
            ValidationReport v = validate_dg_nat(alpha);
            if (!v.ok) {
                r.fail("left transpose is not natural: " + v.issues.front());
                continue;
            }
            if (!(lan_transpose_inv(lg, h, alpha) == b)) r.fail("left transpose roundtrip fails");
        }
        for (const DgNat& alpha : above)
            if (!(lan_transpose(lg, h, lan_transpose_inv(lg, h, alpha)) == alpha))
                r.fail("left transpose inverse roundtrip fails");
        std::vector<DgNat> under = z0_hom(res, g);
        std::vector<DgNat> over = z0_hom(h, rg.value);
        if (under.size() != over.size()) r.fail("right transposition: closed hom dimensions differ");
        for (const DgNat& b : under) {
            DgNat alpha = ran_transpose(rg, h, b);
            ValidationReport v = validate_dg_nat(alpha);
            if (!v.ok) {
                r.fail("right transpose is not natural: " + v.issues.front());
                continue;
            }
            if (!(ran_transpose_inv(rg, h, alpha) == b)) r.fail("right transpose roundtrip fails");
        }
        for (const DgNat& alpha : over)
            if (!(ran_transpose(rg, h, ran_transpose_inv(rg, h, alpha)) == alpha))
                r.fail("right transpose inverse roundtrip fails");
    } catch (const std::exception& e) {
        r.fail(std::string("transposition failed: ") + e.what());
    }
    return r;
}

bool fully_faithful(const DgFunctor& f) {
    for (const auto& x : f.src->objects)
        for (const auto& y : f.src->objects) {
            const Complex& s = f.src->hom(x, y);
            const Complex& t = f.tgt->hom(f.on_ob(x), f.on_ob(y));
            std::set<int> degs;
            for (int q : s.space.degrees()) degs.insert(q);
            for (int q : t.space.degrees()) degs.insert(q);
            for (int q : degs) {
                if (s.dim(q) != t.dim(q)) return false;
                Matrix blk(t.dim(q), s.dim(q));
                for (size_t j = 0; j < s.dim(q); ++j)
                    blk.set_column(
                        j, f.on_element(f.src->element(x, y, q, basis_vec(s.dim(q), j))).at(q, t.dim(q)));
                if (!blk.invertible()) return false;
            }
        }
    return true;
}

ValidationReport transfer_check(const DgFunctor& f, const DgModule& g) {
    ValidationReport r;
    if (!fully_faithful(f)) {
        r.fail("functor is not fully faithful");
        return r;
    }
    LanData lg = lan(f, g);
    RanData rg = ran(f, g);
    DgNat uinv, cinv;
    try {
        uinv = nat_inverse(lg.unit);
    } catch (const std::invalid_argument&) {
        r.fail("left extension unit is not an isomorphism");
    }
    try {
        cinv = nat_inverse(rg.counit);
    } catch (const std::invalid_argument&) {
        r.fail("right extension counit is not an isomorphism");
    }
    if (!r.ok) return r;
    for (const auto& x : f.src->objects) {
        LanData lx = lan(f, representable(f.src, x));
        for (const auto& ob : f.tgt->objects)
            if (!same_dims(lx.value.value(ob).space, f.tgt->hom(f.on_ob(x), ob).space)) {
                r.fail("left extension of the representable at " + x + " has wrong dimensions");
                break;
            }
    }
    DgModule resl = restrict_module(f, lg.value);
    DgModule resr = restrict_module(f, rg.value);
    for (const MorKey& k : f.src->basis_morphisms()) {
        if (!(uinv.at(k.tgt).compose(resl.act(k)).compose(lg.unit.at(k.src)) == g.act(k))) {
            r.fail("left transport does not reproduce the module tables");
            break;
        }
        if (!(rg.counit.at(k.tgt).compose(resr.act(k)).compose(cinv.at(k.src)) == g.act(k))) {
            r.fail("right transport does not reproduce the module tables");
            break;
        }
    }
    std::vector<DgNat> z = z0_hom(g, g);
    if (z.size() != z0_hom(lg.value, lg.value).size())
        r.fail("left extension changes the closed endomorphism count");
    if (z.size() != z0_hom(rg.value, rg.value).size())
        r.fail("right extension changes the closed endomorphism count");
    for (const DgNat& eta : z) {
        DgNat back = nat_compose(nat_compose(uinv, restrict_nat(f, lan_on_nat(lg, lg, eta))), lg.unit);
        if (!(back == eta)) r.fail("left transport does not restrict back to the original");
        DgNat rback = nat_compose(rg.counit, nat_compose(restrict_nat(f, ran_on_nat(rg, rg, eta)), cinv));
        if (!(rback == eta)) r.fail("right transport does not restrict back to the original");
    }
    return r;
}

}  // namespace dgcat
