#include "dgcat/category.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dgcat {

namespace {

std::string mor_name(const DgCategory& c, const MorKey& k) {
    return c.hom(k.src, k.tgt).space.label(k.deg, k.idx) + ": " + k.src + "->" + k.tgt + " @" +
           std::to_string(k.deg);
}

}  // namespace

int Element::degree() const {
    if (coords.size() != 1) throw std::logic_error("element: not homogeneous");
    return coords.begin()->first;
}

Vec Element::at(int deg, size_t dim) const {
    auto it = coords.find(deg);
    if (it != coords.end()) return it->second;
    return Vec(dim);
}

Element Element::operator+(const Element& o) const {
    if (src != o.src || tgt != o.tgt) throw std::invalid_argument("element: endpoint mismatch in +");
    Element r = *this;
    for (const auto& [d, v] : o.coords) {
        auto it = r.coords.find(d);
        if (it == r.coords.end())
            r.coords.emplace(d, v);
        else
            it->second = it->second + v;
    }
    r.normalize();
    return r;
}

Element Element::operator-(const Element& o) const { return *this + o.scaled(Scalar(-1)); }

Element Element::scaled(const Scalar& s) const {
    Element r;
    r.src = src;
    r.tgt = tgt;
    if (s.is_zero()) return r;
    for (const auto& [d, v] : coords) r.coords.emplace(d, s * v);
    return r;
}

void Element::normalize() {
    for (auto it = coords.begin(); it != coords.end();)
        it = dgcat::is_zero(it->second) ? coords.erase(it) : std::next(it);
}

bool DgCategory::has_object(const std::string& x) const {
    return std::find(objects.begin(), objects.end(), x) != objects.end();
}

const Complex& DgCategory::hom(const std::string& x, const std::string& y) const {
    static const Complex kZero = Complex::zero();
    auto it = homs.find({x, y});
    return it == homs.end() ? kZero : it->second;
}

size_t DgCategory::hom_dim(const std::string& x, const std::string& y, int deg) const {
    return hom(x, y).dim(deg);
}

Element DgCategory::zero_element(const std::string& x, const std::string& y) const {
    Element e;
    e.src = x;
    e.tgt = y;
    return e;
}

Element DgCategory::basis_element(const MorKey& k) const {
    Vec v(hom_dim(k.src, k.tgt, k.deg));
    if (k.idx >= v.size()) throw std::out_of_range("category: basis index out of range");
    v[k.idx] = Scalar::one();
    return element(k.src, k.tgt, k.deg, v);
}

Element DgCategory::element(const std::string& x, const std::string& y, int deg, const Vec& v) const {
    if (v.size() != hom_dim(x, y, deg)) throw std::invalid_argument("category: element dim mismatch");
    Element e = zero_element(x, y);
    if (!dgcat::is_zero(v)) e.coords.emplace(deg, v);
    return e;
}

Element DgCategory::identity(const std::string& x) const {
    auto it = units.find(x);
    if (it == units.end()) throw std::out_of_range("category: unknown object " + x);
    return element(x, x, 0, it->second);
}

Element DgCategory::compose(const Element& g, const Element& f) const {
    if (f.tgt != g.src) throw std::invalid_argument("category: endpoints not composable");
    Element r = zero_element(f.src, g.tgt);
    for (const auto& [gd, gv] : g.coords) {
        for (const auto& [fd, fv] : f.coords) {
            size_t rdim = hom_dim(f.src, g.tgt, gd + fd);
            if (rdim == 0) continue;
            Vec acc(rdim);
            bool any = false;
            for (size_t gi = 0; gi < gv.size(); ++gi) {
                if (gv[gi].is_zero()) continue;
                for (size_t fi = 0; fi < fv.size(); ++fi) {
                    if (fv[fi].is_zero()) continue;
                    auto it = comp.find(CompKey{f.src, f.tgt, g.tgt, gd, gi, fd, fi});
                    if (it == comp.end()) continue;
                    Scalar cf = gv[gi] * fv[fi];
                    for (size_t k = 0; k < rdim; ++k) acc[k] += cf * it->second[k];
                    any = true;
                }
            }
            if (any && !dgcat::is_zero(acc)) {
                auto slot = r.coords.find(gd + fd);
                if (slot == r.coords.end())
                    r.coords.emplace(gd + fd, acc);
                else
                    slot->second = slot->second + acc;
            }
        }
    }
    r.normalize();
    return r;
}

Element DgCategory::d_of(const Element& e) const {
    const Complex& h = hom(e.src, e.tgt);
    Element r = zero_element(e.src, e.tgt);
    for (const auto& [d, v] : e.coords) {
        Vec dv = h.d.apply(d, v);
        if (!dgcat::is_zero(dv)) r.coords.emplace(d + 1, dv);
    }
    return r;
}

std::vector<MorKey> DgCategory::basis_morphisms() const {
    std::vector<MorKey> out;
    for (const auto& x : objects) {
        for (const auto& y : objects) {
            const Complex& h = hom(x, y);
            for (const auto& [d, ls] : h.space.basis)
                for (size_t i = 0; i < ls.size(); ++i) out.push_back(MorKey{x, y, d, i});
        }
    }
    return out;
}

CatPtr make_cat(DgCategory c) { return std::make_shared<const DgCategory>(std::move(c)); }

ValidationReport validate_dg_category(const DgCategory& c) {
    ValidationReport r;
    std::set<std::string> seen(c.objects.begin(), c.objects.end());
    if (seen.size() != c.objects.size()) r.fail("category: duplicate object labels");

    for (const auto& [pair, h] : c.homs) {
        if (!c.has_object(pair.first) || !c.has_object(pair.second)) {
            r.fail("category: hom(" + pair.first + "," + pair.second + ") references unknown object");
            continue;
        }
        auto hr = validate_complex(h);
        if (!hr.ok)
            for (const auto& i : hr.issues)
                r.fail("hom(" + pair.first + "," + pair.second + "): " + i);
    }

    for (const auto& x : c.objects) {
        auto it = c.units.find(x);
        if (it == c.units.end()) {
            r.fail("category: missing identity for " + x);
            continue;
        }
        if (it->second.size() != c.hom_dim(x, x, 0)) {
            r.fail("category: identity of " + x + " has wrong dimension");
            continue;
        }
        if (!c.d_of(c.identity(x)).is_zero()) r.fail("category: d(1_" + x + ") != 0");
    }
    for (const auto& [x, v] : c.units)
        if (!c.has_object(x)) r.fail("category: identity for unknown object " + x);

    for (const auto& [k, v] : c.comp) {
        if (k.gidx >= c.hom_dim(k.y, k.z, k.gdeg) || k.fidx >= c.hom_dim(k.x, k.y, k.fdeg)) {
            r.fail("category: composition key out of range");
            continue;
        }
        if (v.size() != c.hom_dim(k.x, k.z, k.gdeg + k.fdeg))
            r.fail("category: composition value has wrong dimension");
    }
    if (!r.ok) return r;  // shape errors make the law checks meaningless

    auto basis = c.basis_morphisms();

    for (const auto& k : basis) {
        Element f = c.basis_element(k);
        if (!(c.compose(c.identity(k.tgt), f) == f))
            r.fail("category: 1∘f != f for " + mor_name(c, k));
        if (!(c.compose(f, c.identity(k.src)) == f))
            r.fail("category: f∘1 != f for " + mor_name(c, k));
    }

    for (const auto& kf : basis) {
        Element f = c.basis_element(kf);
        for (const auto& kg : basis) {
            if (kg.src != kf.tgt) continue;
            Element g = c.basis_element(kg);

            Element lhs = c.d_of(c.compose(g, f));
            Element rhs = c.compose(c.d_of(g), f) +
                          c.compose(g, c.d_of(f)).scaled(Scalar::sign(kg.deg));
            if (!(lhs == rhs))
                r.fail("category: Leibniz fails at pair (" + mor_name(c, kg) + ", " +
                       mor_name(c, kf) + ")");

            for (const auto& kh : basis) {
                if (kh.src != kg.tgt) continue;
                Element h = c.basis_element(kh);
                if (!(c.compose(h, c.compose(g, f)) == c.compose(c.compose(h, g), f)))
                    r.fail("category: associativity fails at (" + mor_name(c, kh) + ", " +
                           mor_name(c, kg) + ", " + mor_name(c, kf) + ")");
            }
        }
    }
    return r;
}

DgCategory opposite_category(const DgCategory& c) {
    DgCategory op;
    op.objects = c.objects;
    op.units = c.units;
    for (const auto& [pair, h] : c.homs) op.homs.emplace(std::make_pair(pair.second, pair.first), h);
    /* g^op∘f^op = (-1)^{|f||g|} (f∘g)^op: the op-table entry for outer g in
     * hom^op(y,z) = hom(z,y) and inner f in hom^op(x,y) = hom(y,x) is the signed
     * original entry with outer f (y -> x) and inner g (z -> y). */
    for (const auto& [k, v] : c.comp) {
        // original key: f' : k.x -> k.y (inner), g' : k.y -> k.z (outer), result k.x -> k.z
        CompKey opk;
        opk.x = k.z;
        opk.y = k.y;
        opk.z = k.x;
        opk.gdeg = k.gdeg;  // outer of op = outer of original, now viewed as hom^op(y, x... )
        opk.gidx = k.gidx;
        opk.fdeg = k.fdeg;
        opk.fidx = k.fidx;
        /* In op, the outer morphism lives in hom^op(k.y, k.x) = hom(k.x, k.y): that is
         * the original inner f. Swap roles. */
        std::swap(opk.gdeg, opk.fdeg);
        std::swap(opk.gidx, opk.fidx);
        Scalar s = Scalar::sign(static_cast<long>(k.gdeg) * k.fdeg);
        Vec sv(v.size());
        for (size_t i = 0; i < v.size(); ++i) sv[i] = s * v[i];
        if (!dgcat::is_zero(sv)) op.comp.emplace(opk, sv);
    }
    return op;
}

std::string TensorCategory::obj_label(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

Element TensorCategory::pure(const Element& alpha, const Element& beta) const {
    std::string sl = obj_label(alpha.src, beta.src);
    std::string tl = obj_label(alpha.tgt, beta.tgt);
    Element r;
    r.src = sl;
    r.tgt = tl;
    auto sit = slots.find({sl, tl});
    if (sit == slots.end()) return r;
    for (const auto& [da, va] : alpha.coords) {
        for (const auto& [db, vb] : beta.coords) {
            int k = da + db;
            auto lit = sit->second.find(k);
            if (lit == sit->second.end()) continue;
            const auto& slotlist = lit->second;
            Vec acc(slotlist.size());
            for (size_t s = 0; s < slotlist.size(); ++s) {
                const auto& sl2 = slotlist[s];
                if (sl2.i != da) continue;
                if (sl2.a < va.size() && sl2.b < vb.size()) acc[s] = va[sl2.a] * vb[sl2.b];
            }
            if (dgcat::is_zero(acc)) continue;
            auto it = r.coords.find(k);
            if (it == r.coords.end())
                r.coords.emplace(k, acc);
            else
                it->second = it->second + acc;
        }
    }
    return r;
}

TensorCategory tensor_category(const DgCategory& a, const DgCategory& b) {
    TensorCategory tc;
    for (const auto& A : a.objects) {
        for (const auto& B : b.objects) {
            std::string l = TensorCategory::obj_label(A, B);
            tc.cat.objects.push_back(l);
            tc.factors.emplace(l, std::make_pair(A, B));
        }
    }
    for (const auto& X : tc.cat.objects) {
        for (const auto& Y : tc.cat.objects) {
            const auto& [A, B] = tc.factors.at(X);
            const auto& [A2, B2] = tc.factors.at(Y);
            TensorComplex t = tensor_complex(a.hom(A, A2), b.hom(B, B2));
            if (t.cx.space.total_dim() == 0) continue;
            tc.cat.homs.emplace(std::make_pair(X, Y), t.cx);
            tc.slots.emplace(std::make_pair(X, Y), t.slots);
        }
    }
    for (const auto& X : tc.cat.objects) {
        const auto& [A, B] = tc.factors.at(X);
        Element u = tc.pure(a.identity(A), b.identity(B));
        tc.cat.units.emplace(X, u.at(0, tc.cat.hom_dim(X, X, 0)));
    }
    /* (α₂⊗β₂)∘(α₁⊗β₁) = (-1)^{|β₂||α₁|} (α₂α₁)⊗(β₂β₁) over all basis slot pairs. */
    for (const auto& [pair1, slots1] : tc.slots) {
        const auto& [X, Y] = pair1;
        for (const auto& [pair2, slots2] : tc.slots) {
            if (pair2.first != Y) continue;
            const auto& Z = pair2.second;
            const auto& [A, B] = tc.factors.at(X);
            const auto& [A2, B2] = tc.factors.at(Y);
            const auto& [A3, B3] = tc.factors.at(Z);
            for (const auto& [kg, glist] : slots2) {
                for (size_t gi = 0; gi < glist.size(); ++gi) {
                    Element alpha2 = a.basis_element({A2, A3, glist[gi].i, glist[gi].a});
                    Element beta2 = b.basis_element({B2, B3, kg - glist[gi].i, glist[gi].b});
                    for (const auto& [kf, flist] : slots1) {
                        for (size_t fi = 0; fi < flist.size(); ++fi) {
                            Element alpha1 = a.basis_element({A, A2, flist[fi].i, flist[fi].a});
                            Element beta1 = b.basis_element({B, B2, kf - flist[fi].i, flist[fi].b});
                            Element ca = a.compose(alpha2, alpha1);
                            Element cb = b.compose(beta2, beta1);
                            if (ca.is_zero() || cb.is_zero()) continue;
                            Scalar sgn =
                                Scalar::sign(static_cast<long>(kg - glist[gi].i) * flist[fi].i);
                            Element res = tc.pure(ca, cb).scaled(sgn);
                            if (res.is_zero()) continue;
                            Vec v = res.at(kg + kf, tc.cat.hom_dim(X, Z, kg + kf));
                            tc.cat.comp.emplace(CompKey{X, Y, Z, kg, gi, kf, fi}, v);
                        }
                    }
                }
            }
        }
    }
    return tc;
}

DgCategory full_subcategory(const DgCategory& c, const std::vector<std::string>& keep) {
    DgCategory s;
    for (const auto& x : keep) {
        if (!c.has_object(x)) throw std::out_of_range("full_subcategory: unknown object " + x);
        s.objects.push_back(x);
    }
    std::set<std::string> ks(keep.begin(), keep.end());
    if (ks.size() != keep.size()) throw std::invalid_argument("full_subcategory: duplicate objects");
    for (const auto& [pair, h] : c.homs)
        if (ks.count(pair.first) && ks.count(pair.second)) s.homs.emplace(pair, h);
    for (const auto& [x, u] : c.units)
        if (ks.count(x)) s.units.emplace(x, u);
    for (const auto& [k, v] : c.comp)
        if (ks.count(k.x) && ks.count(k.y) && ks.count(k.z)) s.comp.emplace(k, v);
    return s;
}

}  // namespace dgcat
