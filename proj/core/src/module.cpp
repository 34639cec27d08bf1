#include "dgcat/module.hpp"

#include <stdexcept>

namespace dgcat {

namespace {

std::string mor_name(const DgCategory& c, const MorKey& k) {
    return c.hom(k.src, k.tgt).space.label(k.deg, k.idx) + ": " + k.src + "->" + k.tgt + " @" +
           std::to_string(k.deg);
}

}  // namespace

bool same_base(const CatPtr& a, const CatPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

const Complex& DgModule::value(const std::string& x) const {
    static const Complex kZero = Complex::zero();
    auto it = values.find(x);
    return it == values.end() ? kZero : it->second;
}

GradedMap DgModule::act(const MorKey& k) const {
    auto it = action.find(k);
    if (it != action.end()) return it->second;
    return GradedMap::zero(value(k.src).space, value(k.tgt).space, k.deg);
}

GradedMap DgModule::act_vec(const std::string& x, const std::string& y, int deg, const Vec& v) const {
    GradedMap m = GradedMap::zero(value(x).space, value(y).space, deg);
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        m = m + act(MorKey{x, y, deg, i}).scaled(v[i]);
    }
    return m;
}

GradedMap DgModule::act_element(const Element& e, int deg) const {
    if (e.is_zero()) return GradedMap::zero(value(e.src).space, value(e.tgt).space, deg);
    return act_vec(e.src, e.tgt, e.degree(), e.coords.begin()->second);
}

bool DgModule::operator==(const DgModule& o) const {
    return same_base(base, o.base) && values == o.values && action == o.action;
}

ValidationReport validate_dg_module(const DgModule& m) {
    ValidationReport r;
    if (!m.base) {
        r.fail("module: null base");
        return r;
    }
    const DgCategory& c = *m.base;
    for (const auto& [x, v] : m.values) {
        if (!c.has_object(x)) r.fail("module: value at unknown object " + x);
        auto vr = validate_complex(v);
        if (!vr.ok)
            for (const auto& i : vr.issues) r.fail("module value(" + x + "): " + i);
    }
    for (const auto& [k, g] : m.action) {
        if (!c.has_object(k.src) || !c.has_object(k.tgt) ||
            k.idx >= c.hom_dim(k.src, k.tgt, k.deg)) {
            r.fail("module: action key out of range");
            continue;
        }
        if (!(g.src == m.value(k.src).space) || !(g.tgt == m.value(k.tgt).space) || g.deg != k.deg)
            r.fail("module: action shape mismatch at " + mor_name(c, k));
    }
    if (!r.ok) return r;

    for (const auto& x : c.objects) {
        auto it = c.units.find(x);
        if (it == c.units.end()) continue;
        if (!(m.act_vec(x, x, 0, it->second) == GradedMap::id(m.value(x).space)))
            r.fail("module: identity of " + x + " does not act as identity");
    }

    auto basis = c.basis_morphisms();
    for (const auto& kf : basis) {
        Element f = c.basis_element(kf);
        GradedMap mf = m.act(kf);

        // chain-level discipline: act(d f) = d∘act(f) - (-1)^{|f|} act(f)∘d
        GradedMap lhs = m.act_element(c.d_of(f), kf.deg + 1);
        GradedMap rhs = m.value(kf.tgt).d.compose(mf) -
                        mf.compose(m.value(kf.src).d).scaled(Scalar::sign(kf.deg));
        if (!(lhs == rhs)) r.fail("module: differential discipline fails at " + mor_name(c, kf));

        for (const auto& kg : basis) {
            if (kg.src != kf.tgt) continue;
            GradedMap both = m.act(kg).compose(mf);
            GradedMap composite = m.act_element(c.compose(c.basis_element(kg), f), kg.deg + kf.deg);
            if (!(both == composite))
                r.fail("module: functoriality fails at pair (" + mor_name(c, kg) + ", " +
                       mor_name(c, kf) + ")");
        }
    }
    return r;
}

const std::string& DgFunctor::on_ob(const std::string& x) const {
    auto it = ob.find(x);
    if (it == ob.end()) throw std::out_of_range("functor: no image for object " + x);
    return it->second;
}

Element DgFunctor::on_element(const Element& e) const {
    Element r = tgt->zero_element(on_ob(e.src), on_ob(e.tgt));
    for (const auto& [d, v] : e.coords) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_zero()) continue;
            auto it = mor.find(MorKey{e.src, e.tgt, d, i});
            if (it == mor.end()) continue;
            r = r + it->second.scaled(v[i]);
        }
    }
    return r;
}

DgFunctor DgFunctor::identity(CatPtr c) {
    DgFunctor f;
    f.src = c;
    f.tgt = c;
    for (const auto& x : c->objects) f.ob.emplace(x, x);
    for (const auto& k : c->basis_morphisms()) f.mor.emplace(k, c->basis_element(k));
    return f;
}

ValidationReport validate_dg_functor(const DgFunctor& f) {
    ValidationReport r;
    if (!f.src || !f.tgt) {
        r.fail("functor: null endpoint");
        return r;
    }
    const DgCategory& a = *f.src;
    const DgCategory& c = *f.tgt;
    for (const auto& x : a.objects) {
        auto it = f.ob.find(x);
        if (it == f.ob.end())
            r.fail("functor: no image for object " + x);
        else if (!c.has_object(it->second))
            r.fail("functor: image of " + x + " is not an object");
    }
    if (!r.ok) return r;

    for (const auto& [k, e] : f.mor) {
        if (!a.has_object(k.src) || !a.has_object(k.tgt) || k.idx >= a.hom_dim(k.src, k.tgt, k.deg)) {
            r.fail("functor: morphism key out of range");
            continue;
        }
        if (e.src != f.on_ob(k.src) || e.tgt != f.on_ob(k.tgt))
            r.fail("functor: image endpoints wrong at " + mor_name(a, k));
        else if (!e.is_zero() && !(e.homogeneous() && e.degree() == k.deg))
            r.fail("functor: image not homogeneous of degree " + std::to_string(k.deg) + " at " +
                   mor_name(a, k));
    }
    if (!r.ok) return r;

    for (const auto& x : a.objects) {
        if (!(f.on_element(a.identity(x)) == c.identity(f.on_ob(x))))
            r.fail("functor: F(1_" + x + ") != 1");
    }
    auto basis = a.basis_morphisms();
    for (const auto& kf : basis) {
        Element e = a.basis_element(kf);
        if (!(f.on_element(a.d_of(e)) == c.d_of(f.on_element(e))))
            r.fail("functor: F(df) != d(Ff) at " + mor_name(a, kf));
        for (const auto& kg : basis) {
            if (kg.src != kf.tgt) continue;
            Element g = a.basis_element(kg);
            if (!(f.on_element(a.compose(g, e)) == c.compose(f.on_element(g), f.on_element(e))))
                r.fail("functor: F(g∘f) != F(g)∘F(f) at pair (" + mor_name(a, kg) + ", " +
                       mor_name(a, kf) + ")");
        }
    }
    return r;
}

DgFunctor compose_functor(const DgFunctor& g, const DgFunctor& f) {
    if (!same_base(f.tgt, g.src)) throw std::invalid_argument("functor: composition base mismatch");
    DgFunctor h;
    h.src = f.src;
    h.tgt = g.tgt;
    for (const auto& [x, y] : f.ob) h.ob.emplace(x, g.on_ob(y));
    for (const auto& [k, e] : f.mor) {
        Element img = g.on_element(e);
        if (!img.is_zero()) h.mor.emplace(k, img);
    }
    return h;
}

DgFunctor opposite_functor(const DgFunctor& f) {
    DgFunctor r;
    r.src = make_cat(opposite_category(*f.src));
    r.tgt = make_cat(opposite_category(*f.tgt));
    r.ob = f.ob;
    for (const auto& [k, e] : f.mor) {
        Element v = e;
        std::swap(v.src, v.tgt);
        r.mor.emplace(MorKey{k.tgt, k.src, k.deg, k.idx}, v);
    }
    return r;
}

DgFunctor inclusion_functor(CatPtr sub, CatPtr whole) {
    DgFunctor f;
    f.src = sub;
    f.tgt = whole;
    for (const auto& x : sub->objects) {
        if (!whole->has_object(x))
            throw std::invalid_argument("inclusion: object " + x + " missing in target");
        f.ob.emplace(x, x);
    }
    for (const auto& k : sub->basis_morphisms()) f.mor.emplace(k, whole->basis_element(k));
    return f;
}

DgModule restrict_module(const DgFunctor& f, const DgModule& s) {
    if (!same_base(f.tgt, s.base)) throw std::invalid_argument("restrict: base mismatch");
    DgModule m;
    m.base = f.src;
    for (const auto& x : f.src->objects) {
        Complex v = s.value(f.on_ob(x));
        if (v.space.total_dim() > 0) m.values.emplace(x, v);
    }
    for (const auto& k : f.src->basis_morphisms()) {
        auto it = f.mor.find(k);
        Element img = it == f.mor.end() ? f.tgt->zero_element(f.on_ob(k.src), f.on_ob(k.tgt))
                                        : it->second;
        GradedMap g = s.act_element(img, k.deg);
        if (!g.is_zero()) m.action.emplace(k, g);
    }
    return m;
}

DgModule zero_module(CatPtr base) {
    DgModule m;
    m.base = std::move(base);
    return m;
}

DgModule representable(CatPtr base, const std::string& a) {
    if (!base->has_object(a)) throw std::out_of_range("representable: unknown object " + a);
    const DgCategory& c = *base;
    DgModule m;
    m.base = base;
    for (const auto& x : c.objects) {
        Complex v = c.hom(a, x);
        if (v.space.total_dim() > 0) m.values.emplace(x, v);
    }
    for (const auto& k : c.basis_morphisms()) {
        Element f = c.basis_element(k);
        GradedMap g = GradedMap::zero(m.value(k.src).space, m.value(k.tgt).space, k.deg);
        for (const auto& [dj, labels] : c.hom(a, k.src).space.basis) {
            if (labels.empty() || c.hom_dim(a, k.tgt, dj + k.deg) == 0) continue;
            Matrix blk(c.hom_dim(a, k.tgt, dj + k.deg), labels.size());
            for (size_t j = 0; j < labels.size(); ++j) {
                Element fj = c.compose(f, c.basis_element(MorKey{a, k.src, dj, j}));
                blk.set_column(j, fj.at(dj + k.deg, blk.rows()));
            }
            g.set_block(dj, blk);
        }
        if (!g.is_zero()) m.action.emplace(k, g);
    }
    return m;
}

DgModule yoneda_module(CatPtr base, const std::string& a) {
    return representable(make_cat(opposite_category(*base)), a);
}

DgModule module_over_point(CatPtr base, const Complex& v) {
    if (base->objects.size() != 1) throw std::invalid_argument("module_over_point: not one object");
    const std::string& o = base->objects[0];
    if (base->hom(o, o).space.total_dim() != 1 || base->hom_dim(o, o, 0) != 1)
        throw std::invalid_argument("module_over_point: hom is not K at degree 0");
    DgModule m;
    m.base = base;
    if (v.space.total_dim() > 0) {
        m.values.emplace(o, v);
        m.action.emplace(MorKey{o, o, 0, 0}, GradedMap::id(v.space));
    }
    return m;
}

DgModule module_direct_sum(const std::vector<DgModule>& parts) {
    if (parts.empty()) throw std::invalid_argument("module_direct_sum: empty");
    DgModule m;
    m.base = parts[0].base;
    std::vector<std::string> tags;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (!same_base(parts[i].base, m.base))
            throw std::invalid_argument("module_direct_sum: base mismatch");
        tags.push_back("s" + std::to_string(i));
    }
    const DgCategory& c = *m.base;
    std::map<std::string, DirectSum> sums;
    for (const auto& x : c.objects) {
        std::vector<const Complex*> vs;
        for (const auto& p : parts) vs.push_back(&p.value(x));
        DirectSum ds = direct_sum(vs, tags);
        if (ds.total.space.total_dim() > 0) m.values.emplace(x, ds.total);
        sums.emplace(x, std::move(ds));
    }
    for (const auto& k : c.basis_morphisms()) {
        const DirectSum& s0 = sums.at(k.src);
        const DirectSum& s1 = sums.at(k.tgt);
        GradedMap g = GradedMap::zero(m.value(k.src).space, m.value(k.tgt).space, k.deg);
        bool any = false;
        for (size_t t = 0; t < parts.size(); ++t) {
            GradedMap a = parts[t].act(k);
            if (a.is_zero()) continue;
            any = true;
            for (const auto& [i, blk] : a.blocks) {
                Matrix whole = g.block(i);
                size_t ro = s1.offsets[t].count(i + k.deg) ? s1.offsets[t].at(i + k.deg) : 0;
                size_t co = s0.offsets[t].count(i) ? s0.offsets[t].at(i) : 0;
                for (size_t r = 0; r < blk.rows(); ++r)
                    for (size_t cc = 0; cc < blk.cols(); ++cc) whole.at(ro + r, co + cc) = blk.at(r, cc);
                g.set_block(i, whole);
            }
        }
        if (any && !g.is_zero()) m.action.emplace(k, g);
    }
    return m;
}

GradedMap DgNat::at(const std::string& x) const {
    auto it = comp.find(x);
    if (it != comp.end()) return it->second;
    return GradedMap::zero(from.value(x).space, to.value(x).space, deg);
}

DgNat DgNat::operator+(const DgNat& o) const {
    if (!(from == o.from) || !(to == o.to) || deg != o.deg)
        throw std::invalid_argument("nat: shape mismatch in +");
    DgNat r = *this;
    for (const auto& [x, g] : o.comp) {
        GradedMap sum = r.at(x) + g;
        if (sum.is_zero())
            r.comp.erase(x);
        else
            r.comp[x] = sum;
    }
    return r;
}

DgNat DgNat::operator-(const DgNat& o) const { return *this + o.scaled(Scalar(-1)); }

DgNat DgNat::scaled(const Scalar& s) const {
    DgNat r;
    r.from = from;
    r.to = to;
    r.deg = deg;
    if (s.is_zero()) return r;
    for (const auto& [x, g] : comp) r.comp.emplace(x, g.scaled(s));
    return r;
}

bool DgNat::is_zero() const {
    for (const auto& [x, g] : comp)
        if (!g.is_zero()) return false;
    return true;
}

bool DgNat::operator==(const DgNat& o) const {
    if (!(from == o.from) || !(to == o.to) || deg != o.deg) return false;
    return (*this - o).is_zero();
}

ValidationReport validate_dg_nat(const DgNat& n) {
    ValidationReport r;
    if (!n.from.base || !same_base(n.from.base, n.to.base)) {
        r.fail("nat: base mismatch");
        return r;
    }
    const DgCategory& c = *n.from.base;
    for (const auto& [x, g] : n.comp) {
        if (!c.has_object(x)) {
            r.fail("nat: component at unknown object " + x);
            continue;
        }
        if (!(g.src == n.from.value(x).space) || !(g.tgt == n.to.value(x).space) || g.deg != n.deg)
            r.fail("nat: component shape mismatch at " + x);
    }
    if (!r.ok) return r;
    for (const auto& k : c.basis_morphisms()) {
        GradedMap lhs = n.to.act(k).compose(n.at(k.src));
        GradedMap rhs = n.at(k.tgt).compose(n.from.act(k))
                            .scaled(Scalar::sign(static_cast<long>(n.deg) * k.deg));
        if (!(lhs == rhs))
            r.fail("nat: naturality fails at " + mor_name(c, k));
    }
    return r;
}

DgNat nat_identity(const DgModule& m) {
    DgNat n;
    n.from = m;
    n.to = m;
    n.deg = 0;
    for (const auto& [x, v] : m.values) {
        GradedMap id = GradedMap::id(v.space);
        if (!id.is_zero()) n.comp.emplace(x, id);
    }
    return n;
}

DgNat nat_zero(const DgModule& f, const DgModule& g, int deg) {
    DgNat n;
    n.from = f;
    n.to = g;
    n.deg = deg;
    return n;
}

DgNat nat_compose(const DgNat& outer, const DgNat& inner) {
    if (!(outer.from == inner.to)) throw std::invalid_argument("nat: vertical composition mismatch");
    DgNat r;
    r.from = inner.from;
    r.to = outer.to;
    r.deg = outer.deg + inner.deg;
    for (const auto& [x, g] : inner.comp) {
        GradedMap e = outer.at(x).compose(g);
        if (!e.is_zero()) r.comp.emplace(x, e);
    }
    return r;
}

DgNat nat_d(const DgNat& n) {
    DgNat r;
    r.from = n.from;
    r.to = n.to;
    r.deg = n.deg + 1;
    for (const auto& x : n.from.base->objects) {
        GradedMap g = n.at(x);
        GradedMap d = n.to.value(x).d.compose(g) -
                      g.compose(n.from.value(x).d).scaled(Scalar::sign(n.deg));
        if (!d.is_zero()) r.comp.emplace(x, d);
    }
    return r;
}

DgNat restrict_nat(const DgFunctor& f, const DgNat& eta) {
    if (!same_base(f.tgt, eta.from.base)) throw std::invalid_argument("restrict_nat: base mismatch");
    DgNat r;
    r.from = restrict_module(f, eta.from);
    r.to = restrict_module(f, eta.to);
    r.deg = eta.deg;
    for (const auto& x : f.src->objects) {
        GradedMap g = eta.at(f.on_ob(x));
        if (!g.is_zero()) r.comp.emplace(x, g);
    }
    return r;
}

}  // namespace dgcat
