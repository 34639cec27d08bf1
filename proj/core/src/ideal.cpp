#include "dgcat/ideal.hpp"

#include "dgcat/fixtures.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgcat {

namespace {

/* Canonical basis of the column span: pivot rows of the transposed reduction,
 * transposed back. Depends only on the span, not the generator order. */
Matrix span_basis(const Matrix& gens) {
    if (gens.cols() == 0) return Matrix(gens.rows(), 0);
    Echelon e = gens.transpose().rref();
    Matrix out(gens.rows(), e.pivots.size());
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        for (size_t j = 0; j < gens.rows(); ++j) out.at(j, i) = e.m.at(i, j);
    }
    return out;
}

Vec basis_vec(size_t dim, size_t i) {
    Vec v(dim, Scalar(0));
    v[i] = Scalar(1);
    return v;
}

bool vanishes_on(const DgModule& m, const std::vector<std::string>& through) {
    for (const auto& x : through)
        if (m.value(x).space.total_dim() != 0) return false;
    return true;
}

}  // namespace

Matrix DgIdeal::gens(const std::string& x, const std::string& y, int n) const {
    size_t dim = base->hom_dim(x, y, n);
    auto it = span.find({x, y});
    if (it == span.end()) return Matrix(dim, 0);
    auto jt = it->second.find(n);
    if (jt == it->second.end()) return Matrix(dim, 0);
    return jt->second;
}

bool DgIdeal::contains(const Element& e) const {
    for (const auto& [n, v] : e.coords)
        if (!in_span(gens(e.src, e.tgt, n), v)) return false;
    return true;
}

ValidationReport validate_ideal(const DgIdeal& i) {
    ValidationReport r;
    if (!i.base) {
        r.fail("ideal: no base");
        return r;
    }
    const DgCategory& c = *i.base;
    for (const auto& [pair, degs] : i.span) {
        if (!c.has_object(pair.first) || !c.has_object(pair.second)) {
            r.fail("ideal: unknown object pair (" + pair.first + "," + pair.second + ")");
            continue;
        }
        for (const auto& [n, m] : degs) {
            if (m.rows() != c.hom_dim(pair.first, pair.second, n)) {
                r.fail("ideal: generator shape mismatch at (" + pair.first + "," + pair.second +
                       ") degree " + std::to_string(n));
                continue;
            }
            for (size_t j = 0; j < m.cols(); ++j) {
                Element e = c.element(pair.first, pair.second, n, m.column(j));
                if (!i.contains(c.d_of(e)))
                    r.fail("ideal: not closed under the differential at (" + pair.first + "," +
                           pair.second + ") degree " + std::to_string(n));
            }
        }
    }
    std::vector<MorKey> basis = c.basis_morphisms();
    for (const auto& [pair, degs] : i.span) {
        for (const auto& [n, m] : degs) {
            for (size_t j = 0; j < m.cols(); ++j) {
                Element e = c.element(pair.first, pair.second, n, m.column(j));
                for (const MorKey& k : basis) {
                    if (k.src == pair.second && !i.contains(c.compose(c.basis_element(k), e)))
                        r.fail("ideal: not absorbed by postcomposition at (" + pair.first + "," +
                               pair.second + ")");
                    if (k.tgt == pair.first && !i.contains(c.compose(e, c.basis_element(k))))
                        r.fail("ideal: not absorbed by precomposition at (" + pair.first + "," +
                               pair.second + ")");
                }
            }
        }
    }
    return r;
}

DgIdeal ideal_from_subcategory(CatPtr base, const std::vector<std::string>& through) {
    if (through.empty()) throw std::invalid_argument("ideal: empty object list");
    for (const auto& b : through)
        if (!base->has_object(b)) throw std::invalid_argument("ideal: unknown object " + b);
    DgIdeal out;
    out.base = base;
    for (const auto& x : base->objects) {
        for (const auto& y : base->objects) {
            const Complex& h = base->hom(x, y);
            if (h.space.total_dim() == 0) continue;
            std::map<int, std::vector<Vec>> cols;
            for (const auto& b : through) {
                const Complex& in = base->hom(x, b);
                const Complex& outh = base->hom(b, y);
                for (int p : in.space.degrees()) {
                    for (size_t fi = 0; fi < in.dim(p); ++fi) {
                        Element f = base->basis_element(MorKey{x, b, p, fi});
                        for (int q : outh.space.degrees()) {
                            for (size_t gi = 0; gi < outh.dim(q); ++gi) {
                                Element g = base->basis_element(MorKey{b, y, q, gi});
                                Element gf = base->compose(g, f);
                                if (gf.is_zero()) continue;
                                cols[p + q].push_back(gf.at(p + q, h.dim(p + q)));
                            }
                        }
                    }
                }
            }
            std::map<int, Matrix> degs;
            for (const auto& [n, vs] : cols) {
                Matrix sb = span_basis(Matrix::from_columns(h.dim(n), vs));
                if (sb.cols() > 0) degs.emplace(n, sb);
            }
            if (!degs.empty()) out.span.emplace(std::make_pair(x, y), std::move(degs));
        }
    }
    return out;
}

Element QuotientCategory::project(const Element& e) const {
    Element r = quotient->zero_element(e.src, e.tgt);
    auto it = splits.find({e.src, e.tgt});
    for (const auto& [n, v] : e.coords) {
        if (it == splits.end()) throw std::logic_error("quotient: missing split");
        Vec pv = it->second.at(n).proj.apply(v);
        if (!is_zero(pv)) r.coords.emplace(n, pv);
    }
    return r;
}

Element QuotientCategory::inflate(const Element& e) const {
    Element r = base->zero_element(e.src, e.tgt);
    auto it = splits.find({e.src, e.tgt});
    for (const auto& [n, v] : e.coords) {
        if (it == splits.end()) throw std::logic_error("quotient: missing split");
        Vec sv = it->second.at(n).section.apply(v);
        if (!is_zero(sv)) r.coords.emplace(n, sv);
    }
    return r;
}

QuotientCategory quotient_category(CatPtr base, const DgIdeal& i) {
    if (!same_base(base, i.base))
        throw std::invalid_argument("quotient: ideal lives over a different base");
    ValidationReport v = validate_ideal(i);
    if (!v.ok) throw std::invalid_argument("quotient: " + v.issues.front());

    QuotientCategory out;
    out.base = base;
    out.ideal = i;

    DgCategory q;
    q.objects = base->objects;
    for (const auto& [pair, h] : base->homs) {
        std::map<int, QuotientSplit>& sp = out.splits[pair];
        GradedSpace space;
        for (int n : h.space.degrees()) {
            QuotientSplit qs = quotient_by_columns(i.gens(pair.first, pair.second, n), h.dim(n));
            if (!qs.kept.empty()) {
                std::vector<std::string> labels;
                for (size_t k : qs.kept) labels.push_back(h.space.label(n, k));
                space.basis.emplace(n, std::move(labels));
            }
            sp.emplace(n, std::move(qs));
        }
        if (space.total_dim() == 0) continue;
        Complex qc;
        qc.space = space;
        qc.d = GradedMap::zero(space, space, 1);
        for (int n : space.degrees()) {
            auto next = sp.find(n + 1);
            if (next == sp.end() || next->second.kept.empty()) continue;
            qc.d.set_block(n, next->second.proj * h.d.block(n) * sp.at(n).section);
        }
        q.homs.emplace(pair, std::move(qc));
    }
    for (const auto& x : base->objects) {
        size_t dim0 = 0;
        auto it = out.splits.find({x, x});
        if (it != out.splits.end()) {
            auto jt = it->second.find(0);
            if (jt != it->second.end()) dim0 = jt->second.kept.size();
        }
        Vec u(dim0, Scalar(0));
        if (dim0 > 0) u = it->second.at(0).proj.apply(base->units.at(x));
        q.units.emplace(x, std::move(u));
    }
    CatPtr qp = make_cat(std::move(q));
    out.quotient = qp;

    /* Composition: lift representatives, compose in the base, project back.
     * Well-defined because the ideal absorbs composition on both sides. */
    DgCategory qq = *qp;
    for (const MorKey& fk : qp->basis_morphisms()) {
        Element f = out.inflate(qp->basis_element(fk));
        for (const MorKey& gk : qp->basis_morphisms()) {
            if (gk.src != fk.tgt) continue;
            Element g = out.inflate(qp->basis_element(gk));
            Element c = out.project(base->compose(g, f));
            if (c.is_zero()) continue;
            qq.comp.emplace(CompKey{fk.src, fk.tgt, gk.tgt, gk.deg, gk.idx, fk.deg, fk.idx},
                            c.at(fk.deg + gk.deg, qp->hom_dim(fk.src, gk.tgt, fk.deg + gk.deg)));
        }
    }
    out.quotient = make_cat(std::move(qq));

    out.projection.src = base;
    out.projection.tgt = out.quotient;
    for (const auto& x : base->objects) out.projection.ob.emplace(x, x);
    for (const MorKey& k : base->basis_morphisms()) {
        Element img = out.project(base->basis_element(k));
        img.src = k.src;
        img.tgt = k.tgt;
        if (!img.is_zero()) out.projection.mor.emplace(k, std::move(img));
    }
    return out;
}

DgModule deflate_module(const QuotientCategory& q, const DgModule& m) {
    if (!same_base(m.base, q.base))
        throw std::invalid_argument("deflate: module lives over a different base");
    for (const auto& [pair, degs] : q.ideal.span)
        for (const auto& [n, g] : degs)
            for (size_t j = 0; j < g.cols(); ++j)
                if (!m.act_vec(pair.first, pair.second, n, g.column(j)).is_zero())
                    throw std::invalid_argument("deflate: module does not kill the ideal at (" +
                                                pair.first + "," + pair.second + ")");
    DgModule out;
    out.base = q.quotient;
    out.values = m.values;
    for (const MorKey& k : q.quotient->basis_morphisms()) {
        Element lift = q.inflate(q.quotient->basis_element(k));
        GradedMap a = m.act_vec(k.src, k.tgt, k.deg, lift.at(k.deg, q.base->hom_dim(k.src, k.tgt, k.deg)));
        if (!a.is_zero()) out.action.emplace(k, std::move(a));
    }
    return out;
}

std::vector<DgModule> default_battery(CatPtr base, uint64_t seed) {
    std::vector<DgModule> b;
    for (const auto& x : base->objects) b.push_back(representable(base, x));
    b.push_back(zero_module(base));
    b.push_back(random_module(base, seed));
    return b;
}

namespace {

/* Shared construction for both report levels. Throws std::invalid_argument on
 * broken input, which the reports convert into failures. */
struct RecollementSetup {
    QuotientCategory q;
    CatPtr sub;
    DgFunctor j;
    std::vector<DgModule> quot_batt;  // over the quotient
    std::vector<DgModule> sub_batt;   // over the subcategory
};

RecollementSetup setup_recollement(CatPtr base, const std::vector<std::string>& through,
                                   const std::vector<DgModule>& battery) {
    RecollementSetup s;
    s.q = quotient_category(base, ideal_from_subcategory(base, through));
    s.sub = make_cat(full_subcategory(*base, through));
    s.j = inclusion_functor(s.sub, base);
    for (const auto& x : base->objects) s.quot_batt.push_back(representable(s.q.quotient, x));
    s.quot_batt.push_back(zero_module(s.q.quotient));
    for (const DgModule& m : battery)
        if (vanishes_on(m, through)) s.quot_batt.push_back(deflate_module(s.q, m));
    for (const auto& x : through) s.sub_batt.push_back(representable(s.sub, x));
    s.sub_batt.push_back(zero_module(s.sub));
    for (const DgModule& m : battery) s.sub_batt.push_back(restrict_module(s.j, m));
    return s;
}

bool validate_battery(const std::vector<DgModule>& battery, CatPtr base, ValidationReport& r) {
    bool ok = true;
    for (size_t i = 0; i < battery.size(); ++i) {
        if (!same_base(battery[i].base, base)) {
            r.fail("battery module " + std::to_string(i) + " lives over a different base");
            ok = false;
            continue;
        }
        ValidationReport v = validate_dg_module(battery[i]);
        if (!v.ok) {
            r.fail("battery module " + std::to_string(i) + " is invalid: " + v.issues.front());
            ok = false;
        }
    }
    return ok;
}

}  // namespace

ValidationReport recollement_report(CatPtr base, const std::vector<std::string>& through,
                                    const std::vector<DgModule>& battery) {
    ValidationReport r;
    if (!validate_battery(battery, base, r)) return r;  // reject before any other check
    RecollementSetup s;
    try {
        s = setup_recollement(base, through, battery);
    } catch (const std::exception& e) {
        r.fail(std::string("setup: ") + e.what());
        return r;
    }
    ValidationReport qv = validate_dg_category(*s.q.quotient);
    if (!qv.ok) r.fail("quotient category: " + qv.issues.front());
    ValidationReport pv = validate_dg_functor(s.q.projection);
    if (!pv.ok) r.fail("projection: " + pv.issues.front());
    for (const auto& [pair, degs] : s.q.splits)
        for (const auto& [n, sp] : degs)
            if (sp.proj.rank() != sp.kept.size())
                r.fail("projection is not surjective at (" + pair.first + "," + pair.second + ")");
    if (!r.ok) return r;

    // (i) extension/restriction adjunction triples along π and along j
    for (const DgModule& g : battery)
        for (const DgModule& h : s.quot_batt) {
            ValidationReport a = adjunction_check(s.q.projection, g, h);
            if (!a.ok) r.fail("quotient adjunctions: " + a.issues.front());
        }
    for (const DgModule& g : s.sub_batt)
        for (const DgModule& h : battery) {
            ValidationReport a = adjunction_check(s.j, g, h);
            if (!a.ok) r.fail("inclusion adjunctions: " + a.issues.front());
        }

    // (ii) modules vanishing on the subcategory = inflated modules, exactly
    for (const DgModule& m : battery) {
        if (vanishes_on(m, through)) {
            try {
                DgModule dm = deflate_module(s.q, m);
                ValidationReport dv = validate_dg_module(dm);
                if (!dv.ok) r.fail("deflated module is invalid: " + dv.issues.front());
                if (!(restrict_module(s.q.projection, dm) == m))
                    r.fail("inflating the deflated module does not reproduce the tables");
            } catch (const std::invalid_argument& e) {
                r.fail(std::string("module vanishing on the subcategory fails to deflate: ") +
                       e.what());
            }
        } else {
            bool threw = false;
            try {
                deflate_module(s.q, m);
            } catch (const std::invalid_argument&) {
                threw = true;
            }
            if (!threw) r.fail("module not vanishing on the subcategory deflated anyway");
        }
    }
    for (const DgModule& n : s.quot_batt) {
        DgModule infl = restrict_module(s.q.projection, n);
        ValidationReport iv = validate_dg_module(infl);
        if (!iv.ok) r.fail("inflated module is invalid: " + iv.issues.front());
        if (!vanishes_on(infl, through)) r.fail("inflated module does not vanish on the subcategory");
    }

    // (iii) inflation embeds transformation complexes: exact equality of the
    // assembled presentations (same totals, same canonical kernels, same d)
    for (const DgModule& n1 : s.quot_batt)
        for (const DgModule& n2 : s.quot_batt) {
            NatData nq = dgnat_complex(n1, n2);
            NatData nb = dgnat_complex(restrict_module(s.q.projection, n1),
                                       restrict_module(s.q.projection, n2));
            if (!(nq.e.total == nb.e.total)) {
                r.fail("transformation complexes assemble different totals");
                continue;
            }
            if (!(nq.e.cx == nb.e.cx)) r.fail("transformation complexes differ across inflation");
            if (!(nq.e.incl == nb.e.incl))
                r.fail("transformation subspaces differ across inflation");
        }

    // (iv) both extensions along the inclusion are dg-fully faithful
    if (!fully_faithful(s.j)) r.fail("subcategory inclusion is not fully faithful");
    for (const DgModule& g : s.sub_batt) {
        ValidationReport t = transfer_check(s.j, g);
        if (!t.ok) r.fail("extension along the inclusion: " + t.issues.front());
    }
    return r;
}

ValidationReport z0_recollement(CatPtr base, const std::vector<std::string>& through,
                                const std::vector<DgModule>& battery) {
    ValidationReport r;
    if (!validate_battery(battery, base, r)) return r;  // reject before any other check
    RecollementSetup s;
    try {
        s = setup_recollement(base, through, battery);
    } catch (const std::exception& e) {
        r.fail(std::string("setup: ") + e.what());
        return r;
    }

    // (R1) inflation is bijective on closed degree-0 transformations
    for (const DgModule& n1 : s.quot_batt)
        for (const DgModule& n2 : s.quot_batt) {
            DgModule i1 = restrict_module(s.q.projection, n1);
            DgModule i2 = restrict_module(s.q.projection, n2);
            std::vector<DgNat> zq = z0_hom(n1, n2);
            std::vector<DgNat> zb = z0_hom(i1, i2);
            if (zq.size() != zb.size()) {
                r.fail("closed transformation counts differ across inflation");
                continue;
            }
            for (const DgNat& eta : zq) {
                DgNat moved;
                moved.from = i1;
                moved.to = i2;
                moved.deg = 0;
                moved.comp = eta.comp;
                if (!validate_dg_nat(moved).ok)
                    r.fail("closed transformation fails to transport along inflation");
            }
            for (const DgNat& eta : zb) {
                DgNat moved;
                moved.from = n1;
                moved.to = n2;
                moved.deg = 0;
                moved.comp = eta.comp;
                if (!validate_dg_nat(moved).ok)
                    r.fail("closed transformation fails to transport against inflation");
            }
        }

    // (R2) kernel of the subcategory restriction = image of inflation
    for (const DgModule& m : battery) {
        bool vanish = vanishes_on(m, through);
        bool restricts_to_zero = true;
        for (const auto& x : s.sub->objects)
            if (restrict_module(s.j, m).value(x).space.total_dim() != 0) restricts_to_zero = false;
        if (restricts_to_zero != vanish)
            r.fail("subcategory restriction disagrees with valuewise vanishing");
        bool deflates = true;
        try {
            DgModule dm = deflate_module(s.q, m);
            if (!(restrict_module(s.q.projection, dm) == m))
                r.fail("deflation does not invert inflation on a vanishing module");
        } catch (const std::invalid_argument&) {
            deflates = false;
        }
        if (vanish != deflates)
            r.fail(vanish ? "vanishing module fails to deflate" : "non-vanishing module deflated");
    }
    for (const DgModule& n : s.quot_batt)
        if (!vanishes_on(restrict_module(s.q.projection, n), through))
            r.fail("inflated module does not vanish on the subcategory");

    // (R3) adjunction bijections between closed transformation sets
    for (const DgModule& g : battery) {
        LanData lg = lan(s.q.projection, g);
        RanData rg = ran(s.q.projection, g);
        for (const DgModule& h : s.quot_batt) {
            DgModule res = restrict_module(s.q.projection, h);
            std::vector<DgNat> below = z0_hom(g, res);
            if (below.size() != z0_hom(lg.value, h).size())
                r.fail("closed left-adjunction counts differ");
            for (const DgNat& b : below)
                if (!nat_d(lan_transpose(lg, h, b)).is_zero())
                    r.fail("left transposition does not preserve closedness");
            std::vector<DgNat> under = z0_hom(res, g);
            if (under.size() != z0_hom(h, rg.value).size())
                r.fail("closed right-adjunction counts differ");
            for (const DgNat& b : under)
                if (!nat_d(ran_transpose(rg, h, b)).is_zero())
                    r.fail("right transposition does not preserve closedness");
        }
    }
    for (const DgModule& g : s.sub_batt) {
        LanData lg = lan(s.j, g);
        RanData rg = ran(s.j, g);
        for (const DgModule& h : battery) {
            DgModule res = restrict_module(s.j, h);
            if (z0_hom(g, res).size() != z0_hom(lg.value, h).size())
                r.fail("closed left-adjunction counts differ along the inclusion");
            if (z0_hom(res, g).size() != z0_hom(h, rg.value).size())
                r.fail("closed right-adjunction counts differ along the inclusion");
        }
    }
    return r;
}

}  // namespace dgcat
