#include "dgcat/fixtures.hpp"

#include <random>
#include <stdexcept>

namespace dgcat {

namespace {

Matrix mat1(const Scalar& s) {
    Matrix m(1, 1);
    m.at(0, 0) = s;
    return m;
}

Vec unit_vec(size_t dim, size_t idx) {
    Vec v(dim);
    v[idx] = Scalar::one();
    return v;
}

}  // namespace

DgCategory k1() {
    DgCategory c;
    c.objects = {"*"};
    Complex h;
    h.space.basis = {{0, {"1"}}};
    h.d = GradedMap::zero(h.space, h.space, 1);
    c.homs.emplace(std::make_pair(std::string("*"), std::string("*")), h);
    c.units.emplace("*", unit_vec(1, 0));
    c.comp.emplace(CompKey{"*", "*", "*", 0, 0, 0, 0}, unit_vec(1, 0));
    return c;
}

DgCategory a2() {
    DgCategory c;
    c.objects = {"a", "b"};
    auto one_dim = [](const std::string& label) {
        Complex h;
        h.space.basis = {{0, {label}}};
        h.d = GradedMap::zero(h.space, h.space, 1);
        return h;
    };
    c.homs.emplace(std::make_pair(std::string("a"), std::string("a")), one_dim("1_a"));
    c.homs.emplace(std::make_pair(std::string("b"), std::string("b")), one_dim("1_b"));
    c.homs.emplace(std::make_pair(std::string("a"), std::string("b")), one_dim("u"));
    c.units.emplace("a", unit_vec(1, 0));
    c.units.emplace("b", unit_vec(1, 0));
    c.comp.emplace(CompKey{"a", "a", "a", 0, 0, 0, 0}, unit_vec(1, 0));
    c.comp.emplace(CompKey{"b", "b", "b", 0, 0, 0, 0}, unit_vec(1, 0));
    c.comp.emplace(CompKey{"a", "a", "b", 0, 0, 0, 0}, unit_vec(1, 0));  // u∘1_a = u
    c.comp.emplace(CompKey{"a", "b", "b", 0, 0, 0, 0}, unit_vec(1, 0));  // 1_b∘u = u
    return c;
}

DgCategory d1() {
    DgCategory c;
    c.objects = {"*"};
    Complex h;
    h.space.basis = {{-1, {"e"}}, {0, {"1"}}};
    h.d = GradedMap::zero(h.space, h.space, 1);
    h.d.set_block(-1, mat1(Scalar::one()));  // d(e) = 1
    c.homs.emplace(std::make_pair(std::string("*"), std::string("*")), h);
    c.units.emplace("*", unit_vec(1, 0));
    c.comp.emplace(CompKey{"*", "*", "*", 0, 0, 0, 0}, unit_vec(1, 0));   // 1∘1
    c.comp.emplace(CompKey{"*", "*", "*", 0, 0, -1, 0}, unit_vec(1, 0));  // 1∘e = e
    c.comp.emplace(CompKey{"*", "*", "*", -1, 0, 0, 0}, unit_vec(1, 0));  // e∘1 = e
    // e∘e = 0: absent entry
    return c;
}

Complex two_term_contractible() {
    Complex c;
    c.space.basis = {{-1, {"x"}}, {0, {"y"}}};
    c.d = GradedMap::zero(c.space, c.space, 1);
    c.d.set_block(-1, mat1(Scalar::one()));
    return c;
}

namespace {

Scalar random_scalar(std::mt19937_64& rng, bool nonzero) {
    static const long nums[] = {1, -1, 2, -2, 3, 1, -1, 5};
    static const long dens[] = {1, 1, 1, 2, 1, 3, 2, 1};
    for (int tries = 0; tries < 16; ++tries) {
        size_t i = rng() % 8;
        try {
            Scalar s(nums[i], dens[i]);
            if (!nonzero || !s.is_zero()) return s;
        } catch (const std::domain_error&) {
            // denominator vanishes in the current prime field; try another candidate
        }
    }
    return Scalar::one();
}

/* Random invertible degree-0 matrix: identity times a few elementary operations. */
Matrix random_invertible(std::mt19937_64& rng, size_t n) {
    Matrix m = Matrix::identity(n);
    if (n == 0) return m;
    size_t ops = 1 + rng() % 4;
    for (size_t k = 0; k < ops; ++k) {
        size_t i = rng() % n;
        if (n > 1 && rng() % 2 == 0) {
            size_t j = rng() % n;
            if (j == i) j = (j + 1) % n;
            Scalar c = random_scalar(rng, false);
            for (size_t col = 0; col < n; ++col) m.at(i, col) += c * m.at(j, col);
        } else {
            Scalar c = random_scalar(rng, true);
            for (size_t col = 0; col < n; ++col) m.at(i, col) *= c;
        }
    }
    return m;
}

}  // namespace

DgCategory random_category(uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    size_t nobj = 1 + rng() % 3;

    // underlying complexes: spheres K@n or disks K@n -> K@(n+1) with d = λ
    std::vector<Complex> vals(nobj);
    std::vector<std::string> names(nobj);
    for (size_t i = 0; i < nobj; ++i) {
        names[i] = "o" + std::to_string(i);
        Complex v;
        if (rng() % 2 == 0) {
            int n = static_cast<int>(rng() % 3) - 1;  // sphere at -1, 0, or 1
            v.space.basis = {{n, {"v0"}}};
            v.d = GradedMap::zero(v.space, v.space, 1);
        } else {
            int n = static_cast<int>(rng() % 2) - 1;  // disk at (-1,0) or (0,1)
            v.space.basis = {{n, {"v0"}}, {n + 1, {"v1"}}};
            v.d = GradedMap::zero(v.space, v.space, 1);
            v.d.set_block(n, mat1(random_scalar(rng, true)));
        }
        vals[i] = v;
    }

    // honest hom complexes plus a random degreewise change of basis per pair
    std::map<std::pair<size_t, size_t>, HomComplex> raw;
    std::map<std::pair<size_t, size_t>, std::map<int, Matrix>> P, Pinv;
    for (size_t i = 0; i < nobj; ++i) {
        for (size_t j = 0; j < nobj; ++j) {
            HomComplex h = hom_complex(vals[i], vals[j]);
            for (int k : h.cx.space.degrees()) {
                Matrix p = random_invertible(rng, h.cx.dim(k));
                P[{i, j}][k] = p;
                Pinv[{i, j}][k] = *p.inverse();
            }
            raw.emplace(std::make_pair(i, j), std::move(h));
        }
    }
    auto p_at = [&](size_t i, size_t j, int k) {
        auto& m = P[{i, j}];
        auto it = m.find(k);
        return it == m.end() ? Matrix(raw.at({i, j}).cx.dim(k), raw.at({i, j}).cx.dim(k))
                             : it->second;
    };
    auto pinv_at = [&](size_t i, size_t j, int k) {
        auto& m = Pinv[{i, j}];
        auto it = m.find(k);
        return it == m.end() ? Matrix(raw.at({i, j}).cx.dim(k), raw.at({i, j}).cx.dim(k))
                             : it->second;
    };

    DgCategory c;
    c.objects = names;
    for (size_t i = 0; i < nobj; ++i) {
        for (size_t j = 0; j < nobj; ++j) {
            const HomComplex& h = raw.at({i, j});
            if (h.cx.space.total_dim() == 0) continue;
            Complex tr;
            tr.space = h.cx.space;
            tr.d = GradedMap::zero(tr.space, tr.space, 1);
            for (int k : tr.space.degrees()) {
                if (tr.space.dim(k + 1) == 0) continue;
                Matrix blk = p_at(i, j, k + 1) * h.cx.d.block(k) * pinv_at(i, j, k);
                tr.d.set_block(k, blk);
            }
            c.homs.emplace(std::make_pair(names[i], names[j]), tr);
        }
    }
    for (size_t i = 0; i < nobj; ++i) {
        const HomComplex& h = raw.at({i, i});
        Vec idc = h.coords(GradedMap::id(vals[i].space));
        c.units.emplace(names[i], p_at(i, i, 0).apply(idc));
    }
    for (size_t i = 0; i < nobj; ++i) {
        for (size_t j = 0; j < nobj; ++j) {
            for (size_t l = 0; l < nobj; ++l) {
                const HomComplex& hij = raw.at({i, j});
                const HomComplex& hjl = raw.at({j, l});
                const HomComplex& hil = raw.at({i, l});
                for (int dg : hjl.cx.space.degrees()) {
                    for (size_t gi = 0; gi < hjl.cx.dim(dg); ++gi) {
                        GradedMap g = hjl.element(dg, pinv_at(j, l, dg).column(gi));
                        for (int df : hij.cx.space.degrees()) {
                            if (hil.cx.dim(dg + df) == 0) continue;
                            for (size_t fi = 0; fi < hij.cx.dim(df); ++fi) {
                                GradedMap f = hij.element(df, pinv_at(i, j, df).column(fi));
                                Vec res = p_at(i, l, dg + df).apply(hil.coords(g.compose(f)));
                                if (!is_zero(res))
                                    c.comp.emplace(CompKey{names[i], names[j], names[l], dg, gi, df, fi},
                                                   res);
                            }
                        }
                    }
                }
            }
        }
    }
    return c;
}

Corruption inject_corruption(const DgCategory& c, uint64_t seed) {
    struct Candidate {
        bool in_comp;
        CompKey key;
        size_t coord;
        std::pair<std::string, std::string> pair;
        int deg;
        size_t row, col;
    };
    std::vector<Candidate> cands;
    for (const auto& [k, v] : c.comp)
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) cands.push_back({true, k, i, {}, 0, 0, 0});
    for (const auto& [pair, h] : c.homs)
        for (const auto& [d, blk] : h.d.blocks)
            for (size_t r = 0; r < blk.rows(); ++r)
                for (size_t cc = 0; cc < blk.cols(); ++cc)
                    if (!blk.at(r, cc).is_zero()) cands.push_back({false, {}, 0, pair, d, r, cc});

    std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 7);
    for (size_t i = cands.size(); i > 1; --i) std::swap(cands[i - 1], cands[rng() % i]);

    for (const auto& cand : cands) {  // first detectable flip wins
        DgCategory bad = c;
        std::string what;
        if (cand.in_comp) {
            Vec& v = bad.comp.at(cand.key);
            v[cand.coord] = -v[cand.coord];
            what = "sign flip in composition (" + cand.key.x + "->" + cand.key.y + "->" + cand.key.z +
                   ", degrees " + std::to_string(cand.key.gdeg) + "," + std::to_string(cand.key.fdeg) +
                   ")";
        } else {
            Complex& h = bad.homs.at(cand.pair);
            Matrix blk = h.d.block(cand.deg);
            blk.at(cand.row, cand.col) = -blk.at(cand.row, cand.col);
            h.d.set_block(cand.deg, blk);
            what = "sign flip in differential of hom(" + cand.pair.first + "," + cand.pair.second +
                   ") at degree " + std::to_string(cand.deg);
        }
        if (!validate_dg_category(bad).ok) return Corruption{std::move(bad), what};
    }
    throw std::logic_error("inject_corruption: no detectable sign flip exists");
}

DgFunctor collapse_a2(CatPtr a2_cat, CatPtr k1_cat) {
    DgFunctor f;
    f.src = a2_cat;
    f.tgt = k1_cat;
    const std::string star = k1_cat->objects.at(0);
    f.ob.emplace("a", star);
    f.ob.emplace("b", star);
    Element one = k1_cat->identity(star);
    f.mor.emplace(MorKey{"a", "a", 0, 0}, one);
    f.mor.emplace(MorKey{"b", "b", 0, 0}, one);
    f.mor.emplace(MorKey{"a", "b", 0, 0}, one);
    return f;
}

DgModule d1_two_term_module(CatPtr d1_cat) {
    DgModule m;
    m.base = d1_cat;
    Complex v = two_term_contractible();
    m.values.emplace("*", v);
    m.action.emplace(MorKey{"*", "*", 0, 0}, GradedMap::id(v.space));
    GradedMap h = GradedMap::zero(v.space, v.space, -1);
    h.set_block(0, mat1(Scalar::one()));  // y |-> x
    m.action.emplace(MorKey{"*", "*", -1, 0}, h);
    return m;
}

DgModule conjugate_module(const DgModule& m,
                          const std::map<std::string, std::map<int, Matrix>>& p) {
    auto p_at = [&](const std::string& x, int k, size_t dim) {
        auto it = p.find(x);
        if (it != p.end()) {
            auto jt = it->second.find(k);
            if (jt != it->second.end()) return jt->second;
        }
        return Matrix::identity(dim);
    };
    DgModule r;
    r.base = m.base;
    for (const auto& [x, v] : m.values) {
        Complex tv;
        tv.space = v.space;
        tv.d = GradedMap::zero(tv.space, tv.space, 1);
        for (int k : tv.space.degrees()) {
            if (tv.space.dim(k + 1) == 0) continue;
            Matrix blk = p_at(x, k + 1, v.dim(k + 1)) * v.d.block(k) *
                         *p_at(x, k, v.dim(k)).inverse();
            tv.d.set_block(k, blk);
        }
        r.values.emplace(x, tv);
    }
    for (const auto& [k, g] : m.action) {
        GradedMap tg = GradedMap::zero(r.value(k.src).space, r.value(k.tgt).space, k.deg);
        for (const auto& [i, blk] : g.blocks) {
            Matrix t = p_at(k.tgt, i + k.deg, g.tgt.dim(i + k.deg)) * blk *
                       *p_at(k.src, i, g.src.dim(i)).inverse();
            tg.set_block(i, t);
        }
        if (!tg.is_zero()) r.action.emplace(k, tg);
    }
    return r;
}

DgModule random_module(CatPtr base, uint64_t seed) {
    std::mt19937_64 rng(seed * 0xbf58476d1ce4e5b9ULL + 3);
    size_t n = 1 + rng() % 2;
    std::vector<DgModule> parts;
    for (size_t i = 0; i < n; ++i)
        parts.push_back(representable(base, base->objects[rng() % base->objects.size()]));
    DgModule m = parts.size() == 1 ? parts[0] : module_direct_sum(parts);
    std::map<std::string, std::map<int, Matrix>> p;
    for (const auto& [x, v] : m.values)
        for (int k : v.space.degrees()) p[x][k] = random_invertible(rng, v.dim(k));
    return conjugate_module(m, p);
}

Bifunctor random_bifunctor(const CatPtr& c, uint64_t seed) {
    switch (seed % 3) {
        case 0:
            return hom_bifunctor(c);
        case 1: {
            CatPtr op = make_cat(opposite_category(*c));
            return tensor_bifunctor(random_module(op, seed * 3 + 1), random_module(c, seed * 5 + 2));
        }
        default:
            return nat_bifunctor(random_module(c, seed * 7 + 3), random_module(c, seed * 11 + 4));
    }
}

}  // namespace dgcat
