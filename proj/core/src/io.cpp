#include "dgcat/io.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dgcat/fixtures.hpp"

namespace dgcat {

using json = nlohmann::json;
using Kind = BundleError::Kind;

namespace {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Syntax: return "syntax";
        case Kind::UnknownDegree: return "unknown-degree";
        case Kind::DimensionMismatch: return "dimension-mismatch";
        case Kind::Validation: return "validation";
        case Kind::Reference: return "reference";
    }
    return "unknown";
}

}  // namespace

BundleError::BundleError(Kind k, std::string field, const std::string& what)
    : std::runtime_error(kind_name(k) + " error at " + field + ": " + what),
      kind_(k),
      field_(std::move(field)) {}

std::string BundleError::kind_string() const { return kind_name(kind_); }

/* ---------------------------------------------------------------- parsing */

namespace {

[[noreturn]] void fail(Kind k, const std::string& field, const std::string& msg) {
    throw BundleError(k, field, msg);
}

std::string join_issues(const ValidationReport& v) {
    std::string s;
    for (size_t i = 0; i < v.issues.size(); ++i) {
        if (i) s += "; ";
        s += v.issues[i];
    }
    return s;
}

std::string at(const std::string& field, size_t i) {
    return field + "[" + std::to_string(i) + "]";
}

void need_object(const json& j, const std::string& field) {
    if (!j.is_object()) fail(Kind::Syntax, field, "expected an object");
}

void need_array(const json& j, const std::string& field) {
    if (!j.is_array()) fail(Kind::Syntax, field, "expected an array");
}

const json& need(const json& j, const char* key, const std::string& field) {
    auto it = j.find(key);
    if (it == j.end()) fail(Kind::Syntax, field, std::string("missing field '") + key + "'");
    return *it;
}

std::string need_string(const json& j, const std::string& field) {
    if (!j.is_string()) fail(Kind::Syntax, field, "expected a string");
    return j.get<std::string>();
}

int need_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) fail(Kind::Syntax, field, "expected an integer");
    return j.get<int>();
}

size_t need_index(const json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        fail(Kind::Syntax, field, "expected a nonnegative index");
    return static_cast<size_t>(j.get<long long>());
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& field) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                ok = true;
                break;
            }
        if (!ok) fail(Kind::Syntax, field + "." + it.key(), "unknown field");
    }
}

int degree_key(const std::string& s, const std::string& field) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos == s.size()) return v;
    } catch (...) {
    }
    fail(Kind::UnknownDegree, field + "." + s, "'" + s + "' is not an integer degree");
}

Scalar scalar_of(const json& j, const std::string& field) {
    if (!j.is_string()) fail(Kind::Syntax, field, "scalars are decimal strings");
    try {
        return Scalar::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(Kind::Syntax, field, e.what());
    }
}

Vec vec_of(const json& j, const std::string& field, size_t want) {
    need_array(j, field);
    if (j.size() != want)
        fail(Kind::DimensionMismatch, field,
             "coefficient vector has " + std::to_string(j.size()) + " entries, expected " +
                 std::to_string(want));
    Vec v(want);
    for (size_t i = 0; i < want; ++i) v[i] = scalar_of(j[i], at(field, i));
    return v;
}

GradedSpace space_of(const json& j, const std::string& field) {
    need_object(j, field);
    GradedSpace s;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int n = degree_key(it.key(), field);
        const std::string f2 = field + "." + it.key();
        need_array(it.value(), f2);
        std::vector<std::string> labels;
        for (size_t i = 0; i < it.value().size(); ++i)
            labels.push_back(need_string(it.value()[i], at(f2, i)));
        if (labels.empty()) continue;
        s.basis[n] = std::move(labels);
    }
    if (!s.labels_unique()) fail(Kind::Syntax, field, "basis labels repeat within a degree");
    return s;
}

GradedMap blocks_of(const json& j, const GradedSpace& src, const GradedSpace& tgt, int deg,
                    const std::string& field) {
    GradedMap m = GradedMap::zero(src, tgt, deg);
    need_object(j, field);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int n = degree_key(it.key(), field);
        const std::string f2 = field + "." + it.key();
        size_t cols = src.dim(n);
        size_t rows = tgt.dim(n + deg);
        if (!cols) fail(Kind::UnknownDegree, f2, "no basis in source degree " + std::to_string(n));
        if (!rows)
            fail(Kind::UnknownDegree, f2,
                 "no basis in target degree " + std::to_string(n + deg));
        need_array(it.value(), f2);
        if (it.value().size() != rows)
            fail(Kind::DimensionMismatch, f2,
                 "matrix has " + std::to_string(it.value().size()) + " rows, expected " +
                     std::to_string(rows));
        Matrix blk(rows, cols);
        for (size_t r = 0; r < rows; ++r) {
            const json& rowj = it.value()[r];
            const std::string f3 = at(f2, r);
            need_array(rowj, f3);
            if (rowj.size() != cols)
                fail(Kind::DimensionMismatch, f3,
                     "row has " + std::to_string(rowj.size()) + " entries, expected " +
                         std::to_string(cols));
            for (size_t c = 0; c < cols; ++c) blk.at(r, c) = scalar_of(rowj[c], at(f3, c));
        }
        m.set_block(n, blk);
    }
    return m;
}

/* Shared by hom / value records: {"basis": {...}, "d": {...}}. */
Complex complex_fields_of(const json& j, const std::string& field) {
    Complex c;
    c.space = space_of(need(j, "basis", field), field + ".basis");
    c.d = GradedMap::zero(c.space, c.space, 1);
    if (j.contains("d")) c.d = blocks_of(j.at("d"), c.space, c.space, 1, field + ".d");
    return c;
}

MorKey read_morkey(const json& j, const std::string& field) {
    MorKey k;
    k.src = need_string(need(j, "src", field), field + ".src");
    k.tgt = need_string(need(j, "tgt", field), field + ".tgt");
    k.deg = need_int(need(j, "deg", field), field + ".deg");
    k.idx = need_index(need(j, "idx", field), field + ".idx");
    return k;
}

void check_morkey(const MorKey& k, const DgCategory& c, const std::string& field) {
    if (!c.has_object(k.src)) fail(Kind::Reference, field + ".src", "unknown object '" + k.src + "'");
    if (!c.has_object(k.tgt)) fail(Kind::Reference, field + ".tgt", "unknown object '" + k.tgt + "'");
    size_t d = c.hom_dim(k.src, k.tgt, k.deg);
    if (!d)
        fail(Kind::UnknownDegree, field + ".deg",
             "hom(" + k.src + "," + k.tgt + ") has no basis in degree " + std::to_string(k.deg));
    if (k.idx >= d)
        fail(Kind::DimensionMismatch, field + ".idx",
             "index " + std::to_string(k.idx) + " out of range for dimension " +
                 std::to_string(d));
}

DgCategory category_of(const json& j, const std::string& field) {
    need_object(j, field);
    check_keys(j, {"objects", "homs", "comp", "units"}, field);
    DgCategory c;

    const json& objs = need(j, "objects", field);
    need_array(objs, field + ".objects");
    for (size_t i = 0; i < objs.size(); ++i) {
        std::string o = need_string(objs[i], at(field + ".objects", i));
        if (std::find(c.objects.begin(), c.objects.end(), o) != c.objects.end())
            fail(Kind::Syntax, at(field + ".objects", i), "duplicate object '" + o + "'");
        c.objects.push_back(std::move(o));
    }

    if (j.contains("homs")) {
        const json& homs = j.at("homs");
        need_array(homs, field + ".homs");
        for (size_t i = 0; i < homs.size(); ++i) {
            const json& h = homs[i];
            const std::string f2 = at(field + ".homs", i);
            need_object(h, f2);
            check_keys(h, {"src", "tgt", "basis", "d"}, f2);
            std::string src = need_string(need(h, "src", f2), f2 + ".src");
            std::string tgt = need_string(need(h, "tgt", f2), f2 + ".tgt");
            if (!c.has_object(src)) fail(Kind::Reference, f2 + ".src", "unknown object '" + src + "'");
            if (!c.has_object(tgt)) fail(Kind::Reference, f2 + ".tgt", "unknown object '" + tgt + "'");
            if (c.homs.count({src, tgt})) fail(Kind::Syntax, f2, "duplicate hom declaration");
            Complex cx = complex_fields_of(h, f2);
            if (cx.space.total_dim()) c.homs.emplace(std::make_pair(src, tgt), std::move(cx));
        }
    }

    if (j.contains("comp")) {
        const json& comp = j.at("comp");
        need_array(comp, field + ".comp");
        for (size_t i = 0; i < comp.size(); ++i) {
            const json& r = comp[i];
            const std::string f2 = at(field + ".comp", i);
            need_object(r, f2);
            check_keys(r, {"src", "mid", "tgt", "entries"}, f2);
            std::string x = need_string(need(r, "src", f2), f2 + ".src");
            std::string y = need_string(need(r, "mid", f2), f2 + ".mid");
            std::string z = need_string(need(r, "tgt", f2), f2 + ".tgt");
            for (const auto& [o, fld] : {std::pair{x, ".src"}, {y, ".mid"}, {z, ".tgt"}})
                if (!c.has_object(o)) fail(Kind::Reference, f2 + fld, "unknown object '" + o + "'");
            const Complex& hg = c.hom(y, z);
            const Complex& hf = c.hom(x, y);
            const Complex& ho = c.hom(x, z);
            const json& entries = need(r, "entries", f2);
            need_array(entries, f2 + ".entries");
            for (size_t e = 0; e < entries.size(); ++e) {
                const std::string f3 = at(f2 + ".entries", e);
                const json& en = entries[e];
                need_array(en, f3);
                if (en.size() != 3)
                    fail(Kind::Syntax, f3, "entry must be [[gdeg,gidx],[fdeg,fidx],coeffs]");
                need_array(en[0], f3 + "[0]");
                need_array(en[1], f3 + "[1]");
                if (en[0].size() != 2 || en[1].size() != 2)
                    fail(Kind::Syntax, f3, "morphism references are [degree, index] pairs");
                CompKey key;
                key.x = x;
                key.y = y;
                key.z = z;
                key.gdeg = need_int(en[0][0], f3 + "[0][0]");
                key.gidx = need_index(en[0][1], f3 + "[0][1]");
                key.fdeg = need_int(en[1][0], f3 + "[1][0]");
                key.fidx = need_index(en[1][1], f3 + "[1][1]");
                if (!hg.dim(key.gdeg))
                    fail(Kind::UnknownDegree, f3 + "[0]",
                         "hom(" + y + "," + z + ") has no basis in degree " +
                             std::to_string(key.gdeg));
                if (key.gidx >= hg.dim(key.gdeg))
                    fail(Kind::DimensionMismatch, f3 + "[0]", "outer index out of range");
                if (!hf.dim(key.fdeg))
                    fail(Kind::UnknownDegree, f3 + "[1]",
                         "hom(" + x + "," + y + ") has no basis in degree " +
                             std::to_string(key.fdeg));
                if (key.fidx >= hf.dim(key.fdeg))
                    fail(Kind::DimensionMismatch, f3 + "[1]", "inner index out of range");
                size_t want = ho.dim(key.gdeg + key.fdeg);
                if (!want)
                    fail(Kind::UnknownDegree, f3 + "[2]",
                         "hom(" + x + "," + z + ") has no basis in degree " +
                             std::to_string(key.gdeg + key.fdeg));
                Vec v = vec_of(en[2], f3 + "[2]", want);
                if (c.comp.count(key)) fail(Kind::Syntax, f3, "duplicate composition entry");
                if (!is_zero(v)) c.comp.emplace(key, std::move(v));
            }
        }
    }

    const json& us = need(j, "units", field);
    need_object(us, field + ".units");
    for (auto it = us.begin(); it != us.end(); ++it)
        if (!c.has_object(it.key()))
            fail(Kind::Reference, field + ".units." + it.key(),
                 "unknown object '" + it.key() + "'");
    for (const auto& o : c.objects) {
        if (!us.contains(o)) fail(Kind::Syntax, field + ".units", "missing unit for object '" + o + "'");
        c.units.emplace(o, vec_of(us.at(o), field + ".units." + o, c.hom(o, o).dim(0)));
    }
    return c;
}

CatPtr find_category(const PresentationBundle& b, const json& j, const char* key,
                     const std::string& field) {
    std::string name = need_string(need(j, key, field), field + "." + key);
    auto it = b.categories.find(name);
    if (it == b.categories.end())
        fail(Kind::Reference, field + "." + key, "unknown category '" + name + "'");
    return it->second;
}

DgFunctor functor_of(const PresentationBundle& b, const json& j, const std::string& field) {
    need_object(j, field);
    check_keys(j, {"src", "tgt", "ob", "mor"}, field);
    DgFunctor f;
    f.src = find_category(b, j, "src", field);
    f.tgt = find_category(b, j, "tgt", field);

    const json& ob = need(j, "ob", field);
    need_object(ob, field + ".ob");
    for (auto it = ob.begin(); it != ob.end(); ++it) {
        const std::string f2 = field + ".ob." + it.key();
        if (!f.src->has_object(it.key())) fail(Kind::Reference, f2, "unknown source object");
        std::string y = need_string(it.value(), f2);
        if (!f.tgt->has_object(y)) fail(Kind::Reference, f2, "unknown target object '" + y + "'");
        f.ob.emplace(it.key(), std::move(y));
    }
    for (const auto& o : f.src->objects)
        if (!f.ob.count(o)) fail(Kind::Syntax, field + ".ob", "missing image for object '" + o + "'");

    if (j.contains("mor")) {
        const json& mor = j.at("mor");
        need_array(mor, field + ".mor");
        for (size_t i = 0; i < mor.size(); ++i) {
            const json& r = mor[i];
            const std::string f2 = at(field + ".mor", i);
            need_object(r, f2);
            check_keys(r, {"src", "tgt", "deg", "idx", "image"}, f2);
            MorKey k = read_morkey(r, f2);
            check_morkey(k, *f.src, f2);
            if (f.mor.count(k)) fail(Kind::Syntax, f2, "duplicate morphism image");
            Element e = f.tgt->zero_element(f.ob.at(k.src), f.ob.at(k.tgt));
            const Complex& h = f.tgt->hom(e.src, e.tgt);
            const json& img = need(r, "image", f2);
            need_object(img, f2 + ".image");
            for (auto it = img.begin(); it != img.end(); ++it) {
                int n = degree_key(it.key(), f2 + ".image");
                const std::string f3 = f2 + ".image." + it.key();
                if (!h.dim(n))
                    fail(Kind::UnknownDegree, f3,
                         "hom(" + e.src + "," + e.tgt + ") has no basis in degree " +
                             std::to_string(n));
                Vec v = vec_of(it.value(), f3, h.dim(n));
                if (!is_zero(v)) e.coords.emplace(n, std::move(v));
            }
            if (!e.coords.empty()) f.mor.emplace(k, std::move(e));
        }
    }
    return f;
}

DgModule module_of(const PresentationBundle& b, const json& j, const std::string& field) {
    need_object(j, field);
    check_keys(j, {"base", "values", "action"}, field);
    DgModule m;
    m.base = find_category(b, j, "base", field);

    if (j.contains("values")) {
        const json& vals = j.at("values");
        need_array(vals, field + ".values");
        for (size_t i = 0; i < vals.size(); ++i) {
            const json& r = vals[i];
            const std::string f2 = at(field + ".values", i);
            need_object(r, f2);
            check_keys(r, {"object", "basis", "d"}, f2);
            std::string o = need_string(need(r, "object", f2), f2 + ".object");
            if (!m.base->has_object(o)) fail(Kind::Reference, f2 + ".object", "unknown object '" + o + "'");
            if (m.values.count(o)) fail(Kind::Syntax, f2, "duplicate value declaration");
            Complex cx = complex_fields_of(r, f2);
            if (cx.space.total_dim()) m.values.emplace(std::move(o), std::move(cx));
        }
    }

    if (j.contains("action")) {
        const json& act = j.at("action");
        need_array(act, field + ".action");
        for (size_t i = 0; i < act.size(); ++i) {
            const json& r = act[i];
            const std::string f2 = at(field + ".action", i);
            need_object(r, f2);
            check_keys(r, {"src", "tgt", "deg", "idx", "map"}, f2);
            MorKey k = read_morkey(r, f2);
            check_morkey(k, *m.base, f2);
            if (m.action.count(k)) fail(Kind::Syntax, f2, "duplicate action entry");
            GradedMap g = blocks_of(need(r, "map", f2), m.value(k.src).space, m.value(k.tgt).space,
                                    k.deg, f2 + ".map");
            if (!g.is_zero()) m.action.emplace(k, std::move(g));
        }
    }
    return m;
}

Bimodule bimodule_of(const PresentationBundle& b, const json& j, const std::string& field) {
    need_object(j, field);
    check_keys(j, {"row", "col", "values", "action"}, field);
    Bimodule m = bimodule_frame(find_category(b, j, "row", field), find_category(b, j, "col", field));

    if (j.contains("values")) {
        const json& vals = j.at("values");
        need_array(vals, field + ".values");
        for (size_t i = 0; i < vals.size(); ++i) {
            const json& r = vals[i];
            const std::string f2 = at(field + ".values", i);
            need_object(r, f2);
            check_keys(r, {"row_object", "col_object", "basis", "d"}, f2);
            std::string ro = need_string(need(r, "row_object", f2), f2 + ".row_object");
            std::string co = need_string(need(r, "col_object", f2), f2 + ".col_object");
            if (!m.row->has_object(ro))
                fail(Kind::Reference, f2 + ".row_object", "unknown row object '" + ro + "'");
            if (!m.col->has_object(co))
                fail(Kind::Reference, f2 + ".col_object", "unknown col object '" + co + "'");
            std::string label = TensorCategory::obj_label(ro, co);
            if (m.mod.values.count(label)) fail(Kind::Syntax, f2, "duplicate value declaration");
            Complex cx = complex_fields_of(r, f2);
            if (cx.space.total_dim()) m.mod.values.emplace(std::move(label), std::move(cx));
        }
    }

    if (j.contains("action")) {
        const json& act = j.at("action");
        need_array(act, field + ".action");
        for (size_t i = 0; i < act.size(); ++i) {
            const json& r = act[i];
            const std::string f2 = at(field + ".action", i);
            need_object(r, f2);
            check_keys(r, {"row", "col", "map"}, f2);
            const json& rowj = need(r, "row", f2);
            need_object(rowj, f2 + ".row");
            check_keys(rowj, {"src", "tgt", "deg", "idx"}, f2 + ".row");
            MorKey rk = read_morkey(rowj, f2 + ".row");
            check_morkey(rk, *m.row, f2 + ".row");
            const json& colj = need(r, "col", f2);
            need_object(colj, f2 + ".col");
            check_keys(colj, {"src", "tgt", "deg", "idx"}, f2 + ".col");
            MorKey ck = read_morkey(colj, f2 + ".col");
            check_morkey(ck, *m.col, f2 + ".col");
            MorKey tk;
            try {
                tk = bimodule_pure_key(m, rk, ck);
            } catch (const std::invalid_argument& e) {
                fail(Kind::UnknownDegree, f2, e.what());
            }
            if (m.mod.action.count(tk)) fail(Kind::Syntax, f2, "duplicate action entry");
            GradedMap g = blocks_of(need(r, "map", f2), m.mod.value(tk.src).space,
                                    m.mod.value(tk.tgt).space, tk.deg, f2 + ".map");
            if (!g.is_zero()) m.mod.action.emplace(tk, std::move(g));
        }
    }
    return m;
}

}  // namespace

PresentationBundle parse_bundle_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1;
        size_t upto = e.byte ? e.byte - 1 : 0;
        for (size_t i = 0; i < upto && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw BundleError(Kind::Syntax, origin + ": line " + std::to_string(line), e.what());
    }
    need_object(doc, origin);
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& k = it.key();
        if (k != "categories" && k != "functors" && k != "modules" && k != "bimodules" &&
            k != "subcategories" && k != "suites")
            fail(Kind::Syntax, k, "unknown field");
    }

    PresentationBundle b;

    if (doc.contains("categories")) {
        const json& cs = doc.at("categories");
        need_object(cs, "categories");
        for (auto it = cs.begin(); it != cs.end(); ++it) {
            const std::string field = "categories." + it.key();
            DgCategory c = category_of(it.value(), field);
            ValidationReport v = validate_dg_category(c);
            if (!v.ok) fail(Kind::Validation, field, join_issues(v));
            b.categories.emplace(it.key(), make_cat(std::move(c)));
        }
    }

    if (doc.contains("functors")) {
        const json& fs = doc.at("functors");
        need_object(fs, "functors");
        for (auto it = fs.begin(); it != fs.end(); ++it) {
            const std::string field = "functors." + it.key();
            DgFunctor f = functor_of(b, it.value(), field);
            ValidationReport v = validate_dg_functor(f);
            if (!v.ok) fail(Kind::Validation, field, join_issues(v));
            b.functors.emplace(it.key(), std::move(f));
        }
    }

    if (doc.contains("modules")) {
        const json& ms = doc.at("modules");
        need_object(ms, "modules");
        for (auto it = ms.begin(); it != ms.end(); ++it) {
            const std::string field = "modules." + it.key();
            DgModule m = module_of(b, it.value(), field);
            ValidationReport v = validate_dg_module(m);
            if (!v.ok) fail(Kind::Validation, field, join_issues(v));
            b.modules.emplace(it.key(), std::move(m));
        }
    }

    if (doc.contains("bimodules")) {
        const json& ms = doc.at("bimodules");
        need_object(ms, "bimodules");
        for (auto it = ms.begin(); it != ms.end(); ++it) {
            const std::string field = "bimodules." + it.key();
            Bimodule m = bimodule_of(b, it.value(), field);
            ValidationReport v = validate_bimodule(m);
            if (!v.ok) fail(Kind::Validation, field, join_issues(v));
            b.bimodules.emplace(it.key(), std::move(m));
        }
    }

    if (doc.contains("subcategories")) {
        const json& ss = doc.at("subcategories");
        need_object(ss, "subcategories");
        for (auto it = ss.begin(); it != ss.end(); ++it) {
            const std::string field = "subcategories." + it.key();
            need_object(it.value(), field);
            check_keys(it.value(), {"category", "objects"}, field);
            PresentationBundle::SubSelection sel;
            std::string cn = need_string(need(it.value(), "category", field), field + ".category");
            if (!b.categories.count(cn))
                fail(Kind::Reference, field + ".category", "unknown category '" + cn + "'");
            sel.category = cn;
            const json& objs = need(it.value(), "objects", field);
            need_array(objs, field + ".objects");
            for (size_t i = 0; i < objs.size(); ++i) {
                std::string o = need_string(objs[i], at(field + ".objects", i));
                if (!b.categories.at(cn)->has_object(o))
                    fail(Kind::Reference, at(field + ".objects", i), "unknown object '" + o + "'");
                if (std::find(sel.objects.begin(), sel.objects.end(), o) != sel.objects.end())
                    fail(Kind::Syntax, at(field + ".objects", i), "duplicate object '" + o + "'");
                sel.objects.push_back(std::move(o));
            }
            b.subcategories.emplace(it.key(), std::move(sel));
        }
    }

    if (doc.contains("suites")) {
        const json& ss = doc.at("suites");
        need_array(ss, "suites");
        for (size_t i = 0; i < ss.size(); ++i) {
            const std::string field = at("suites", i);
            const json& r = ss[i];
            need_object(r, field);
            check_keys(r, {"suite", "args"}, field);
            PresentationBundle::SuiteDirective d;
            d.suite = need_string(need(r, "suite", field), field + ".suite");
            if (r.contains("args")) {
                const json& args = r.at("args");
                need_object(args, field + ".args");
                for (auto it = args.begin(); it != args.end(); ++it) {
                    const std::string f2 = field + ".args." + it.key();
                    std::string v = need_string(it.value(), f2);
                    bool known = true;
                    if (it.key() == "category")
                        known = b.categories.count(v);
                    else if (it.key() == "functor")
                        known = b.functors.count(v);
                    else if (it.key() == "module")
                        known = b.modules.count(v);
                    else if (it.key() == "bimodule")
                        known = b.bimodules.count(v);
                    else if (it.key() == "subcategory")
                        known = b.subcategories.count(v);
                    if (!known) fail(Kind::Reference, f2, "unknown " + it.key() + " '" + v + "'");
                    d.args.emplace(it.key(), std::move(v));
                }
            }
            b.suites.push_back(std::move(d));
        }
    }

    return b;
}

PresentationBundle parse_bundle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BundleError(Kind::Syntax, path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_bundle_text(ss.str(), path);
}

/* --------------------------------------------------------------- emission */

namespace {

json emit_space(const GradedSpace& s) {
    json o = json::object();
    for (const auto& [n, labels] : s.basis)
        if (!labels.empty()) o[std::to_string(n)] = labels;
    return o;
}

json emit_vec(const Vec& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
}

json emit_blocks(const GradedMap& m) {
    json o = json::object();
    for (const auto& [n, blk] : m.blocks) {
        json rows = json::array();
        for (size_t i = 0; i < blk.rows(); ++i) {
            json row = json::array();
            for (size_t j = 0; j < blk.cols(); ++j) row.push_back(blk.at(i, j).str());
            rows.push_back(std::move(row));
        }
        o[std::to_string(n)] = std::move(rows);
    }
    return o;
}

void emit_complex_into(json& o, const Complex& c) {
    o["basis"] = emit_space(c.space);
    if (!c.d.is_zero()) o["d"] = emit_blocks(c.d);
}

std::string cat_name_of(const PresentationBundle& b, const CatPtr& c, const std::string& what) {
    for (const auto& [n, p] : b.categories)
        if (same_base(p, c)) return n;
    throw std::logic_error("emit: " + what + " refers to a category that is not in the bundle");
}

json emit_category(const DgCategory& c) {
    json o = json::object();
    o["objects"] = c.objects;

    json homs = json::array();
    for (const auto& [pr, cx] : c.homs) {
        if (!cx.space.total_dim()) continue;
        json h = json::object();
        h["src"] = pr.first;
        h["tgt"] = pr.second;
        emit_complex_into(h, cx);
        homs.push_back(std::move(h));
    }
    if (!homs.empty()) o["homs"] = std::move(homs);

    json comp = json::array();
    json cur;
    std::string cx_, cy_, cz_;
    bool open = false;
    for (const auto& [k, v] : c.comp) {
        if (is_zero(v)) continue;
        if (!open || k.x != cx_ || k.y != cy_ || k.z != cz_) {
            if (open) comp.push_back(std::move(cur));
            cur = json::object();
            cur["src"] = k.x;
            cur["mid"] = k.y;
            cur["tgt"] = k.z;
            cur["entries"] = json::array();
            cx_ = k.x;
            cy_ = k.y;
            cz_ = k.z;
            open = true;
        }
        json entry = json::array();
        entry.push_back(json::array({k.gdeg, static_cast<std::uint64_t>(k.gidx)}));
        entry.push_back(json::array({k.fdeg, static_cast<std::uint64_t>(k.fidx)}));
        entry.push_back(emit_vec(v));
        cur["entries"].push_back(std::move(entry));
    }
    if (open) comp.push_back(std::move(cur));
    if (!comp.empty()) o["comp"] = std::move(comp);

    json units = json::object();
    for (const auto& [ob, v] : c.units) units[ob] = emit_vec(v);
    o["units"] = std::move(units);
    return o;
}

json emit_morkey_into(json& r, const MorKey& k) {
    r["src"] = k.src;
    r["tgt"] = k.tgt;
    r["deg"] = k.deg;
    r["idx"] = static_cast<std::uint64_t>(k.idx);
    return r;
}

json emit_functor(const PresentationBundle& b, const DgFunctor& f) {
    json o = json::object();
    o["src"] = cat_name_of(b, f.src, "functor source");
    o["tgt"] = cat_name_of(b, f.tgt, "functor target");
    o["ob"] = json(f.ob);
    json mor = json::array();
    for (const auto& [k, e] : f.mor) {
        if (e.is_zero()) continue;
        json r = json::object();
        emit_morkey_into(r, k);
        json img = json::object();
        for (const auto& [n, v] : e.coords) img[std::to_string(n)] = emit_vec(v);
        r["image"] = std::move(img);
        mor.push_back(std::move(r));
    }
    if (!mor.empty()) o["mor"] = std::move(mor);
    return o;
}

json emit_module(const PresentationBundle& b, const DgModule& m) {
    json o = json::object();
    o["base"] = cat_name_of(b, m.base, "module base");
    json vals = json::array();
    for (const auto& [ob, cx] : m.values) {
        if (!cx.space.total_dim()) continue;
        json r = json::object();
        r["object"] = ob;
        emit_complex_into(r, cx);
        vals.push_back(std::move(r));
    }
    if (!vals.empty()) o["values"] = std::move(vals);
    json act = json::array();
    for (const auto& [k, g] : m.action) {
        if (g.is_zero()) continue;
        json r = json::object();
        emit_morkey_into(r, k);
        r["map"] = emit_blocks(g);
        act.push_back(std::move(r));
    }
    if (!act.empty()) o["action"] = std::move(act);
    return o;
}

json emit_bimodule(const PresentationBundle& b, const Bimodule& m) {
    json o = json::object();
    o["row"] = cat_name_of(b, m.row, "bimodule row side");
    o["col"] = cat_name_of(b, m.col, "bimodule col side");
    json vals = json::array();
    for (const auto& [lab, cx] : m.mod.values) {
        if (!cx.space.total_dim()) continue;
        const auto& fac = m.tens->factors.at(lab);
        json r = json::object();
        r["row_object"] = fac.first;
        r["col_object"] = fac.second;
        emit_complex_into(r, cx);
        vals.push_back(std::move(r));
    }
    if (!vals.empty()) o["values"] = std::move(vals);

    std::map<std::pair<MorKey, MorKey>, const GradedMap*> acts;
    for (const auto& [k, g] : m.mod.action) {
        if (g.is_zero()) continue;
        acts.emplace(bimodule_split_key(m, k), &g);
    }
    json act = json::array();
    for (const auto& [pk, g] : acts) {
        json r = json::object();
        json rk = json::object();
        emit_morkey_into(rk, pk.first);
        json ck = json::object();
        emit_morkey_into(ck, pk.second);
        r["row"] = std::move(rk);
        r["col"] = std::move(ck);
        r["map"] = emit_blocks(*g);
        act.push_back(std::move(r));
    }
    if (!act.empty()) o["action"] = std::move(act);
    return o;
}

}  // namespace

std::string emit_bundle(const PresentationBundle& b) {
    json doc = json::object();
    if (!b.categories.empty()) {
        json cs = json::object();
        for (const auto& [n, c] : b.categories) cs[n] = emit_category(*c);
        doc["categories"] = std::move(cs);
    }
    if (!b.functors.empty()) {
        json fs = json::object();
        for (const auto& [n, f] : b.functors) fs[n] = emit_functor(b, f);
        doc["functors"] = std::move(fs);
    }
    if (!b.modules.empty()) {
        json ms = json::object();
        for (const auto& [n, m] : b.modules) ms[n] = emit_module(b, m);
        doc["modules"] = std::move(ms);
    }
    if (!b.bimodules.empty()) {
        json ms = json::object();
        for (const auto& [n, m] : b.bimodules) ms[n] = emit_bimodule(b, m);
        doc["bimodules"] = std::move(ms);
    }
    if (!b.subcategories.empty()) {
        json ss = json::object();
        for (const auto& [n, s] : b.subcategories) {
            json r = json::object();
            r["category"] = s.category;
            r["objects"] = s.objects;
            ss[n] = std::move(r);
        }
        doc["subcategories"] = std::move(ss);
    }
    if (!b.suites.empty()) {
        json arr = json::array();
        for (const auto& s : b.suites) {
            json r = json::object();
            r["suite"] = s.suite;
            if (!s.args.empty()) r["args"] = json(s.args);
            arr.push_back(std::move(r));
        }
        doc["suites"] = std::move(arr);
    }
    return doc.dump(2) + "\n";
}

/* ---------------------------------------------------------------- reports */

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string tool_version() { return "1.0.0"; }

std::string report_json(const Report& r) {
    json o = json::object();
    o["suite"] = r.suite;
    o["seed"] = r.seed;
    o["field"] = r.field;
    o["version"] = r.tool_version;
    o["pass"] = r.all_pass();
    json cs = json::array();
    for (const auto& c : r.checks) {
        json e = json::object();
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["witness"] = c.witness;
        cs.push_back(std::move(e));
    }
    o["checks"] = std::move(cs);
    return o.dump(2) + "\n";
}

/* ----------------------------------------------------------------- suites */

namespace {

void add_check(Report& r, std::string name, bool pass, std::string witness) {
    r.checks.push_back({std::move(name), pass, std::move(witness)});
}

void add_report(Report& r, const std::string& name, const ValidationReport& v,
                const std::string& pass_note = "") {
    add_check(r, name, v.ok, v.ok ? pass_note : join_issues(v));
}

std::vector<int> all_degrees(const GradedSpace& a, const GradedSpace& b) {
    std::set<int> s;
    for (int n : a.degrees()) s.insert(n);
    for (int n : b.degrees()) s.insert(n);
    return {s.begin(), s.end()};
}

Vec unit_vec(size_t n, size_t i) {
    Vec v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
}

std::string dims_string(const Complex& c) {
    std::string s;
    for (int n : c.space.degrees()) {
        if (!s.empty()) s += " ";
        s += std::to_string(n) + ":" + std::to_string(c.dim(n));
    }
    return s.empty() ? "zero" : s;
}

void suite_validate(const PresentationBundle& b, std::uint64_t, Report& rep) {
    for (const auto& [name, c] : b.categories)
        add_report(rep, "category " + name, validate_dg_category(*c),
                   std::to_string(c->basis_morphisms().size()) + " basis morphisms");
    for (const auto& [name, f] : b.functors)
        add_report(rep, "functor " + name, validate_dg_functor(f));
    for (const auto& [name, m] : b.modules)
        add_report(rep, "module " + name, validate_dg_module(m));
    for (const auto& [name, m] : b.bimodules)
        add_report(rep, "bimodule " + name, validate_bimodule(m));
    for (const auto& [name, s] : b.subcategories) {
        bool ok = true;
        std::string w;
        auto it = b.categories.find(s.category);
        if (it == b.categories.end()) {
            ok = false;
            w = "unknown category '" + s.category + "'";
        } else {
            for (const auto& o : s.objects)
                if (!it->second->has_object(o)) {
                    ok = false;
                    w = "unknown object '" + o + "'";
                    break;
                }
        }
        add_check(rep, "subcategory " + name, ok,
                  ok ? std::to_string(s.objects.size()) + " objects" : w);
    }
}

void suite_signs(const PresentationBundle&, std::uint64_t seed, Report& rep) {
    std::mt19937_64 gen(seed);
    for (int r = 0; r < 100; ++r) {
        DgCategory c = random_category(gen());
        ValidationReport v = validate_dg_category(c);
        add_check(rep, "random category " + std::to_string(r) + " validates", v.ok,
                  v.ok ? std::to_string(c.basis_morphisms().size()) + " basis morphisms"
                       : join_issues(v));
        Corruption k = inject_corruption(c, gen());
        ValidationReport cv = validate_dg_category(k.corrupted);
        add_check(rep, "corruption " + std::to_string(r) + " detected", !cv.ok,
                  !cv.ok ? k.description : "flip went undetected: " + k.description);
    }
}

void suite_nat(const PresentationBundle& b, std::uint64_t, Report& rep) {
    for (const auto& [cname, c] : b.categories) {
        for (const auto& a : c->objects)
            for (const auto& a2 : c->objects) {
                NatData nd = dgnat_complex(representable(c, a), representable(c, a2));
                const Complex& h = c->hom(a2, a);
                bool ok = true;
                std::string w;
                for (int n : all_degrees(nd.e.cx.space, h.space))
                    if (nd.e.cx.dim(n) != h.dim(n)) {
                        ok = false;
                        w = "degree " + std::to_string(n) + ": transformations " +
                            std::to_string(nd.e.cx.dim(n)) + ", hom " + std::to_string(h.dim(n));
                        break;
                    }
                add_check(rep,
                          "nat " + cname + ": representables (" + a + ", " + a2 +
                              ") match hom(" + a2 + "," + a + ")",
                          ok, w);
            }
    }
    for (const auto& [n1, m1] : b.modules)
        for (const auto& [n2, m2] : b.modules) {
            if (!same_base(m1.base, m2.base)) continue;
            NatData nd = dgnat_complex(m1, m2);
            add_report(rep, "nat " + n1 + " -> " + n2 + ": complex", validate_complex(nd.e.cx),
                       "dims " + dims_string(nd.e.cx));
            bool ok = true;
            std::string w;
            for (int n : nd.e.cx.space.degrees()) {
                for (size_t j = 0; j < nd.e.cx.dim(n); ++j) {
                    Vec e = unit_vec(nd.e.cx.dim(n), j);
                    DgNat eta = nd.to_nat(n, e);
                    ValidationReport vn = validate_dg_nat(eta);
                    if (!vn.ok) {
                        ok = false;
                        w = "basis " + std::to_string(n) + "#" + std::to_string(j) +
                            " is not a transformation: " + join_issues(vn);
                        break;
                    }
                    if (!(nd.nat_coords(eta) == e)) {
                        ok = false;
                        w = "coordinates do not round-trip at " + std::to_string(n) + "#" +
                            std::to_string(j);
                        break;
                    }
                }
                if (!ok) break;
            }
            add_check(rep, "nat " + n1 + " -> " + n2 + ": basis transformations", ok, w);
        }
}

Report::Check yoneda_round_trip(const std::string& name, const DgModule& g, const std::string& a) {
    try {
        YonedaIso y = yoneda_iso(g, a);
        for (int n : y.nat.e.cx.space.degrees()) {
            Matrix blk = y.eval.block(n);
            auto inv = blk.inverse();
            if (!inv)
                return {name, false,
                        "evaluation block not invertible in degree " + std::to_string(n)};
            Matrix id = Matrix::identity(blk.rows());
            if (!(blk * *inv == id) || !(*inv * blk == id))
                return {name, false, "two-sided inverse fails in degree " + std::to_string(n)};
        }
        for (int n : y.nat.e.cx.space.degrees())
            for (size_t j = 0; j < y.nat.e.cx.dim(n); ++j) {
                Vec e = unit_vec(y.nat.e.cx.dim(n), j);
                if (!(y.nat.nat_coords(y.nat.to_nat(n, e)) == e))
                    return {name, false,
                            "transformation coordinates do not round-trip at degree " +
                                std::to_string(n) + "#" + std::to_string(j)};
            }
        return {name, true, "dims " + dims_string(y.nat.e.cx)};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

void suite_yoneda(const PresentationBundle& b, std::uint64_t seed, Report& rep) {
    std::mt19937_64 gen(seed);
    for (const auto& [cname, c] : b.categories) {
        auto batt = default_battery(c, gen());
        for (size_t i = 0; i < batt.size(); ++i)
            for (const auto& a : c->objects)
                rep.checks.push_back(yoneda_round_trip(
                    "yoneda " + cname + "[" + std::to_string(i) + "] @ " + a, batt[i], a));
    }
    for (const auto& [mname, m] : b.modules)
        for (const auto& a : m.base->objects)
            rep.checks.push_back(yoneda_round_trip("yoneda " + mname + " @ " + a, m, a));
}

/* Reference end: cut ⊕_A T(A,A) by the stacked conditions
 * T(1_A⊗f)(x_A) - T(f⊗1_B)(x_B) = 0 over every homogeneous basis f : A -> B,
 * with the canonical kernel basis per degree and the induced differential. */
struct RefEnd {
    DirectSum sum;
    Complex cx;
    GradedMap incl;
};

RefEnd reference_end(const Bifunctor& t) {
    RefEnd r;
    std::vector<std::string> objects = t.co->objects;
    std::vector<const Complex*> parts;
    for (const auto& a : objects) parts.push_back(&t.value(a, a));
    r.sum = direct_sum(parts, objects);
    const Complex& tot = r.sum.total;
    std::map<std::string, size_t> pos;
    for (size_t i = 0; i < objects.size(); ++i) pos[objects[i]] = i;
    std::vector<MorKey> basis = t.co->basis_morphisms();

    std::map<int, Matrix> kers;
    GradedSpace space;
    for (int n : tot.space.degrees()) {
        size_t cols = tot.dim(n);
        std::vector<Matrix> stacked;
        size_t total_rows = 0;
        for (const MorKey& fk : basis) {
            size_t out = t.value(fk.src, fk.tgt).dim(n + fk.deg);
            if (!out) continue;
            Element f = t.co->basis_element(fk);
            Element u = f;
            std::swap(u.src, u.tgt);
            Matrix block(out, cols);
            size_t da = t.value(fk.src, fk.src).dim(n);
            if (da) {
                Matrix lb = t.act2(fk.src, f).block(n);
                size_t off = r.sum.offsets[pos[fk.src]].at(n);
                for (size_t i = 0; i < out; ++i)
                    for (size_t j = 0; j < da; ++j) block.at(i, off + j) = lb.at(i, j);
            }
            size_t db = t.value(fk.tgt, fk.tgt).dim(n);
            if (db) {
                Matrix rb = t.act1(u, fk.tgt).block(n);
                size_t off = r.sum.offsets[pos[fk.tgt]].at(n);
                for (size_t i = 0; i < out; ++i)
                    for (size_t j = 0; j < db; ++j)
                        block.at(i, off + j) = block.at(i, off + j) - rb.at(i, j);
            }
            total_rows += out;
            stacked.push_back(std::move(block));
        }
        Matrix cons(total_rows, cols);
        size_t row0 = 0;
        for (const Matrix& m : stacked) {
            for (size_t i = 0; i < m.rows(); ++i)
                for (size_t j = 0; j < cols; ++j) cons.at(row0 + i, j) = m.at(i, j);
            row0 += m.rows();
        }
        Matrix k = total_rows ? cons.kernel() : Matrix::identity(cols);
        if (!k.cols()) continue;
        std::vector<std::string> labels;
        for (size_t j = 0; j < k.cols(); ++j) labels.push_back("k" + std::to_string(j));
        space.basis[n] = std::move(labels);
        kers.emplace(n, std::move(k));
    }
    r.cx.space = space;
    r.cx.d = GradedMap::zero(space, space, 1);
    r.incl = GradedMap::zero(space, tot.space, 0);
    for (const auto& [n, k] : kers) r.incl.set_block(n, k);
    for (const auto& [n, k] : kers) {
        Matrix img = tot.d.block(n) * k;
        if (space.dim(n + 1)) {
            auto x = kers.at(n + 1).solve_matrix(img);
            if (!x)
                throw std::logic_error("reference end: differential leaves the cut subcomplex");
            r.cx.d.set_block(n, *x);
        } else if (!img.is_zero()) {
            throw std::logic_error("reference end: differential escapes in degree " +
                                   std::to_string(n));
        }
    }
    return r;
}

/* Reference coend: divide ⊕_A T(A,A) by the span of
 * T(1_{A1}⊗f)(x) - T(f⊗1_{A2})(x) over every homogeneous basis f : A2 -> A1
 * and every basis x of T(A1,A2), with the canonical coordinate complement. */
struct RefCoend {
    DirectSum sum;
    Complex cx;
    GradedMap proj;
    std::map<int, QuotientSplit> splits;
};

RefCoend reference_coend(const Bifunctor& t) {
    RefCoend r;
    std::vector<std::string> objects = t.co->objects;
    std::vector<const Complex*> parts;
    for (const auto& a : objects) parts.push_back(&t.value(a, a));
    r.sum = direct_sum(parts, objects);
    const Complex& tot = r.sum.total;
    std::map<std::string, size_t> pos;
    for (size_t i = 0; i < objects.size(); ++i) pos[objects[i]] = i;

    std::map<int, std::vector<Vec>> gens;
    for (const MorKey& fk : t.co->basis_morphisms()) {
        const std::string& a2 = fk.src;
        const std::string& a1 = fk.tgt;
        const Complex& mid = t.value(a1, a2);
        if (!mid.space.total_dim()) continue;
        Element f = t.co->basis_element(fk);
        Element u = f;
        std::swap(u.src, u.tgt);
        GradedMap left = t.act2(a1, f);
        GradedMap right = t.act1(u, a2);
        for (int m : mid.space.degrees()) {
            int k = m + fk.deg;
            if (!tot.dim(k)) continue;
            Matrix lb = left.block(m);
            Matrix rb = right.block(m);
            for (size_t x = 0; x < mid.dim(m); ++x) {
                Vec col(tot.dim(k));
                size_t d1 = t.value(a1, a1).dim(k);
                if (d1) {
                    size_t off = r.sum.offsets[pos[a1]].at(k);
                    for (size_t i = 0; i < d1; ++i) col[off + i] = col[off + i] + lb.at(i, x);
                }
                size_t d2 = t.value(a2, a2).dim(k);
                if (d2) {
                    size_t off = r.sum.offsets[pos[a2]].at(k);
                    for (size_t i = 0; i < d2; ++i) col[off + i] = col[off + i] - rb.at(i, x);
                }
                if (!is_zero(col)) gens[k].push_back(std::move(col));
            }
        }
    }

    GradedSpace space;
    for (int n : tot.space.degrees()) {
        size_t ng = gens.count(n) ? gens[n].size() : 0;
        Matrix g(tot.dim(n), ng);
        for (size_t j = 0; j < ng; ++j) g.set_column(j, gens[n][j]);
        QuotientSplit qs = quotient_by_columns(g, tot.dim(n));
        if (qs.kept.empty()) continue;
        std::vector<std::string> labels;
        for (size_t j = 0; j < qs.kept.size(); ++j) labels.push_back("q" + std::to_string(j));
        space.basis[n] = std::move(labels);
        r.splits.emplace(n, std::move(qs));
    }
    r.cx.space = space;
    r.cx.d = GradedMap::zero(space, space, 1);
    r.proj = GradedMap::zero(tot.space, space, 0);
    for (const auto& [n, qs] : r.splits) r.proj.set_block(n, qs.proj);
    for (const auto& [n, qs] : r.splits) {
        if (!space.dim(n + 1)) continue;
        Matrix dq = r.splits.at(n + 1).proj * (tot.d.block(n) * qs.section);
        r.cx.d.set_block(n, dq);
    }
    return r;
}

Report::Check compare_end(const std::string& name, const Bifunctor& t) {
    try {
        EndData e = end_of_bifunctor(t);
        RefEnd r = reference_end(t);
        for (int n : all_degrees(e.cx.space, r.cx.space)) {
            if (e.cx.dim(n) != r.cx.dim(n))
                return {name, false,
                        "dimension differs in degree " + std::to_string(n) + ": library " +
                            std::to_string(e.cx.dim(n)) + ", reference " +
                            std::to_string(r.cx.dim(n))};
            if (!(e.cx.d.block(n) == r.cx.d.block(n)))
                return {name, false, "differential differs in degree " + std::to_string(n)};
            if (!(e.incl.block(n) == r.incl.block(n)))
                return {name, false, "inclusion differs in degree " + std::to_string(n)};
        }
        return {name, true, "dims " + dims_string(r.cx)};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

Report::Check compare_coend(const std::string& name, const Bifunctor& t) {
    try {
        CoendData c = coend_of_bifunctor(t);
        RefCoend r = reference_coend(t);
        for (int n : all_degrees(c.cx.space, r.cx.space)) {
            if (c.cx.dim(n) != r.cx.dim(n))
                return {name, false,
                        "dimension differs in degree " + std::to_string(n) + ": library " +
                            std::to_string(c.cx.dim(n)) + ", reference " +
                            std::to_string(r.cx.dim(n))};
            if (!(c.cx.d.block(n) == r.cx.d.block(n)))
                return {name, false, "differential differs in degree " + std::to_string(n)};
            if (!(c.proj.block(n) == r.proj.block(n)))
                return {name, false, "projection differs in degree " + std::to_string(n)};
        }
        return {name, true, "dims " + dims_string(r.cx)};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

void suite_end(const PresentationBundle& b, std::uint64_t seed, Report& rep) {
    std::mt19937_64 gen(seed);
    for (const auto& [cname, c] : b.categories) {
        rep.checks.push_back(compare_end("end " + cname + ": hom pairing", hom_bifunctor(c)));
        for (int i = 0; i < 9; ++i)
            rep.checks.push_back(compare_end("end " + cname + ": random " + std::to_string(i),
                                             random_bifunctor(c, gen())));
    }
}

void suite_coend(const PresentationBundle& b, std::uint64_t seed, Report& rep) {
    std::mt19937_64 gen(seed);
    for (const auto& [cname, c] : b.categories) {
        rep.checks.push_back(compare_coend("coend " + cname + ": hom pairing", hom_bifunctor(c)));
        for (int i = 0; i < 9; ++i)
            rep.checks.push_back(compare_coend("coend " + cname + ": random " + std::to_string(i),
                                               random_bifunctor(c, gen())));
    }
}

void kan_checks(const std::string& label, const DgFunctor& f, std::uint64_t seed, int side,
                Report& rep) {
    std::mt19937_64 gen(seed);
    auto gs = default_battery(f.src, gen());
    auto hs = default_battery(f.tgt, gen());
    if (side == 0) {
        for (size_t i = 0; i < gs.size(); ++i)
            for (size_t k = 0; k < hs.size(); ++k)
                add_report(rep,
                           "adjunctions " + label + " (g=" + std::to_string(i) + ", h=" +
                               std::to_string(k) + ")",
                           adjunction_check(f, gs[i], hs[k]));
        if (fully_faithful(f))
            for (size_t i = 0; i < gs.size(); ++i)
                add_report(rep, "transfer " + label + " (g=" + std::to_string(i) + ")",
                           transfer_check(f, gs[i]));
        return;
    }
    const char* word = side == 1 ? "left" : "right";
    for (size_t i = 0; i < gs.size(); ++i) {
        for (size_t k = 0; k < hs.size(); ++k) {
            const std::string name = std::string(word) + " extension iso " + label + " (g=" +
                                     std::to_string(i) + ", h=" + std::to_string(k) + ")";
            try {
                if (side == 1) {
                    LanData lg = lan(f, gs[i]);
                    HomIso iso = lan_hom_iso(lg, hs[k]);
                    add_check(rep, name, true, "dims " + dims_string(iso.upper.e.cx));
                } else {
                    RanData rg = ran(f, gs[i]);
                    HomIso iso = ran_hom_iso(rg, hs[k]);
                    add_check(rep, name, true, "dims " + dims_string(iso.upper.e.cx));
                }
            } catch (const std::exception& e) {
                add_check(rep, name, false, e.what());
            }
        }
    }
}

void suite_kan(const PresentationBundle& b, std::uint64_t seed, Report& rep) {
    std::mt19937_64 gen(seed);
    for (const auto& [cname, c] : b.categories)
        kan_checks("identity " + cname, DgFunctor::identity(c), gen(), 0, rep);
    for (const auto& [fname, f] : b.functors) kan_checks(fname, f, gen(), 0, rep);
}

void suite_recollement(const PresentationBundle& b, std::uint64_t seed, Report& rep) {
    if (b.subcategories.empty()) {
        add_check(rep, "recollement inputs", false, "bundle declares no subcategory selection");
        return;
    }
    std::mt19937_64 gen(seed);
    for (const auto& [name, sel] : b.subcategories) {
        std::uint64_t s = gen();
        auto it = b.categories.find(sel.category);
        if (it == b.categories.end()) {
            add_check(rep, "recollement " + name, false, "unknown category '" + sel.category + "'");
            continue;
        }
        try {
            auto battery = default_battery(it->second, s);
            add_report(rep, "recollement " + name,
                       recollement_report(it->second, sel.objects, battery),
                       std::to_string(battery.size()) + " battery modules");
            add_report(rep, "six operations " + name,
                       dg_recollement_axioms(make_quotient_recollement(it->second, sel.objects),
                                             battery));
        } catch (const std::exception& e) {
            add_check(rep, "recollement " + name, false, e.what());
        }
    }
}

void suite_z0(const PresentationBundle& b, std::uint64_t seed, Report& rep) {
    if (b.subcategories.empty()) {
        add_check(rep, "z0 inputs", false, "bundle declares no subcategory selection");
        return;
    }
    std::mt19937_64 gen(seed);
    for (const auto& [name, sel] : b.subcategories) {
        std::uint64_t s = gen();
        auto it = b.categories.find(sel.category);
        if (it == b.categories.end()) {
            add_check(rep, "z0 " + name, false, "unknown category '" + sel.category + "'");
            continue;
        }
        try {
            auto battery = default_battery(it->second, s);
            add_report(rep, "z0 " + name, z0_recollement(it->second, sel.objects, battery),
                       std::to_string(battery.size()) + " battery modules");
        } catch (const std::exception& e) {
            add_check(rep, "z0 " + name, false, e.what());
        }
    }
}

/* The corner composition table against the slice-transformation route:
 * (value basis m) ∘ (col basis t) must equal (-1)^{|t||m|} slice_map(t)(m)
 * on every basis pair of the glued category. */
Report::Check corner_sign_check(const std::string& name, const Bimodule& m,
                                const TriangularMatrixCategory& lam) {
    for (const MorKey& tk : m.col->basis_morphisms()) {
        Element t = m.col->basis_element(tk);
        DgNat sm = slice_map(m, t, tk.deg);
        const std::string tsrc = TriangularMatrixCategory::t_label(tk.src);
        const std::string ttgt = TriangularMatrixCategory::t_label(tk.tgt);
        Element te = lam.lambda->element(tsrc, ttgt, tk.deg,
                                         unit_vec(lam.lambda->hom_dim(tsrc, ttgt, tk.deg), tk.idx));
        for (const auto& yob : m.row->objects) {
            const std::string rlab = TriangularMatrixCategory::r_label(yob);
            const Complex& vy = m.value(yob, tk.tgt);
            for (int p : vy.space.degrees())
                for (size_t j = 0; j < vy.dim(p); ++j) {
                    Element me = lam.lambda->element(ttgt, rlab, p, unit_vec(vy.dim(p), j));
                    Element got = lam.lambda->compose(me, te);
                    Vec ev = sm.at(yob).apply(p, unit_vec(vy.dim(p), j));
                    Vec want = Scalar::sign(static_cast<long>(tk.deg) * p) * ev;
                    Element wantel = lam.lambda->element(tsrc, rlab, p + tk.deg, want);
                    if (!(got == wantel))
                        return {name, false,
                                "corner composite disagrees at (t: " + tk.src + "->" + tk.tgt +
                                    " @" + std::to_string(tk.deg) + " #" + std::to_string(tk.idx) +
                                    ", value " + yob + " @" + std::to_string(p) + " #" +
                                    std::to_string(j) + ")"};
                }
        }
    }
    return {name, true, ""};
}

void suite_matrix(const PresentationBundle& b, std::uint64_t, Report& rep) {
    if (b.bimodules.empty()) {
        add_check(rep, "matrix inputs", false, "bundle declares no bimodules");
        return;
    }
    for (const auto& [name, m] : b.bimodules) {
        try {
            ValidationReport v = validate_bimodule(m);
            add_report(rep, "bimodule " + name, v,
                       std::to_string(m.mod.values.size()) + " value complexes");
            if (!v.ok) continue;
            TriangularMatrixCategory lam = matrix_category(m.col, m, m.row);
            add_report(rep, "gluing " + name + " validates", validate_dg_category(*lam.lambda));
            add_report(rep, "gluing " + name + " hom dimensions", matrix_hom_formula(lam));
            rep.checks.push_back(corner_sign_check("gluing " + name + " corner signs", m, lam));
            TriangularMatrixCategory var = build_lambda_variant(identity_op(m.row), m);
            bool same = (*var.lambda == *lam.lambda);
            add_check(rep, "gluing " + name + " degenerate variant", same,
                      same ? "transported table is identical" : "transported table differs");
        } catch (const std::exception& e) {
            add_check(rep, "gluing " + name, false, e.what());
        }
    }
}

void suite_compat(const PresentationBundle& b, std::uint64_t seed, Report& rep) {
    if (b.subcategories.empty()) {
        add_check(rep, "compat inputs", false, "bundle declares no subcategory selection");
        return;
    }
    std::mt19937_64 gen(seed);
    for (const auto& [name, sel] : b.subcategories) {
        std::uint64_t s1 = gen();
        std::uint64_t s2 = gen();
        auto it = b.categories.find(sel.category);
        if (it == b.categories.end()) {
            add_check(rep, "compat " + name, false, "unknown category '" + sel.category + "'");
            continue;
        }
        try {
            CatPtr sub = make_cat(full_subcategory(*it->second, sel.objects));
            DgFunctor f = inclusion_functor(sub, it->second);
            std::vector<std::pair<std::string, Bimodule>> cases;
            cases.emplace_back("random module", module_as_bimodule(random_module(sub, s1)));
            cases.emplace_back("representable",
                               module_as_bimodule(representable(sub, sub->objects.front())));
            for (const auto& [label, m] : cases) {
                const std::string base = "compat " + name + " (" + label + ")";
                try {
                    CompatibilityData d = compatibility_data(f, m, s2);
                    add_report(rep, base, d.report,
                               std::to_string(d.xi.size()) + " left comparisons, " +
                                   std::to_string(d.rho.size()) + " right comparisons");
                    add_report(rep, base + " re-verified", verify_compatibility(f, m, d));
                } catch (const std::exception& e) {
                    add_check(rep, base, false, e.what());
                }
            }
        } catch (const std::exception& e) {
            add_check(rep, "compat " + name, false, e.what());
        }
    }
}

bool complexes_match(const Complex& a, const Complex& b) {
    return a.space == b.space && a.d == b.d;
}

bool modules_match(const DgModule& a, const DgModule& b) {
    if (!same_base(a.base, b.base)) return false;
    std::set<std::string> obs;
    for (const auto& [o, v] : a.values) obs.insert(o);
    for (const auto& [o, v] : b.values) obs.insert(o);
    for (const auto& o : obs)
        if (!complexes_match(a.value(o), b.value(o))) return false;
    std::set<MorKey> keys;
    for (const auto& [k, g] : a.action) keys.insert(k);
    for (const auto& [k, g] : b.action) keys.insert(k);
    for (const auto& k : keys)
        if (!(a.act(k) == b.act(k))) return false;
    return true;
}

bool bundles_equivalent(const PresentationBundle& x, const PresentationBundle& y) {
    if (x.categories.size() != y.categories.size()) return false;
    for (const auto& [n, c] : x.categories) {
        auto it = y.categories.find(n);
        if (it == y.categories.end()) return false;
        const DgCategory& a = *c;
        const DgCategory& d = *it->second;
        if (a.objects != d.objects || a.units != d.units) return false;
        auto nzc = [](const std::map<CompKey, Vec>& m) {
            std::map<CompKey, Vec> r;
            for (const auto& [k, v] : m)
                if (!is_zero(v)) r.emplace(k, v);
            return r;
        };
        if (nzc(a.comp) != nzc(d.comp)) return false;
        std::set<std::pair<std::string, std::string>> pairs;
        for (const auto& [p, cx] : a.homs) pairs.insert(p);
        for (const auto& [p, cx] : d.homs) pairs.insert(p);
        for (const auto& p : pairs)
            if (!complexes_match(a.hom(p.first, p.second), d.hom(p.first, p.second))) return false;
    }
    if (x.functors.size() != y.functors.size()) return false;
    for (const auto& [n, f] : x.functors) {
        auto it = y.functors.find(n);
        if (it == y.functors.end()) return false;
        if (!same_base(f.src, it->second.src) || !same_base(f.tgt, it->second.tgt)) return false;
        if (f.ob != it->second.ob) return false;
        auto nzm = [](const std::map<MorKey, Element>& m) {
            std::map<MorKey, Element> r;
            for (const auto& [k, e] : m)
                if (!e.is_zero()) r.emplace(k, e);
            return r;
        };
        if (nzm(f.mor) != nzm(it->second.mor)) return false;
    }
    if (x.modules.size() != y.modules.size()) return false;
    for (const auto& [n, m] : x.modules) {
        auto it = y.modules.find(n);
        if (it == y.modules.end() || !modules_match(m, it->second)) return false;
    }
    if (x.bimodules.size() != y.bimodules.size()) return false;
    for (const auto& [n, m] : x.bimodules) {
        auto it = y.bimodules.find(n);
        if (it == y.bimodules.end()) return false;
        if (!same_base(m.row, it->second.row) || !same_base(m.col, it->second.col)) return false;
        if (!modules_match(m.mod, it->second.mod)) return false;
    }
    return x.subcategories == y.subcategories && x.suites == y.suites;
}

void suite_io(const PresentationBundle& b, std::uint64_t, Report& rep) {
    std::string s1 = emit_bundle(b);
    try {
        PresentationBundle p = parse_bundle_text(s1, "<memory>");
        std::string s2 = emit_bundle(p);
        add_check(rep, "canonical emission is a fixed point", s1 == s2,
                  s1 == s2 ? std::to_string(s1.size()) + " bytes" : "bytes differ after reparse");
        bool eq = bundles_equivalent(b, p);
        add_check(rep, "tables round-trip", eq, eq ? "" : "reparsed tables differ");
    } catch (const BundleError& e) {
        add_check(rep, "canonical emission reparses", false, e.what());
    }
}

struct SuiteEntry {
    const char* name;
    void (*fn)(const PresentationBundle&, std::uint64_t, Report&);
    bool (*applicable)(const PresentationBundle&);
};

bool always(const PresentationBundle&) { return true; }
bool has_subs(const PresentationBundle& b) { return !b.subcategories.empty(); }
bool has_bimods(const PresentationBundle& b) { return !b.bimodules.empty(); }

const std::vector<SuiteEntry>& registry() {
    static const std::vector<SuiteEntry> r = {
        {"validate", suite_validate, always},
        {"signs", suite_signs, always},
        {"nat", suite_nat, always},
        {"yoneda", suite_yoneda, always},
        {"end", suite_end, always},
        {"coend", suite_coend, always},
        {"kan", suite_kan, always},
        {"recollement", suite_recollement, has_subs},
        {"z0", suite_z0, has_subs},
        {"matrix", suite_matrix, has_bimods},
        {"compat", suite_compat, has_subs},
        {"io", suite_io, always},
    };
    return r;
}

Report fresh_report(const std::string& suite, std::uint64_t seed) {
    Report rep;
    rep.suite = suite;
    rep.seed = seed;
    rep.field = current_field().to_string();
    rep.tool_version = tool_version();
    return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> n;
    for (const auto& e : registry()) n.push_back(e.name);
    n.push_back("all");
    return n;
}

Report run_suite(const PresentationBundle& b, const std::string& suite, std::uint64_t seed) {
    Report rep = fresh_report(suite, seed);
    auto t0 = std::chrono::steady_clock::now();
    if (suite == "all") {
        for (const auto& e : registry()) {
            if (!e.applicable(b)) continue;
            Report sub;
            e.fn(b, seed, sub);
            for (auto& c : sub.checks)
                rep.checks.push_back({std::string(e.name) + ": " + c.name, c.pass, c.witness});
        }
    } else {
        const SuiteEntry* found = nullptr;
        for (const auto& e : registry())
            if (suite == e.name) {
                found = &e;
                break;
            }
        if (!found) {
            std::string names;
            for (const auto& n : suite_names()) {
                if (!names.empty()) names += ", ";
                names += n;
            }
            throw std::invalid_argument("unknown suite '" + suite + "' (known: " + names + ")");
        }
        found->fn(b, seed, rep);
    }
    rep.total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

Report run_kan(const PresentationBundle& b, const std::string& functor, int side,
               std::uint64_t seed) {
    if (side < 0 || side > 2) throw std::invalid_argument("kan: side must be 0, 1 or 2");
    Report rep = fresh_report("kan", seed);
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(seed);
    if (functor.empty()) {
        for (const auto& [cname, c] : b.categories)
            kan_checks("identity " + cname, DgFunctor::identity(c), gen(), side, rep);
        for (const auto& [fname, f] : b.functors) kan_checks(fname, f, gen(), side, rep);
    } else {
        auto it = b.functors.find(functor);
        if (it == b.functors.end())
            throw std::invalid_argument("unknown functor '" + functor + "'");
        kan_checks(functor, it->second, gen(), side, rep);
    }
    rep.total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace dgcat
