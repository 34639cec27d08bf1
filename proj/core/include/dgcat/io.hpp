#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgcat/matrixcat.hpp"

namespace dgcat {

/* Everything one input file declares, resolved by name. Categories own their
 * presentations; functors, modules and bimodules hold shared pointers into
 * `categories`, so the bundle stays internally consistent after parsing. */
struct PresentationBundle {
    std::map<std::string, CatPtr> categories;
    std::map<std::string, DgFunctor> functors;
    std::map<std::string, DgModule> modules;
    std::map<std::string, Bimodule> bimodules;

    /* A named choice of full subcategory: ambient category plus objects. */
    struct SubSelection {
        std::string category;
        std::vector<std::string> objects;
        bool operator==(const SubSelection&) const = default;
    };
    std::map<std::string, SubSelection> subcategories;

    /* A requested check run, e.g. {suite: "recollement",
     * args: {category: "a2", subcategory: "b-only"}}. */
    struct SuiteDirective {
        std::string suite;
        std::map<std::string, std::string> args;
        bool operator==(const SuiteDirective&) const = default;
    };
    std::vector<SuiteDirective> suites;
};

/* Input rejection with a machine-readable kind and the path of the offending
 * field ("line N" for malformed documents). what() carries the full story. */
class BundleError : public std::runtime_error {
  public:
    enum class Kind {
        Syntax,             // not a well-formed document / wrong node type
        UnknownDegree,      // degree key that is no integer or names no basis
        DimensionMismatch,  // matrix or vector shaped against the declared bases
        Validation,         // parsed clean but fails its structural validator
        Reference,          // names something the bundle does not define
    };

    BundleError(Kind k, std::string field, const std::string& what);

    Kind kind() const { return kind_; }
    const std::string& field() const { return field_; }
    std::string kind_string() const;  // "syntax", "unknown-degree", ...

  private:
    Kind kind_;
    std::string field_;
};

/* Parse and fully validate one bundle file; every object must pass its
 * validator before the bundle is returned. Throws BundleError. */
PresentationBundle parse_bundle(const std::string& path);
/* Same from an in-memory document; `origin` names it in error messages. */
PresentationBundle parse_bundle_text(const std::string& text, const std::string& origin);

/* Canonical serialization: sorted keys, two-space indent, decimal-string
 * scalars, omitted zero blocks, one trailing newline. Canonical form is a
 * fixed point: emit(parse(emit(b))) == emit(b) byte for byte. */
std::string emit_bundle(const PresentationBundle& b);

/* Outcome of one suite run. Wall-clock time is kept here and printed for
 * humans but deliberately left out of report_json, whose bytes depend only on
 * (bundle, suite, seed, field, version). */
struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::string field;         // scalar field the run used, "q" or "fp:P"
    std::string tool_version;

    struct Check {
        std::string name;
        bool pass = true;
        std::string witness;   // failure detail, or key figures backing a pass
    };
    std::vector<Check> checks;
    double total_ms = 0;

    bool all_pass() const;
};

std::string report_json(const Report& r);

std::string tool_version();

/* Registered suite names, in the order "all" runs them. */
std::vector<std::string> suite_names();

/* Run one named suite over the bundle with the given seed. Deterministic:
 * equal (bundle, suite, seed, field) gives an identical report. Throws
 * std::invalid_argument for an unknown suite name. */
Report run_suite(const PresentationBundle& b, const std::string& suite, std::uint64_t seed);

/* Extension-adjunction checks for one named functor (empty name = identities
 * plus every declared functor, like the "kan" suite); side 0 checks both
 * adjunctions, 1 the left extension only, 2 the right only. Throws
 * std::invalid_argument for an unknown functor name or side. */
Report run_kan(const PresentationBundle& b, const std::string& functor, int side,
               std::uint64_t seed);

}  // namespace dgcat
