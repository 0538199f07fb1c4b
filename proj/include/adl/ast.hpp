#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace adl {

// Time points are unbounded naturals.
using TimePoint = mpz_class;

struct Value {
    enum class Kind { Name, Var, Proj, Time, Interval };
    Kind kind = Kind::Name;
    std::string name;  // annotation name, variable name, or projected set variable
    std::string attr;  // projected attribute for X.a
    TimePoint lo, hi;  // Time uses lo; Interval uses [lo, hi]

    static Value named(std::string n);
    static Value var(std::string n);
    static Value proj(std::string set_var, std::string attr);
    static Value time(TimePoint t);
    static Value interval(TimePoint l, TimePoint h);

    bool ground() const { return kind == Kind::Name || kind == Kind::Time || kind == Kind::Interval; }
};

std::strong_ordering operator<=>(const Value& a, const Value& b);
bool operator==(const Value& a, const Value& b);

struct Pair {
    std::string attr;
    Value val;
};

std::strong_ordering operator<=>(const Pair& a, const Pair& b);
bool operator==(const Pair& a, const Pair& b);

// A finite binary relation over annotation elements, kept sorted and unique.
using AnnSet = std::vector<Pair>;
void canonicalize(AnnSet& s);
bool is_subset(const AnnSet& small, const AnnSet& big);

struct Specifier {
    enum class Kind { Closed, Open, Var };
    Kind kind = Kind::Open;
    std::string var;
    std::vector<Pair> pairs;

    static Specifier closed(std::vector<Pair> p);
    static Specifier open(std::vector<Pair> p = {});
    static Specifier set_var(std::string x);

    bool is_open() const { return kind == Kind::Open; }
    bool ground() const;
};

std::strong_ordering operator<=>(const Specifier& a, const Specifier& b);
bool operator==(const Specifier& a, const Specifier& b);

// Sorted, deduplicated pairs; variables untouched.
Specifier canonical(Specifier s);

struct RoleExpr {
    std::string name;
    bool inverse = false;
    bool negated = false;
    Specifier spec;
};

bool operator==(const RoleExpr& a, const RoleExpr& b);

struct Basic {
    enum class Kind { Atomic, Exists };
    Kind kind = Kind::Atomic;
    std::string name;  // concept name when Atomic
    Specifier spec;    // concept specifier when Atomic
    RoleExpr role;     // when Exists
};

bool operator==(const Basic& a, const Basic& b);

struct SourcePos {
    int line = 0;
    int col = 0;
};

struct Axiom {
    enum class Kind { ConceptAssertion, RoleAssertion, ConceptInclusion, RoleInclusion };
    Kind kind = Kind::ConceptAssertion;

    // assertions
    std::string name;
    std::string a, b;
    Specifier spec;

    // inclusions
    std::vector<std::pair<std::string, Specifier>> prefix;
    std::vector<Basic> lhs;
    bool rhs_bot = false;
    Basic rhs;
    RoleExpr rlhs, rrhs;

    SourcePos pos;

    bool is_assertion() const { return kind == Kind::ConceptAssertion || kind == Kind::RoleAssertion; }
    bool is_inclusion() const { return !is_assertion(); }
};

bool operator==(const Axiom& a, const Axiom& b);

struct Ontology {
    std::vector<Axiom> axioms;
    bool temporal = false;
    std::set<std::string> role_names;
    std::set<std::string> concept_names;
};

bool operator==(const Ontology& a, const Ontology& b);

// Role conjunction R1 and ... and Rn sub R, used only for diagnostics.
struct RoleConjunction {
    std::vector<RoleExpr> body;
    RoleExpr head;
};

// ---- temporal attribute vocabulary -------------------------------------

bool is_temporal_attr(const std::string& a);
// valtype: true when the attribute takes an interval, false for a time point
bool takes_interval(const std::string& a);

bool has_temporal_pair(const Specifier& s);
void recompute_flags(Ontology& o);

// ---- errors ------------------------------------------------------------

struct AdlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : AdlError {
    SourcePos pos;
    std::vector<std::string> expected;
    SyntaxError(SourcePos p, const std::string& msg, std::vector<std::string> exp = {});
};

struct TypeError : AdlError {
    SourcePos pos;
    TypeError(SourcePos p, const std::string& msg);
};

struct NonGroundSpecifier : AdlError {
    using AdlError::AdlError;
};
struct UnboundVariable : AdlError {
    using AdlError::AdlError;
};
struct CapExceeded : AdlError {
    using AdlError::AdlError;
};
struct Unsatisfiable : AdlError {
    using AdlError::AdlError;
};
struct DimensionMismatch : AdlError {
    using AdlError::AdlError;
};
struct UnvalidatedMap : AdlError {
    using AdlError::AdlError;
};
struct NegativeRoleInclusionPresent : AdlError {
    using AdlError::AdlError;
};
struct UnsupportedRegionStructure : AdlError {
    using AdlError::AdlError;
};
struct StarCollision : AdlError {
    using AdlError::AdlError;
};
struct UnsupportedAttribute : AdlError {
    using AdlError::AdlError;
};
struct RestrictionViolated : AdlError {
    using AdlError::AdlError;
};
struct IoError : AdlError {
    using AdlError::AdlError;
};

}  // namespace adl
