#include "adl/ast.hpp"

#include <algorithm>

namespace adl {

namespace {

std::strong_ordering cmp_mpz(const mpz_class& a, const mpz_class& b) {
    int c = cmp(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace

Value Value::named(std::string n) {
    Value v;
    v.kind = Kind::Name;
    v.name = std::move(n);
    return v;
}

Value Value::var(std::string n) {
    Value v;
    v.kind = Kind::Var;
    v.name = std::move(n);
    return v;
}

Value Value::proj(std::string set_var, std::string attr) {
    Value v;
    v.kind = Kind::Proj;
    v.name = std::move(set_var);
    v.attr = std::move(attr);
    return v;
}

Value Value::time(TimePoint t) {
    Value v;
    v.kind = Kind::Time;
    v.lo = std::move(t);
    return v;
}

Value Value::interval(TimePoint l, TimePoint h) {
    Value v;
    v.kind = Kind::Interval;
    v.lo = std::move(l);
    v.hi = std::move(h);
    return v;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    switch (a.kind) {
        case Value::Kind::Name:
        case Value::Kind::Var:
            return a.name <=> b.name;
        case Value::Kind::Proj:
            if (auto c = a.name <=> b.name; c != 0) return c;
            return a.attr <=> b.attr;
        case Value::Kind::Time:
            return cmp_mpz(a.lo, b.lo);
        case Value::Kind::Interval:
            if (auto c = cmp_mpz(a.lo, b.lo); c != 0) return c;
            return cmp_mpz(a.hi, b.hi);
    }
    return std::strong_ordering::equal;
}

bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Pair& a, const Pair& b) {
    if (auto c = a.attr <=> b.attr; c != 0) return c;
    return a.val <=> b.val;
}

bool operator==(const Pair& a, const Pair& b) { return (a <=> b) == 0; }

void canonicalize(AnnSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool is_subset(const AnnSet& small, const AnnSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Specifier Specifier::closed(std::vector<Pair> p) {
    Specifier s;
    s.kind = Kind::Closed;
    s.pairs = std::move(p);
    return s;
}

Specifier Specifier::open(std::vector<Pair> p) {
    Specifier s;
    s.kind = Kind::Open;
    s.pairs = std::move(p);
    return s;
}

Specifier Specifier::set_var(std::string x) {
    Specifier s;
    s.kind = Kind::Var;
    s.var = std::move(x);
    return s;
}

bool Specifier::ground() const {
    if (kind == Kind::Var) return false;
    return std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return p.val.ground(); });
}

std::strong_ordering operator<=>(const Specifier& a, const Specifier& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.var <=> b.var; c != 0) return c;
    return std::lexicographical_compare_three_way(a.pairs.begin(), a.pairs.end(), b.pairs.begin(),
                                                  b.pairs.end());
}

bool operator==(const Specifier& a, const Specifier& b) { return (a <=> b) == 0; }

Specifier canonical(Specifier s) {
    canonicalize(s.pairs);
    return s;
}

bool operator==(const RoleExpr& a, const RoleExpr& b) {
    return a.name == b.name && a.inverse == b.inverse && a.negated == b.negated && a.spec == b.spec;
}

bool operator==(const Basic& a, const Basic& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Basic::Kind::Atomic) return a.name == b.name && a.spec == b.spec;
    return a.role == b.role;
}

bool operator==(const Axiom& a, const Axiom& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Axiom::Kind::ConceptAssertion:
            return a.name == b.name && a.a == b.a && a.spec == b.spec;
        case Axiom::Kind::RoleAssertion:
            return a.name == b.name && a.a == b.a && a.b == b.b && a.spec == b.spec;
        case Axiom::Kind::ConceptInclusion:
            return a.prefix == b.prefix && a.lhs == b.lhs && a.rhs_bot == b.rhs_bot &&
                   (a.rhs_bot || a.rhs == b.rhs);
        case Axiom::Kind::RoleInclusion:
            return a.prefix == b.prefix && a.rlhs == b.rlhs && a.rrhs == b.rrhs;
    }
    return false;
}

bool operator==(const Ontology& a, const Ontology& b) { return a.axioms == b.axioms; }

bool is_temporal_attr(const std::string& a) {
    return a == "time" || a == "before" || a == "after" || a == "until" || a == "since" ||
           a == "during" || a == "between";
}

bool takes_interval(const std::string& a) { return a == "during" || a == "between"; }

bool has_temporal_pair(const Specifier& s) {
    return std::any_of(s.pairs.begin(), s.pairs.end(),
                       [](const Pair& p) { return is_temporal_attr(p.attr); });
}

namespace {

void note_spec(const Specifier& s, bool& temporal) {
    if (has_temporal_pair(s)) temporal = true;
}

void note_role(const RoleExpr& r, Ontology& o) {
    o.role_names.insert(r.name);
    note_spec(r.spec, o.temporal);
}

void note_basic(const Basic& b, Ontology& o) {
    if (b.kind == Basic::Kind::Atomic) {
        o.concept_names.insert(b.name);
        note_spec(b.spec, o.temporal);
    } else {
        note_role(b.role, o);
    }
}

}  // namespace

void recompute_flags(Ontology& o) {
    o.temporal = false;
    o.role_names.clear();
    o.concept_names.clear();
    for (const auto& ax : o.axioms) {
        for (const auto& [x, s] : ax.prefix) note_spec(s, o.temporal);
        switch (ax.kind) {
            case Axiom::Kind::ConceptAssertion:
                o.concept_names.insert(ax.name);
                note_spec(ax.spec, o.temporal);
                break;
            case Axiom::Kind::RoleAssertion:
                o.role_names.insert(ax.name);
                note_spec(ax.spec, o.temporal);
                break;
            case Axiom::Kind::ConceptInclusion:
                for (const auto& b : ax.lhs) note_basic(b, o);
                if (!ax.rhs_bot) note_basic(ax.rhs, o);
                break;
            case Axiom::Kind::RoleInclusion:
                note_role(ax.rlhs, o);
                note_role(ax.rrhs, o);
                break;
        }
    }
}

SyntaxError::SyntaxError(SourcePos p, const std::string& msg, std::vector<std::string> exp)
    : AdlError(msg), pos(p), expected(std::move(exp)) {}

TypeError::TypeError(SourcePos p, const std::string& msg) : AdlError(msg), pos(p) {}

}  // namespace adl
