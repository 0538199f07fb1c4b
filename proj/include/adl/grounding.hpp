#pragma once

#include "adl/ast.hpp"
#include "adl/semantics.hpp"

#include <map>
#include <string>
#include <vector>

namespace adl {

// N_O: annotation names occurring in an ontology, plus time points and
// intervals when the ontology is temporal.
struct AnnotationDomain {
    std::vector<Value> values;  // sorted, unique

    std::vector<Value> names() const;
    std::vector<Value> points() const;
    std::vector<Value> intervals() const;
    std::size_t size() const { return values.size(); }
};

AnnotationDomain annotation_domain(const Ontology& o);

enum class GroundMode { Exhaustive, Pairs };

struct GroundOptions {
    GroundMode mode = GroundMode::Pairs;
    std::size_t cap = 4;             // max |dom| for exhaustive set-variable enumeration
    std::size_t limit = 1u << 20;    // max assignments explored per inclusion
};

// Ground pairs appearing anywhere in the ontology's specifiers.
AnnSet occurring_pairs(const Ontology& o);

std::vector<Assignment> enumerate_assignments(const Axiom& ax, const AnnotationDomain& dom, const AnnSet& occurring,
                                              const GroundOptions& opts = {});

// The Z-instance of an inclusion: prefix dropped, set variables replaced by
// closed specifiers, projections and object variables expanded.
Axiom instantiate_axiom(const Axiom& ax, const Assignment& z);

// Assertions plus every Z-instance of every inclusion, deduplicated in
// input order.
Ontology ground_ontology(const Ontology& o, const GroundOptions& opts = {});
Ontology ground_ontology(const Ontology& o, const AnnotationDomain& dom, const GroundOptions& opts = {});

// ---- plain DL-Lite^H_horn ----------------------------------------------

struct PlainBasic {
    bool exists = false;  // false: concept name; true: exists role
    std::string name;
    bool inverse = false;
};

struct PlainRole {
    std::string name;
    bool inverse = false;
    bool negated = false;
};

struct PlainAxiom {
    enum class Kind { ConceptAssertion, RoleAssertion, ConceptInclusion, RoleInclusion };
    Kind kind = Kind::ConceptAssertion;
    std::string name, a, b;
    std::vector<PlainBasic> lhs;
    bool rhs_bot = false;
    PlainBasic rhs;
    PlainRole rlhs, rrhs;
};

struct NameEntry {
    std::string fresh;
    std::string name;
    Specifier spec;  // canonical ground specifier
    bool role = false;
};

struct PlainOntology {
    std::vector<PlainAxiom> axioms;
    std::vector<NameEntry> names;                  // sorted by fresh name
    std::map<std::string, std::size_t> by_fresh;   // fresh -> index into names

    const NameEntry* lookup(const std::string& fresh) const;
    bool has_negative_role_inclusion() const;
};

// "Name_<16 hex digits>", a stable hash of the name and the canonical specifier.
std::string fresh_name(const std::string& name, const Specifier& spec);

PlainOntology dllite_translate(const Ontology& ground);

// Every translated inclusion, read as a rule, has body atoms sharing at
// most one variable with the atoms before them.
bool quasi_chained(const PlainOntology& p);

// Plain axioms as an attributed ontology: inclusions use open {}, assertions closed {}.
Ontology to_ontology(const PlainOntology& p);

std::string print_plain(const PlainOntology& p);
std::string print_name_table(const PlainOntology& p);

}  // namespace adl
