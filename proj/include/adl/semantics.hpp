#pragma once

#include "adl/ast.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace adl {

using ConceptExt = std::set<std::pair<std::string, AnnSet>>;
using RoleExt = std::set<std::tuple<std::string, std::string, AnnSet>>;

struct FiniteInterpretation {
    std::vector<std::string> individuals;       // Delta_i
    std::vector<Value> annotations;             // Delta_a, ground values
    std::map<std::string, std::string> denote;  // individual name -> element; identity when absent
    std::map<std::string, ConceptExt> concepts;
    std::map<std::string, RoleExt> roles;

    const std::string& element(const std::string& name) const;
    // Fills Delta_a with every value mentioned in the extensions (keeps existing ones).
    void close_annotation_domain();
};

bool operator==(const FiniteInterpretation& a, const FiniteInterpretation& b);

struct Assignment {
    std::map<std::string, AnnSet> sets;
    std::map<std::string, Value> objs;
};

std::string print_assignment(const Assignment& z);

struct SpecValue {
    AnnSet core;
    bool open = false;
    bool contains(const AnnSet& f) const { return open ? is_subset(core, f) : f == core; }
};

SpecValue eval_specifier(const Specifier& s, const Assignment& z);
SpecValue eval_specifier(const Specifier& s, const FiniteInterpretation& i, const Assignment& z);

std::set<std::string> eval_concept(const Basic& b, const FiniteInterpretation& i, const Assignment& z);
std::set<std::string> eval_conjunction(const std::vector<Basic>& bs, const FiniteInterpretation& i,
                                       const Assignment& z);
std::set<std::pair<std::string, std::string>> eval_role(const RoleExpr& r, const FiniteInterpretation& i,
                                                        const Assignment& z);

// Replace variables by their assigned values (the Z-instance of a specifier).
Specifier instantiate(const Specifier& s, const Assignment& z);

// Ranges used when enumerating variable assignments for an inclusion.
struct VarDomain {
    std::vector<Value> names;      // abstract values for object variables
    std::vector<Value> points;     // time points
    std::vector<Value> intervals;  // intervals
    AnnSet pool;                   // pairs that open set variables may add beyond their core
};

// All pairs (a, v) over the given values that respect value types.
AnnSet well_typed_pairs(const std::vector<Value>& values, const std::vector<std::string>& extra_attrs = {});

// Assignments compatible with the prefix of an inclusion. Throws CapExceeded
// when the enumeration would exceed `limit` candidates.
std::vector<Assignment> enumerate_compatible(const Axiom& ax, const VarDomain& dom, std::size_t limit);

struct AxiomCheck {
    std::size_t axiom = 0;
    bool ok = true;
    std::string witness;
};

struct ModelReport {
    std::vector<AxiomCheck> results;
    bool ok() const;
    std::vector<AxiomCheck> failures() const;
};

struct CheckOptions {
    std::size_t cap = 4;  // max annotation elements for exhaustive set-variable enumeration
};

ModelReport check_model(const FiniteInterpretation& i, const Ontology& o, const CheckOptions& opts = {});

std::string write_interpretation(const FiniteInterpretation& i);
FiniteInterpretation read_interpretation(const std::string& text);

}  // namespace adl
