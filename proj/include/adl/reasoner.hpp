#pragma once

#include "adl/grounding.hpp"
#include "adl/semantics.hpp"

#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace adl {

struct FactBase {
    std::set<std::pair<std::string, std::string>> concepts;          // (name, individual)
    std::set<std::tuple<std::string, std::string, std::string>> roles;  // (name, from, to)
    std::vector<std::string> individuals;                             // named first, then witnesses
    bool unsat = false;
    std::string clash;  // human-readable reason when unsat

    std::string to_facts() const;
};

FactBase saturate(const PlainOntology& p);

bool is_satisfiable(const Ontology& o, const GroundOptions& opts = {});

// Self-named model read off the saturated fact base; annotation sets are empty
// because the plain vocabulary carries none. Throws Unsatisfiable.
FiniteInterpretation finite_model(const PlainOntology& p);
FiniteInterpretation finite_model(const FactBase& fb);

}  // namespace adl
