#pragma once

#include "adl/ast.hpp"
#include "adl/geometry.hpp"

#include <random>
#include <string>

namespace adl {

using Rng = std::mt19937_64;

struct GenOptions {
    std::size_t individuals = 4;
    std::size_t concept_names = 3;
    std::size_t role_names = 2;
    std::size_t inclusions = 5;
    std::size_t assertions = 5;
    std::size_t annotation_names = 3;  // attributes and values together
    bool negative_roles = false;
    bool bottom = true;
    bool set_vars = true;
};

// Random non-temporal ontology, returned as source text so failures can be
// replayed through the parser.
std::string random_ontology_text(Rng& rng, const GenOptions& opts = {});
Ontology random_ontology(Rng& rng, const GenOptions& opts = {});

struct TemporalGenOptions {
    std::size_t individuals = 3;
    std::size_t concept_names = 3;
    std::size_t role_names = 1;
    std::size_t inclusions = 4;
    std::size_t assertions = 4;
    unsigned max_constant = 4;
    bool open_specs = true;
};

std::string random_temporal_text(Rng& rng, const TemporalGenOptions& opts = {});
Ontology random_temporal(Rng& rng, const TemporalGenOptions& opts = {});

// Random temporal pair over constants 0..max_constant.
Pair random_temporal_pair(Rng& rng, unsigned max_constant);

// 2m x 2m integer matrix; singular ones have rank below 2m.
Matrix random_matrix(Rng& rng, std::size_t m, bool singular);
LinearMap random_map(Rng& rng, std::size_t m);

}  // namespace adl
