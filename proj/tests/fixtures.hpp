// Shared pipeline and random-axiom helpers for the geometry, temporal and
// acceptance tests.
#pragma once

#include "adl/generate.hpp"
#include "adl/geometry.hpp"
#include "adl/reasoner.hpp"
#include "adl/syntax.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fixture {

struct Pipeline {
    adl::Ontology o, ground;
    adl::PlainOntology plain;
    adl::FactBase facts;
    adl::FiniteInterpretation j;
    adl::GeometricInterpretation eta;
};

// Throws Unsatisfiable when the chase clashes.
inline Pipeline build(const adl::Ontology& o, const adl::GroundOptions& opts = {}) {
    Pipeline p;
    p.o = o;
    p.ground = adl::ground_ontology(o, opts);
    p.plain = adl::dllite_translate(p.ground);
    p.facts = adl::saturate(p.plain);
    p.j = adl::finite_model(p.facts);
    p.eta = adl::build_geometric_model(p.j, p.plain);
    return p;
}

inline std::vector<std::string> named(const adl::GeometricInterpretation& eta) {
    std::vector<std::string> out;
    for (const auto& [a, v] : eta.individuals)
        if (a.rfind("_w", 0) != 0) out.push_back(a);
    return out;
}

// Expected Phi: facts of the chase read back through the name table.
inline std::set<std::string> expected_phi(const Pipeline& p) {
    std::set<std::string> out;
    for (const auto& [c, a] : p.facts.concepts) {
        const adl::NameEntry* e = p.plain.lookup(c);
        out.insert(e->name + "@" + adl::print_specifier(e->spec) + "(" + a + ")");
    }
    for (const auto& [r, a, b] : p.facts.roles) {
        const adl::NameEntry* e = p.plain.lookup(r);
        out.insert(e->name + "@" + adl::print_specifier(e->spec) + "(" + a + "," + b + ")");
    }
    return out;
}

template <class T>
const T& pick(adl::Rng& rng, const std::vector<T>& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

// A random ground axiom over the populated keys and named individuals of eta.
inline adl::Axiom random_ground_axiom(adl::Rng& rng, const adl::GeometricInterpretation& eta) {
    std::vector<std::string> concepts, roles;
    for (const auto& [k, r] : eta.concepts) concepts.push_back(k.name + "@" + adl::print_specifier(k.spec));
    for (const auto& [k, r] : eta.roles) roles.push_back(k.name + "@" + adl::print_specifier(k.spec));
    std::vector<std::string> inds = named(eta);
    if (concepts.empty()) concepts.push_back("Z@{}");
    if (roles.empty()) roles.push_back("Q@{}");
    if (inds.empty()) inds.push_back("a");

    auto split = [](const std::string& key) {
        auto at = key.find('@');
        return std::pair{key.substr(0, at), key.substr(at)};
    };
    auto role = [&](bool allow_neg) {
        auto [n, s] = split(pick(rng, roles));
        std::uniform_int_distribution<int> c(0, 3);
        std::string out = (allow_neg && c(rng) == 0 ? "not " : "") + n + (c(rng) == 0 ? "-" : "") + s;
        return out;
    };
    auto basic = [&]() {
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) return "exists " + role(false);
        return pick(rng, concepts);
    };

    std::string text;
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: {
            auto [n, s] = split(pick(rng, concepts));
            text = n + "(" + pick(rng, inds) + ")" + s;
            break;
        }
        case 1: {
            auto [n, s] = split(pick(rng, roles));
            text = n + "(" + pick(rng, inds) + ", " + pick(rng, inds) + ")" + s;
            break;
        }
        case 2:
            text = role(false) + " sub " + role(true);
            break;
        case 3:
            text = basic() + " and " + basic() + " sub bot";
            break;
        default:
            text = basic() + (std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? " and " + basic() : "") +
                   " sub " + basic();
    }
    // assertions need closed specifiers
    if (text.find(" sub ") == std::string::npos) {
        auto dots = text.find("...");
        if (dots != std::string::npos) {
            text.erase(dots, 3);
            auto comma = text.rfind(", ", dots);
            if (comma != std::string::npos && comma + 2 == dots) text.erase(comma, 2);
        }
    }
    return adl::parse_ontology(text).axioms.at(0);
}

// nullopt when the verdict is out of reach (UnsupportedRegionStructure).
inline std::optional<bool> verdict(const adl::GeometricInterpretation& eta, const adl::Axiom& a) {
    try {
        return adl::geometric_satisfies(eta, a);
    } catch (const adl::UnsupportedRegionStructure&) {
        return std::nullopt;
    }
}

}  // namespace fixture
