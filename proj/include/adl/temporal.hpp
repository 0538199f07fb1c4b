#pragma once

#include "adl/geometry.hpp"
#include "adl/grounding.hpp"

#include <map>
#include <string>
#include <vector>

namespace adl {

struct TemporalBounds {
    TimePoint kmin = 0, kmax = 0;
    // truncated temporal domain [max(kmin-1, 0), kmax+1]
    TimePoint lo() const;
    TimePoint hi() const;
    std::vector<TimePoint> domain() const;
};

// Smallest and largest numbers in the ontology, interval endpoints included.
TemporalBounds temporal_bounds(const Ontology& o);

struct RestrictionViolation {
    std::size_t axiom = 0;
    enum class Kind { TemporalRoleSpecifier, ForbiddenAttribute } kind;
    std::string message;
};

struct RestrictionReport {
    std::vector<RestrictionViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Roles carry atemporal specifiers, and before, after and between do not occur.
RestrictionReport check_temporal_restrictions(const Ontology& o);

// Does A(e)@{p1} entail A(e)@{p2} over the truncated domain? Attributes are
// time, during, since and until; others throw UnsupportedAttribute.
bool temporal_implies(const Pair& p1, const Pair& p2, const TemporalBounds& b);

// Specifier with every temporal pair removed, kind kept.
Specifier strip_temporal(const Specifier& s);
// S(a:b): temporal pairs of s replaced by the single pair p.
Specifier with_temporal(const Specifier& s, const Pair& p);

// The conjunction (A@S(a:b))# for one temporal pair.
std::vector<Basic> sharp_expand(const std::string& concept_name, const Specifier& s, const Pair& p,
                                const TemporalBounds& b);
// Conjunction over all temporal pairs of s.
std::vector<Basic> sharp_conjuncts(const std::string& concept_name, const Specifier& s, const TemporalBounds& b);

// S => T between ground specifiers carrying temporal pairs.
bool temporal_spec_implies(const Specifier& s, const Specifier& t, const TemporalBounds& b);

struct TemporalOptions {
    GroundOptions ground;
    bool check_restrictions = true;
    std::size_t cap = 64;  // larger default: the temporal domain is part of the grounding domain
};

struct TemporalTranslation {
    TemporalBounds bounds;
    AnnotationDomain domain;  // grounding domain: names, fresh name, points, intervals
    Ontology grounded;        // O_g over the temporal domain
    Ontology dagger;          // O_g plus the # equivalences and S => T inclusions
};

TemporalTranslation temporal_translate(const Ontology& o, const TemporalOptions& opts = {});

struct TemporalModelBundle {
    TemporalBounds bounds;
    GeometricInterpretation global;
    std::map<TimePoint, GeometricInterpretation> at;  // one per point of the truncated domain
};

bool operator==(const TemporalModelBundle& x, const TemporalModelBundle& y);

struct TemporalBuild {
    TemporalTranslation translation;
    PlainOntology plain;
    GeometricInterpretation base;  // the convex model of the dagger ontology
    TemporalModelBundle bundle;
};

TemporalBuild build_temporal(const Ontology& o, const TemporalOptions& opts = {});
TemporalModelBundle build_temporal_model(const Ontology& o, const TemporalOptions& opts = {});

struct GlobalViolation {
    std::string point;
    std::string attribute;
    std::string time;
    std::string message;
};

struct GlobalReport {
    std::vector<GlobalViolation> violations;
    std::size_t checked = 0;
    bool ok() const { return violations.empty(); }
};

GlobalReport check_global(const TemporalModelBundle& bundle, const std::set<std::string>& d = {});

std::string export_bundle_json(const TemporalModelBundle& b);
TemporalModelBundle import_bundle_json(const std::string& text);
std::string export_bundle_text(const TemporalModelBundle& b);
TemporalModelBundle import_bundle_text(const std::string& text);
// Picks the format from the first non-space character.
TemporalModelBundle import_bundle(const std::string& text);

}  // namespace adl
