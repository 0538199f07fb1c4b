#pragma once

#include "adl/grounding.hpp"
#include "adl/semantics.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adl {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> a;  // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static Matrix identity(std::size_t n);

    Rational& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Matrix columns(std::size_t from, std::size_t count) const;
    Vec apply(const Vec& v) const;
};

bool operator==(const Matrix& x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);

std::size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

// f : R^m x R^m -> R^2m as a 2m x 2m matrix acting on u ++ v.
struct LinearMap {
    std::size_t m = 0;
    Matrix mat;
    std::optional<Matrix> inv;

    LinearMap() = default;
    LinearMap(std::size_t m, Matrix mat);
    static LinearMap concatenation(std::size_t m);
    static LinearMap swap_halves(std::size_t m);

    Vec apply(const Vec& u, const Vec& v) const;
    // f^-1 split into its two halves; needs the inverse.
    std::pair<Vec, Vec> unapply(const Vec& w) const;
};

bool operator==(const LinearMap& x, const LinearMap& y);

// Each half injective, images meet only in 0.
bool validate_linear_map(const LinearMap& f);

struct Region {
    std::size_t dim = 0;
    std::vector<Vec> gens;  // convex hull of these; sorted, unique
    bool one_hot = false;   // every generator is a standard basis vector

    Region() = default;
    Region(std::size_t dim, std::vector<Vec> gens);
    bool empty() const { return gens.empty(); }
};

bool operator==(const Region& x, const Region& y);

bool is_basis_vector(const Vec& v);
Vec unit_vector(std::size_t dim, std::size_t k);
Vec midpoint(const Vec& x, const Vec& y);

bool contains_point(const Region& r, const Vec& p);
bool regions_disjoint(const Region& r1, const Region& r2);
// Exact on one-hot regions, LP-backed generator membership otherwise.
bool region_subset(const Region& inner, const Region& outer);
Region intersect_one_hot(const std::vector<Region>& rs);

struct RegionKey {
    std::string name;
    Specifier spec;
    auto operator<=>(const RegionKey& o) const {
        if (auto c = name <=> o.name; c != 0) return c;
        return spec <=> o.spec;
    }
    bool operator==(const RegionKey& o) const = default;
};

struct GeometricInterpretation {
    std::size_t m = 1;
    LinearMap f;
    std::map<std::string, Vec> individuals;
    std::map<RegionKey, Region> concepts;
    std::map<RegionKey, Region> roles;

    const Vec& vec(const std::string& a) const;
    Region concept_region(const std::string& name, const Specifier& s) const;
    Region role_region(const RoleExpr& r) const;   // inverse handled, negation ignored
    Region basic_region(const Basic& b) const;     // A@S or the exists projection
};

bool operator==(const GeometricInterpretation& x, const GeometricInterpretation& y);

// Satisfaction of a ground axiom. Throws UnsupportedRegionStructure for
// multi-conjunct inclusions over regions that are not one-hot.
bool geometric_satisfies(const GeometricInterpretation& eta, const Axiom& a);

// m = max(1, |individuals|), one-hot vectors, one region per name-table entry.
GeometricInterpretation build_geometric_model(const FiniteInterpretation& j, const PlainOntology& p,
                                              const LinearMap& f);
GeometricInterpretation build_geometric_model(const FiniteInterpretation& j, const PlainOntology& p);

// Evaluate a ground axiom in the induced interpretation I(eta, D*) at probes.
struct InducedResult {
    bool violated = false;
    Vec witness;
    std::string detail;
};

struct ProbeSet {
    std::vector<Vec> points;  // in R^m
    std::vector<Vec> pairs;   // in R^2m, already f-images
};

ProbeSet default_probes(const GeometricInterpretation& eta);

InducedResult induced_check(const GeometricInterpretation& eta, const std::set<std::string>& d, const std::string& star,
                            const Axiom& a, const ProbeSet& probes);
InducedResult induced_check(const GeometricInterpretation& eta, const std::set<std::string>& d, const Axiom& a);

GeometricInterpretation transport_model(const GeometricInterpretation& eta, const LinearMap& f2);

struct GeoFailure {
    std::string axiom;
    std::string message;
};

struct GeoReport {
    std::vector<GeoFailure> failures;
    std::size_t checked = 0;
    bool ok() const { return failures.empty(); }
};

// Every axiom of a ground ontology plus the monotonicity side conditions.
GeoReport verify_ground(const GeometricInterpretation& eta, const Ontology& ground);
GeoReport verify_geometric_model(const GeometricInterpretation& eta, const Ontology& o, const GroundOptions& opts = {});

// Facts E(t)@S that hold at named tuples for the given keys (Phi of eta).
std::set<std::string> phi_facts(const GeometricInterpretation& eta, const std::vector<std::string>& names);

// ---- convexity probes ------------------------------------------------------

struct ProbeDiagnostic {
    std::string point;                // label of the probe point, e.g. "mid(a,b)"
    Vec coords;
    std::string violated;             // the violated axiom
    std::vector<std::string> chain;   // derivation, one step per line
};

std::vector<ProbeDiagnostic> midpoint_probe(const GeometricInterpretation& eta, const Ontology& o,
                                            const std::vector<RoleConjunction>& extra = {});

// One-hot embedding of the assertions only, time treated as an opaque annotation.
GeometricInterpretation naive_embedding(const Ontology& o, const LinearMap& f);
GeometricInterpretation naive_embedding(const Ontology& o);

// ---- serialization ---------------------------------------------------------

std::string export_json(const GeometricInterpretation& eta);
GeometricInterpretation import_json(const std::string& text);
std::string export_text(const GeometricInterpretation& eta);
GeometricInterpretation import_text(const std::string& text);
// Picks the format from the first non-space character.
GeometricInterpretation import_model(const std::string& text);

LinearMap parse_map(const std::string& text);  // rows of rationals, whitespace separated

std::string print_rational(const Rational& q);  // always "p/q"
Rational parse_rational(const std::string& s);
std::string print_vec(const Vec& v);

}  // namespace adl
