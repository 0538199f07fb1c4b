#include "adl/geometry.hpp"

#include "adl/syntax.hpp"

#include <algorithm>

namespace adl {

const Vec& GeometricInterpretation::vec(const std::string& a) const {
    auto it = individuals.find(a);
    if (it == individuals.end()) throw UnboundVariable("individual " + a + " has no vector");
    return it->second;
}

Region GeometricInterpretation::concept_region(const std::string& name, const Specifier& s) const {
    auto it = concepts.find({name, canonical(s)});
    return it == concepts.end() ? Region(m, {}) : it->second;
}

namespace {

Vec swap_pair(const LinearMap& f, const Vec& w) {
    auto [u, v] = f.unapply(w);
    return f.apply(v, u);
}

Region project_first(const LinearMap& f, const Region& r) {
    std::vector<Vec> out;
    for (const auto& g : r.gens) out.push_back(f.unapply(g).first);
    return Region(f.m, std::move(out));
}

}  // namespace

Region GeometricInterpretation::role_region(const RoleExpr& r) const {
    auto it = roles.find({r.name, canonical(r.spec)});
    if (it == roles.end()) return Region(2 * m, {});
    if (!r.inverse) return it->second;
    std::vector<Vec> out;
    for (const auto& g : it->second.gens) out.push_back(swap_pair(f, g));
    return Region(2 * m, std::move(out));
}

Region GeometricInterpretation::basic_region(const Basic& b) const {
    if (b.kind == Basic::Kind::Atomic) return concept_region(b.name, b.spec);
    RoleExpr r = b.role;
    r.negated = false;
    return project_first(f, role_region(r));
}

bool operator==(const GeometricInterpretation& x, const GeometricInterpretation& y) {
    return x.m == y.m && x.f == y.f && x.individuals == y.individuals && x.concepts == y.concepts && x.roles == y.roles;
}

bool geometric_satisfies(const GeometricInterpretation& eta, const Axiom& a) {
    switch (a.kind) {
        case Axiom::Kind::ConceptAssertion:
            return contains_point(eta.concept_region(a.name, a.spec), eta.vec(a.a));
        case Axiom::Kind::RoleAssertion: {
            RoleExpr r{a.name, false, false, a.spec};
            return contains_point(eta.role_region(r), eta.f.apply(eta.vec(a.a), eta.vec(a.b)));
        }
        case Axiom::Kind::RoleInclusion: {
            Region lhs = eta.role_region(a.rlhs);
            RoleExpr q = a.rrhs;
            q.negated = false;
            Region rhs = eta.role_region(q);
            if (a.rrhs.negated) return regions_disjoint(lhs, rhs);
            return region_subset(lhs, rhs);
        }
        case Axiom::Kind::ConceptInclusion: {
            std::vector<Region> parts;
            for (const auto& b : a.lhs) {
                parts.push_back(eta.basic_region(b));
                if (parts.back().empty()) return true;
            }
            if (parts.size() == 1) {
                if (a.rhs_bot) return false;
                return region_subset(parts[0], eta.basic_region(a.rhs));
            }
            bool one_hot = std::all_of(parts.begin(), parts.end(), [](const Region& r) { return r.one_hot; });
            if (!one_hot) {
                if (a.rhs_bot && parts.size() == 2) return regions_disjoint(parts[0], parts[1]);
                throw UnsupportedRegionStructure("multi-conjunct inclusion over regions that are not one-hot: " +
                                                 print_axiom(a));
            }
            // Hulls of subsets of an affinely independent family meet in the
            // hull of the common generators.
            Region meet = intersect_one_hot(parts);
            if (a.rhs_bot) return meet.empty();
            return region_subset(meet, eta.basic_region(a.rhs));
        }
    }
    return false;
}

GeometricInterpretation build_geometric_model(const FiniteInterpretation& j, const PlainOntology& p,
                                              const LinearMap& f) {
    if (p.has_negative_role_inclusion())
        throw NegativeRoleInclusionPresent("convex model construction excludes negative role inclusions");
    GeometricInterpretation eta;
    eta.m = std::max<std::size_t>(1, j.individuals.size());
    if (f.m != eta.m)
        throw DimensionMismatch("linear map has m=" + std::to_string(f.m) + ", model needs m=" + std::to_string(eta.m));
    if (!validate_linear_map(f)) throw UnvalidatedMap("linear map is not injective on each half with independent images");
    eta.f = f;
    std::vector<std::string> inds = j.individuals;
    std::sort(inds.begin(), inds.end());
    for (std::size_t k = 0; k < inds.size(); ++k) eta.individuals[inds[k]] = unit_vector(eta.m, k);
    for (const auto& e : p.names) {
        std::vector<Vec> gens;
        if (e.role) {
            auto it = j.roles.find(e.fresh);
            if (it != j.roles.end())
                for (const auto& [d, x, F] : it->second) gens.push_back(f.apply(eta.vec(d), eta.vec(x)));
            eta.roles[{e.name, e.spec}] = Region(2 * eta.m, std::move(gens));
        } else {
            auto it = j.concepts.find(e.fresh);
            if (it != j.concepts.end())
                for (const auto& [d, F] : it->second) gens.push_back(eta.vec(d));
            eta.concepts[{e.name, e.spec}] = Region(eta.m, std::move(gens));
        }
    }
    return eta;
}

GeometricInterpretation build_geometric_model(const FiniteInterpretation& j, const PlainOntology& p) {
    return build_geometric_model(j, p, LinearMap::concatenation(std::max<std::size_t>(1, j.individuals.size())));
}

// ---- induced interpretation ------------------------------------------------

namespace {

bool built_on(const Specifier& s, const std::set<std::string>& d) {
    for (const auto& p : s.pairs) {
        if (!is_temporal_attr(p.attr) && !d.count(p.attr)) return false;
        if (p.val.kind == Value::Kind::Name && !d.count(p.val.name)) return false;
    }
    return true;
}

// F*_T belongs to S^{I,Z}: closed S needs the same closed T, open S needs pairs(T) >= pairs(S).
bool star_matches(const Specifier& populated, const Specifier& s) {
    if (s.is_open()) return is_subset(canonical(s).pairs, populated.pairs);
    return !populated.is_open() && populated.pairs == canonical(s).pairs;
}

struct Induced {
    const GeometricInterpretation& eta;
    const std::set<std::string>& d;

    bool concept_member(const std::string& name, const Specifier& s, const Vec& x) const {
        for (auto it = eta.concepts.lower_bound({name, Specifier::closed({})});
             it != eta.concepts.end() && it->first.name == name; ++it)
            if (built_on(it->first.spec, d) && star_matches(it->first.spec, s) && contains_point(it->second, x))
                return true;
        return false;
    }

    // w is f(x, y) for the pair being tested.
    bool role_member(const RoleExpr& r, const Vec& w) const {
        Vec v = r.inverse ? swap_pair(eta.f, w) : w;
        bool in = false;
        for (auto it = eta.roles.lower_bound({r.name, Specifier::closed({})});
             it != eta.roles.end() && it->first.name == r.name && !in; ++it)
            if (built_on(it->first.spec, d) && star_matches(it->first.spec, r.spec) && contains_point(it->second, v))
                in = true;
        return r.negated ? !in : in;
    }

    bool exists_member(const RoleExpr& r, const Vec& x) const {
        for (auto it = eta.roles.lower_bound({r.name, Specifier::closed({})});
             it != eta.roles.end() && it->first.name == r.name; ++it) {
            if (!built_on(it->first.spec, d) || !star_matches(it->first.spec, r.spec)) continue;
            RoleExpr exact{r.name, r.inverse, false, it->first.spec};
            if (contains_point(project_first(eta.f, eta.role_region(exact)), x)) return true;
        }
        return false;
    }

    bool basic_member(const Basic& b, const Vec& x) const {
        return b.kind == Basic::Kind::Atomic ? concept_member(b.name, b.spec, x) : exists_member(b.role, x);
    }
};

}  // namespace

ProbeSet default_probes(const GeometricInterpretation& eta) {
    std::set<Vec> pts, prs;
    for (const auto& [n, v] : eta.individuals) pts.insert(v);
    for (const auto& [k, r] : eta.concepts)
        for (std::size_t i = 0; i < r.gens.size(); ++i) {
            pts.insert(r.gens[i]);
            for (std::size_t j = i + 1; j < r.gens.size(); ++j) pts.insert(midpoint(r.gens[i], r.gens[j]));
        }
    for (const auto& [k, r] : eta.roles)
        for (std::size_t i = 0; i < r.gens.size(); ++i) {
            prs.insert(r.gens[i]);
            auto [u, v] = eta.f.unapply(r.gens[i]);
            pts.insert(u);
            pts.insert(v);
            for (std::size_t j = i + 1; j < r.gens.size(); ++j) prs.insert(midpoint(r.gens[i], r.gens[j]));
        }
    for (const auto& [n1, v1] : eta.individuals)
        for (const auto& [n2, v2] : eta.individuals) prs.insert(eta.f.apply(v1, v2));
    return {std::vector<Vec>(pts.begin(), pts.end()), std::vector<Vec>(prs.begin(), prs.end())};
}

InducedResult induced_check(const GeometricInterpretation& eta, const std::set<std::string>& d, const std::string& star,
                            const Axiom& a, const ProbeSet& probes) {
    if (d.count(star)) throw StarCollision("reserved name " + star + " occurs in the annotation names");
    Induced in{eta, d};
    InducedResult res;
    auto violated = [&](const Vec& w, std::string detail) {
        res.violated = true;
        res.witness = w;
        res.detail = std::move(detail);
        return res;
    };
    switch (a.kind) {
        case Axiom::Kind::ConceptAssertion:
            if (!in.concept_member(a.name, a.spec, eta.vec(a.a)))
                return violated(eta.vec(a.a), a.a + " is not in " + a.name + "@" + print_specifier(a.spec));
            return res;
        case Axiom::Kind::RoleAssertion: {
            Vec w = eta.f.apply(eta.vec(a.a), eta.vec(a.b));
            if (!in.role_member({a.name, false, false, a.spec}, w))
                return violated(w, "(" + a.a + "," + a.b + ") is not in " + a.name + "@" + print_specifier(a.spec));
            return res;
        }
        case Axiom::Kind::ConceptInclusion:
            for (const auto& x : probes.points) {
                bool body = std::all_of(a.lhs.begin(), a.lhs.end(), [&](const Basic& b) { return in.basic_member(b, x); });
                if (!body) continue;
                if (a.rhs_bot) return violated(x, "point satisfies every conjunct of an inclusion into bot");
                if (!in.basic_member(a.rhs, x)) return violated(x, "point is in the left side but not the right side");
            }
            return res;
        case Axiom::Kind::RoleInclusion:
            for (const auto& w : probes.pairs) {
                if (!in.role_member(a.rlhs, w)) continue;
                if (!in.role_member(a.rrhs, w)) return violated(w, "pair is in the left role but not the right one");
            }
            return res;
    }
    return res;
}

InducedResult induced_check(const GeometricInterpretation& eta, const std::set<std::string>& d, const Axiom& a) {
    return induced_check(eta, d, "__star__", a, default_probes(eta));
}

GeometricInterpretation transport_model(const GeometricInterpretation& eta, const LinearMap& f2) {
    if (f2.m != eta.m) throw DimensionMismatch("transport needs a map with the same m");
    if (!validate_linear_map(f2)) throw UnvalidatedMap("target linear map is not injective on each half with independent images");
    if (!eta.f.inv) throw UnvalidatedMap("source linear map is not invertible");
    Matrix h = f2.mat * *eta.f.inv;
    GeometricInterpretation out = eta;
    out.f = f2;
    for (auto& [k, r] : out.roles) {
        std::vector<Vec> gens;
        for (const auto& g : r.gens) gens.push_back(h.apply(g));
        r = Region(r.dim, std::move(gens));
    }
    return out;
}

GeoReport verify_ground(const GeometricInterpretation& eta, const Ontology& ground) {
    GeoReport rep;
    for (const auto& ax : ground.axioms) {
        ++rep.checked;
        if (ax.is_assertion()) {
            std::string missing = !eta.individuals.count(ax.a) ? ax.a
                                  : ax.kind == Axiom::Kind::RoleAssertion && !eta.individuals.count(ax.b) ? ax.b
                                                                                                          : "";
            if (!missing.empty()) {
                rep.failures.push_back({print_axiom(ax), "individual " + missing + " has no vector"});
                continue;
            }
        }
        try {
            if (!geometric_satisfies(eta, ax)) rep.failures.push_back({print_axiom(ax), "not satisfied"});
        } catch (const UnsupportedRegionStructure& e) {
            rep.failures.push_back({print_axiom(ax), e.what()});
        }
    }
    auto monotone = [&](const std::map<RegionKey, Region>& regions, const char* kind) {
        for (auto s = regions.begin(); s != regions.end(); ++s)
            for (auto t = regions.lower_bound({s->first.name, Specifier::closed({})});
                 t != regions.end() && t->first.name == s->first.name; ++t) {
                if (s == t || s->second.empty() || !specifier_implies(s->first.spec, t->first.spec)) continue;
                ++rep.checked;
                if (!region_subset(s->second, t->second))
                    rep.failures.push_back({s->first.name + "@" + print_specifier(s->first.spec) + " ==> " +
                                                s->first.name + "@" + print_specifier(t->first.spec),
                                            std::string(kind) + " region is not monotone"});
            }
    };
    monotone(eta.concepts, "concept");
    monotone(eta.roles, "role");
    return rep;
}

GeoReport verify_geometric_model(const GeometricInterpretation& eta, const Ontology& o, const GroundOptions& opts) {
    return verify_ground(eta, ground_ontology(o, opts));
}

std::set<std::string> phi_facts(const GeometricInterpretation& eta, const std::vector<std::string>& names) {
    std::set<std::string> out;
    for (const auto& [k, r] : eta.concepts)
        for (const auto& a : names)
            if (contains_point(r, eta.vec(a))) out.insert(k.name + "@" + print_specifier(k.spec) + "(" + a + ")");
    for (const auto& [k, r] : eta.roles)
        for (const auto& a : names)
            for (const auto& b : names)
                if (contains_point(r, eta.f.apply(eta.vec(a), eta.vec(b))))
                    out.insert(k.name + "@" + print_specifier(k.spec) + "(" + a + "," + b + ")");
    return out;
}

}  // namespace adl
