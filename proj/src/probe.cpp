// Convexity probes: what the hull of two named points is forced to contain.
#include "adl/geometry.hpp"
#include "adl/syntax.hpp"

#include <algorithm>
#include <functional>

namespace adl {

namespace {

bool star_match(const Specifier& have, const Specifier& want) {
    Specifier w = canonical(want);
    if (w.is_open()) return is_subset(w.pairs, have.pairs);
    return !have.is_open() && have.pairs == w.pairs;
}

struct Fact {
    bool role = false;
    std::string name;
    Specifier spec;
    int x = 0, y = 0;
    std::string reason;
    std::vector<int> parents;
};

class Prober {
public:
    Prober(const GeometricInterpretation& eta, std::vector<Vec> pts, std::vector<std::string> labels,
           const Ontology& ground, const std::vector<RoleConjunction>& extra, const std::vector<Value>& intervals)
        : eta_(eta), pts_(std::move(pts)), labels_(std::move(labels)), g_(ground), extra_(extra), intervals_(intervals) {}

    std::vector<ProbeDiagnostic> run(int focus) {
        seed();
        for (bool changed = true; changed;) {
            changed = false;
            // Role-level consequences first so chains read in derivation order.
            while (role_pass()) changed = true;
            if (concept_pass()) changed = true;
        }
        std::vector<ProbeDiagnostic> out;
        for (const auto& v : violations_) {
            if (v.point != focus) continue;
            ProbeDiagnostic d;
            d.point = labels_[focus];
            d.coords = pts_[focus];
            d.violated = v.axiom;
            for (int id : ancestry(v.parents)) d.chain.push_back(describe(facts_[id]) + "  [" + facts_[id].reason + "]");
            d.chain.push_back("violates " + v.axiom + " at " + labels_[focus]);
            out.push_back(std::move(d));
        }
        return out;
    }

private:
    struct Violation {
        int point;
        std::string axiom;
        std::vector<int> parents;
    };

    const GeometricInterpretation& eta_;
    std::vector<Vec> pts_;
    std::vector<std::string> labels_;
    const Ontology& g_;
    const std::vector<RoleConjunction>& extra_;
    std::vector<Value> intervals_;
    std::vector<Fact> facts_;
    std::set<std::string> keys_;
    std::vector<Violation> violations_;
    std::set<std::string> seen_violations_;

    std::string describe(const Fact& f) const {
        std::string args = f.role ? labels_[f.x] + ", " + labels_[f.y] : labels_[f.x];
        return f.name + "@" + print_specifier(f.spec) + "(" + args + ")";
    }

    bool add(Fact f) {
        f.spec = canonical(f.spec);
        std::string key = (f.role ? "r " : "c ") + describe(f);
        if (!keys_.insert(key).second) return false;
        facts_.push_back(std::move(f));
        return true;
    }

    void violation(int point, const Axiom& ax, std::vector<int> parents) {
        std::string s = print_axiom(ax);
        if (!seen_violations_.insert(std::to_string(point) + s).second) return;
        violations_.push_back({point, s, std::move(parents)});
    }

    std::vector<int> ancestry(const std::vector<int>& roots) const {
        std::set<int> seen;
        std::function<void(int)> walk = [&](int id) {
            if (!seen.insert(id).second) return;
            for (int p : facts_[id].parents) walk(p);
        };
        for (int r : roots) walk(r);
        return {seen.begin(), seen.end()};
    }

    void seed() {
        for (const auto& [k, r] : eta_.concepts)
            for (std::size_t i = 0; i < pts_.size(); ++i)
                if (contains_point(r, pts_[i]))
                    add({false, k.name, k.spec, int(i), 0, "convexity: " + labels_[i] + " lies in the hull of " + k.name + "@" + print_specifier(k.spec), {}});
        for (const auto& [k, r] : eta_.roles)
            for (std::size_t i = 0; i < pts_.size(); ++i)
                for (std::size_t j = 0; j < pts_.size(); ++j)
                    if (contains_point(r, eta_.f.apply(pts_[i], pts_[j])))
                        add({true, k.name, k.spec, int(i), int(j),
                             "convexity: f(" + labels_[i] + ", " + labels_[j] + ") lies in the hull of " + k.name + "@" +
                                 print_specifier(k.spec),
                             {}});
    }

    // Fact ids of a role atom holding on (x, y), inverse and negation aware.
    int role_holds(const RoleExpr& r, int x, int y) const {
        if (r.inverse) std::swap(x, y);
        for (std::size_t id = 0; id < facts_.size(); ++id) {
            const Fact& f = facts_[id];
            if (f.role && f.name == r.name && f.x == x && f.y == y && star_match(f.spec, r.spec)) return int(id);
        }
        return -1;
    }

    int basic_holds(const Basic& b, int x) const {
        if (b.kind == Basic::Kind::Exists) {
            for (std::size_t y = 0; y < pts_.size(); ++y)
                if (int id = role_holds(b.role, x, int(y)); id >= 0) return id;
            return -1;
        }
        for (std::size_t id = 0; id < facts_.size(); ++id) {
            const Fact& f = facts_[id];
            if (!f.role && f.name == b.name && f.x == x && star_match(f.spec, b.spec)) return int(id);
        }
        return -1;
    }

    // time:k for every k in [u,v] yields during:[u,v] (the during condition).
    bool temporal_closure() {
        bool changed = false;
        std::size_t n = facts_.size();
        for (std::size_t id = 0; id < n; ++id) {
            const Fact f = facts_[id];
            std::vector<Pair> rest, times;
            for (const auto& p : f.spec.pairs) (p.attr == "time" ? times : rest).push_back(p);
            if (times.size() != 1 || has_temporal_pair(Specifier::closed(rest))) continue;
            for (const auto& iv : intervals_) {
                // only start from the fact at the interval's first point
                if (times[0].val.lo != iv.lo) continue;
                std::vector<int> parents;
                for (TimePoint k = iv.lo; k <= iv.hi; ++k) {
                    std::vector<Pair> want = rest;
                    want.push_back({"time", Value::time(k)});
                    Specifier ws = f.spec.is_open() ? Specifier::open(want) : Specifier::closed(want);
                    int found = -1;
                    for (std::size_t j = 0; j < facts_.size() && found < 0; ++j) {
                        const Fact& h = facts_[j];
                        if (h.role == f.role && h.name == f.name && h.x == f.x && h.y == f.y &&
                            h.spec == canonical(ws))
                            found = int(j);
                    }
                    if (found < 0) {
                        parents.clear();
                        break;
                    }
                    parents.push_back(found);
                }
                if (parents.empty()) continue;
                std::vector<Pair> out = rest;
                out.push_back({"during", iv});
                Specifier os = f.spec.is_open() ? Specifier::open(out) : Specifier::closed(out);
                std::string why = "temporal closure: time:k holds for every k in " + print_value(iv);
                if (add({f.role, f.name, os, f.x, f.y, why, parents})) changed = true;
            }
        }
        return changed;
    }

    bool role_pass() {
        bool changed = temporal_closure();
        int n = int(pts_.size());
        for (const auto& ax : g_.axioms) {
            if (ax.kind != Axiom::Kind::RoleInclusion) continue;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    int l = role_holds(ax.rlhs, x, y);
                    if (l < 0) continue;
                    RoleExpr q = ax.rrhs;
                    if (q.negated) {
                        q.negated = false;
                        int r = role_holds(q, x, y);
                        if (r >= 0) {
                            violation(x, ax, {l, r});
                            violation(y, ax, {l, r});
                        }
                        continue;
                    }
                    int a = q.inverse ? y : x, b = q.inverse ? x : y;
                    if (add({true, q.name, q.spec, a, b, "by " + print_axiom(ax), {l}})) changed = true;
                }
        }
        for (const auto& rc : extra_)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    std::vector<int> parents;
                    for (const auto& r : rc.body) {
                        int id = role_holds(r, x, y);
                        if (id < 0) break;
                        parents.push_back(id);
                    }
                    if (parents.size() != rc.body.size()) continue;
                    int a = rc.head.inverse ? y : x, b = rc.head.inverse ? x : y;
                    std::string rule;
                    for (const auto& r : rc.body) rule += (rule.empty() ? "" : " and ") + print_role(r);
                    rule += " sub " + print_role(rc.head);
                    if (add({true, rc.head.name, rc.head.spec, a, b, "by role conjunction " + rule, parents}))
                        changed = true;
                }
        return changed;
    }

    bool concept_pass() {
        bool changed = false;
        for (const auto& ax : g_.axioms) {
            if (ax.kind != Axiom::Kind::ConceptInclusion) continue;
            for (int x = 0; x < int(pts_.size()); ++x) {
                std::vector<int> parents;
                for (const auto& b : ax.lhs) {
                    int id = basic_holds(b, x);
                    if (id < 0) break;
                    parents.push_back(id);
                }
                if (parents.size() != ax.lhs.size()) continue;
                if (ax.rhs_bot) {
                    violation(x, ax, parents);
                    continue;
                }
                if (ax.rhs.kind == Basic::Kind::Atomic &&
                    add({false, ax.rhs.name, ax.rhs.spec, x, 0, "by " + print_axiom(ax), parents}))
                    changed = true;
            }
        }
        return changed;
    }
};

bool is_named(const std::string& n) { return n.rfind("_w", 0) != 0; }

}  // namespace

std::vector<ProbeDiagnostic> midpoint_probe(const GeometricInterpretation& eta, const Ontology& o,
                                            const std::vector<RoleConjunction>& extra) {
    Ontology g;
    try {
        g = ground_ontology(o);
    } catch (const CapExceeded&) {
        for (const auto& ax : o.axioms)
            if (ax.prefix.empty()) g.axioms.push_back(ax);
    }
    std::vector<Value> intervals = annotation_domain(o).intervals();
    std::vector<std::string> names;
    for (const auto& [n, v] : eta.individuals)
        if (is_named(n)) names.push_back(n);
    std::vector<ProbeDiagnostic> out;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            const Vec& a = eta.vec(names[i]);
            const Vec& b = eta.vec(names[j]);
            std::vector<Vec> pts{a, b, midpoint(a, b)};
            std::vector<std::string> labels{names[i], names[j], "mid(" + names[i] + "," + names[j] + ")"};
            Prober pr(eta, pts, labels, g, extra, intervals);
            for (auto& d : pr.run(2)) out.push_back(std::move(d));
        }
    return out;
}

GeometricInterpretation naive_embedding(const Ontology& o, const LinearMap& f) {
    std::set<std::string> inds;
    for (const auto& ax : o.axioms) {
        if (ax.kind == Axiom::Kind::ConceptAssertion) inds.insert(ax.a);
        if (ax.kind == Axiom::Kind::RoleAssertion) {
            inds.insert(ax.a);
            inds.insert(ax.b);
        }
    }
    GeometricInterpretation eta;
    eta.m = std::max<std::size_t>(1, inds.size());
    if (f.m != eta.m) throw DimensionMismatch("linear map dimension differs from the number of individuals");
    if (!validate_linear_map(f)) throw UnvalidatedMap("linear map is not injective on each half with independent images");
    eta.f = f;
    std::size_t k = 0;
    for (const auto& n : inds) eta.individuals[n] = unit_vector(eta.m, k++);
    std::map<RegionKey, std::vector<Vec>> cg, rg;
    for (const auto& ax : o.axioms) {
        if (ax.kind == Axiom::Kind::ConceptAssertion) cg[{ax.name, canonical(ax.spec)}].push_back(eta.vec(ax.a));
        if (ax.kind == Axiom::Kind::RoleAssertion)
            rg[{ax.name, canonical(ax.spec)}].push_back(f.apply(eta.vec(ax.a), eta.vec(ax.b)));
    }
    for (auto& [key, gens] : cg) eta.concepts[key] = Region(eta.m, std::move(gens));
    for (auto& [key, gens] : rg) eta.roles[key] = Region(2 * eta.m, std::move(gens));
    return eta;
}

GeometricInterpretation naive_embedding(const Ontology& o) {
    std::set<std::string> inds;
    for (const auto& ax : o.axioms) {
        if (ax.kind == Axiom::Kind::ConceptAssertion) inds.insert(ax.a);
        if (ax.kind == Axiom::Kind::RoleAssertion) {
            inds.insert(ax.a);
            inds.insert(ax.b);
        }
    }
    return naive_embedding(o, LinearMap::concatenation(std::max<std::size_t>(1, inds.size())));
}

}  // namespace adl
