#include "adl/temporal.hpp"

#include "adl/reasoner.hpp"
#include "adl/syntax.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace adl {

TimePoint TemporalBounds::lo() const { return kmin > 0 ? TimePoint(kmin - 1) : TimePoint(0); }
TimePoint TemporalBounds::hi() const { return kmax + 1; }

std::vector<TimePoint> TemporalBounds::domain() const {
    std::vector<TimePoint> out;
    for (TimePoint j = lo(); j <= hi(); ++j) out.push_back(j);
    return out;
}

namespace {

template <class F>
void for_each_spec(const Axiom& ax, F&& f) {
    for (const auto& [x, s] : ax.prefix) f(s, false);
    auto basic = [&](const Basic& b) {
        if (b.kind == Basic::Kind::Atomic)
            f(b.spec, false);
        else
            f(b.role.spec, true);
    };
    switch (ax.kind) {
        case Axiom::Kind::ConceptAssertion:
            f(ax.spec, false);
            break;
        case Axiom::Kind::RoleAssertion:
            f(ax.spec, true);
            break;
        case Axiom::Kind::ConceptInclusion:
            for (const auto& b : ax.lhs) basic(b);
            if (!ax.rhs_bot) basic(ax.rhs);
            break;
        case Axiom::Kind::RoleInclusion:
            f(ax.rlhs.spec, true);
            f(ax.rrhs.spec, true);
            break;
    }
}

bool in_closed(const TimePoint& x, const TimePoint& a, const TimePoint& b) { return a <= x && x <= b; }

// Points of the truncated domain that A(e)@{p} forces to hold; nullopt when
// the annotation cannot hold at all.
std::optional<std::pair<TimePoint, TimePoint>> required(const Pair& p, const TemporalBounds& b) {
    TimePoint lo = b.lo(), hi = b.hi();
    if (p.attr == "time") {
        if (p.val.kind != Value::Kind::Time) throw TypeError({}, "time takes a time point");
        if (!in_closed(p.val.lo, lo, hi)) return std::nullopt;
        return std::pair{p.val.lo, p.val.lo};
    }
    if (p.attr == "during") {
        if (p.val.kind != Value::Kind::Interval) throw TypeError({}, "during takes an interval");
        return std::pair{TimePoint(std::max(p.val.lo, lo)), TimePoint(std::min(p.val.hi, hi))};
    }
    if (p.attr == "since") {
        if (p.val.kind != Value::Kind::Time) throw TypeError({}, "since takes a time point");
        return std::pair{TimePoint(std::max(p.val.lo, lo)), hi};
    }
    if (p.attr == "until") {
        if (p.val.kind != Value::Kind::Time) throw TypeError({}, "until takes a time point");
        return std::pair{lo, TimePoint(std::min(p.val.lo, hi))};
    }
    throw UnsupportedAttribute("temporal attribute " + p.attr + " is outside the supported fragment");
}

Pair during(const TimePoint& u, const TimePoint& v) { return {"during", Value::interval(u, v)}; }

}  // namespace

TemporalBounds temporal_bounds(const Ontology& o) {
    std::optional<TimePoint> lo, hi;
    auto see = [&](const TimePoint& t) {
        if (!lo || t < *lo) lo = t;
        if (!hi || t > *hi) hi = t;
    };
    for (const auto& ax : o.axioms)
        for_each_spec(ax, [&](const Specifier& s, bool) {
            for (const auto& p : s.pairs) {
                if (p.val.kind == Value::Kind::Time) see(p.val.lo);
                if (p.val.kind == Value::Kind::Interval) {
                    see(p.val.lo);
                    see(p.val.hi);
                }
            }
        });
    TemporalBounds b;
    if (lo) {
        b.kmin = *lo;
        b.kmax = *hi;
    }
    return b;
}

RestrictionReport check_temporal_restrictions(const Ontology& o) {
    RestrictionReport rep;
    for (std::size_t i = 0; i < o.axioms.size(); ++i) {
        const Axiom& ax = o.axioms[i];
        std::set<std::string> noted;
        auto role_spec = [&](const std::string& role, const Specifier& s) {
            if (!has_temporal_pair(s) || !noted.insert(role).second) return;
            rep.violations.push_back({i, RestrictionViolation::Kind::TemporalRoleSpecifier,
                                      "temporal specifier on role " + role});
        };
        std::set<std::string> role_vars;
        auto basic = [&](const Basic& b) {
            if (b.kind != Basic::Kind::Exists) return;
            role_spec(b.role.name, b.role.spec);
            if (b.role.spec.kind == Specifier::Kind::Var) role_vars.insert(b.role.spec.var);
        };
        switch (ax.kind) {
            case Axiom::Kind::RoleAssertion:
                role_spec(ax.name, ax.spec);
                break;
            case Axiom::Kind::ConceptInclusion:
                for (const auto& b : ax.lhs) basic(b);
                if (!ax.rhs_bot) basic(ax.rhs);
                break;
            case Axiom::Kind::RoleInclusion:
                role_spec(ax.rlhs.name, ax.rlhs.spec);
                role_spec(ax.rrhs.name, ax.rrhs.spec);
                if (ax.rlhs.spec.kind == Specifier::Kind::Var) role_vars.insert(ax.rlhs.spec.var);
                if (ax.rrhs.spec.kind == Specifier::Kind::Var) role_vars.insert(ax.rrhs.spec.var);
                break;
            default:
                break;
        }
        for (const auto& [x, s] : ax.prefix)
            if (role_vars.count(x)) role_spec("via set variable " + x, s);
        std::set<std::string> forbidden;
        for_each_spec(ax, [&](const Specifier& s, bool) {
            for (const auto& p : s.pairs)
                if (p.attr == "before" || p.attr == "after" || p.attr == "between") forbidden.insert(p.attr);
        });
        for (const auto& a : forbidden)
            rep.violations.push_back({i, RestrictionViolation::Kind::ForbiddenAttribute,
                                      "attribute " + a + " is not allowed"});
    }
    return rep;
}

bool temporal_implies(const Pair& p1, const Pair& p2, const TemporalBounds& b) {
    auto r1 = required(p1, b);
    auto r2 = required(p2, b);
    if (!r1) return true;
    if (!r2) return false;
    if (r2->first > r2->second) return true;  // nothing required
    if (r1->first > r1->second) return false;
    return r1->first <= r2->first && r2->second <= r1->second;
}

Specifier strip_temporal(const Specifier& s) {
    Specifier out = s;
    out.pairs.clear();
    for (const auto& p : s.pairs)
        if (!is_temporal_attr(p.attr)) out.pairs.push_back(p);
    return canonical(out);
}

Specifier with_temporal(const Specifier& s, const Pair& p) {
    Specifier out = strip_temporal(s);
    out.pairs.push_back(p);
    return canonical(out);
}

std::vector<Basic> sharp_expand(const std::string& name, const Specifier& s, const Pair& p, const TemporalBounds& b) {
    auto atom = [&](const Pair& q) {
        Basic out;
        out.name = name;
        out.spec = with_temporal(s, q);
        return out;
    };
    auto units = [&](const TimePoint& u, const TimePoint& v, std::vector<Basic>& out) {
        for (TimePoint j = u; j <= v; ++j) out.push_back(atom(during(j, j)));
    };
    std::vector<Basic> out;
    const TimePoint& k = p.val.lo;
    bool boundary = p.val.kind == Value::Kind::Time && (k == b.kmin || k == b.kmax);
    if (p.attr == "during") {
        if (p.val.kind != Value::Kind::Interval) throw TypeError({}, "during takes an interval");
        units(p.val.lo, p.val.hi, out);
    } else if (p.attr == "time") {
        out.push_back(boundary ? atom(p) : atom(during(k, k)));
    } else if (p.attr == "since") {
        if (k == b.kmax) {  // since:kmin still needs its units when kmin < kmax
            out.push_back(atom(p));
        } else if (k > b.kmax) {
            units(k, std::max(k, b.hi()), out);
        } else {
            units(k, b.kmax, out);
            out.push_back(atom({"since", Value::time(b.kmax)}));
        }
    } else if (p.attr == "until") {
        if (k == b.kmin) {
            out.push_back(atom(p));
        } else if (k < b.kmin) {
            if (k < b.lo()) out.push_back(atom(p));
            else units(b.lo(), k, out);
        } else {
            units(b.kmin, k, out);
            out.push_back(atom({"until", Value::time(b.kmin)}));
        }
    } else {
        throw UnsupportedAttribute("no expansion for temporal attribute " + p.attr);
    }
    return out;
}

std::vector<Basic> sharp_conjuncts(const std::string& name, const Specifier& s, const TemporalBounds& b) {
    std::vector<Basic> out;
    for (const auto& p : canonical(s).pairs) {
        if (!is_temporal_attr(p.attr)) continue;
        for (auto& c : sharp_expand(name, s, p, b))
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    }
    return out;
}

bool temporal_spec_implies(const Specifier& s, const Specifier& t, const TemporalBounds& b) {
    if (!s.ground() || !t.ground()) throw NonGroundSpecifier("temporal implication needs ground specifiers");
    std::vector<Pair> st, tt;
    for (const auto& p : s.pairs)
        if (is_temporal_attr(p.attr)) st.push_back(p);
    for (const auto& p : t.pairs)
        if (is_temporal_attr(p.attr)) tt.push_back(p);
    if (tt.empty()) return specifier_implies(s, t);
    for (const auto& q : tt)
        if (std::none_of(st.begin(), st.end(), [&](const Pair& p) { return temporal_implies(p, q, b); }))
            return false;
    Specifier sa = strip_temporal(s), ta = strip_temporal(t);
    if (t.is_open()) return is_subset(ta.pairs, sa.pairs);
    return !s.is_open() && sa.pairs == ta.pairs;
}

TemporalTranslation temporal_translate(const Ontology& o, const TemporalOptions& opts) {
    if (opts.check_restrictions) {
        auto rep = check_temporal_restrictions(o);
        if (!rep.ok()) throw RestrictionViolated("restriction violated: " + rep.violations.front().message);
    }
    TemporalTranslation tr;
    tr.bounds = temporal_bounds(o);
    const TemporalBounds& b = tr.bounds;

    std::set<Value> dom;
    for (const auto& v : annotation_domain(o).values) dom.insert(v);
    dom.insert(Value::named("_f"));
    dom.insert(Value::time(b.lo()));
    dom.insert(Value::time(b.hi()));
    tr.domain.values.assign(dom.begin(), dom.end());

    GroundOptions g = opts.ground;
    g.cap = opts.cap;
    tr.grounded = ground_ontology(o, tr.domain, g);

    Ontology& d = tr.dagger;
    std::set<std::string> seen;
    auto emit = [&](Axiom a) {
        if (seen.insert(print_axiom(a)).second) d.axioms.push_back(std::move(a));
    };
    std::map<std::string, std::set<Specifier>> specs;  // concept name -> specifiers
    auto note = [&](const Basic& x) {
        if (x.kind == Basic::Kind::Atomic) specs[x.name].insert(canonical(x.spec));
    };
    for (const auto& ax : tr.grounded.axioms) {
        emit(ax);
        if (ax.kind == Axiom::Kind::ConceptAssertion) specs[ax.name].insert(canonical(ax.spec));
        if (ax.kind == Axiom::Kind::ConceptInclusion) {
            for (const auto& x : ax.lhs) note(x);
            if (!ax.rhs_bot) note(ax.rhs);
        }
    }

    // The # equivalences, in both directions.
    std::map<std::string, std::set<Specifier>> introduced = specs;
    for (const auto& [name, ss] : specs)
        for (const auto& s : ss) {
            if (!has_temporal_pair(s)) continue;
            Basic self;
            self.name = name;
            self.spec = s;
            auto conj = sharp_conjuncts(name, s, b);
            for (const auto& c : conj) introduced[name].insert(c.spec);
            // Unit and boundary specifiers read by the per-time-point models.
            for (const auto& j : b.domain()) introduced[name].insert(with_temporal(s, during(j, j)));
            introduced[name].insert(with_temporal(s, {"since", Value::time(b.kmax)}));
            introduced[name].insert(with_temporal(s, {"until", Value::time(b.kmin)}));
            if (conj.size() == 1 && conj[0] == self) continue;
            for (const auto& c : conj) {
                if (c == self) continue;
                Axiom down;
                down.kind = Axiom::Kind::ConceptInclusion;
                down.lhs = {self};
                down.rhs = c;
                emit(down);
            }
            Axiom up;
            up.kind = Axiom::Kind::ConceptInclusion;
            up.lhs = conj;
            up.rhs = self;
            emit(up);
        }

    // S => T among occurring specifiers of the same concept name.
    for (const auto& [name, ss] : introduced)
        for (const auto& s : ss)
            for (const auto& t : ss) {
                if (s == t || (!has_temporal_pair(s) && !has_temporal_pair(t))) continue;
                if (!temporal_spec_implies(s, t, b)) continue;
                Axiom br;
                br.kind = Axiom::Kind::ConceptInclusion;
                br.lhs = {Basic{Basic::Kind::Atomic, name, s, {}}};
                br.rhs = Basic{Basic::Kind::Atomic, name, t, {}};
                emit(br);
            }
    recompute_flags(d);
    return tr;
}

bool operator==(const TemporalModelBundle& x, const TemporalModelBundle& y) {
    return x.bounds.kmin == y.bounds.kmin && x.bounds.kmax == y.bounds.kmax && x.global == y.global && x.at == y.at;
}

TemporalBuild build_temporal(const Ontology& o, const TemporalOptions& opts) {
    TemporalBuild out;
    out.translation = temporal_translate(o, opts);
    out.plain = dllite_translate(out.translation.dagger);
    FactBase fb = saturate(out.plain);
    if (fb.unsat) throw Unsatisfiable("temporal translation is unsatisfiable: " + fb.clash);
    out.base = build_geometric_model(finite_model(fb), out.plain);
    const auto& base = out.base;
    const TemporalBounds& b = out.translation.bounds;

    TemporalModelBundle& bundle = out.bundle;
    bundle.bounds = b;
    GeometricInterpretation& eta = bundle.global;
    eta.m = base.m;
    eta.f = base.f;
    eta.individuals = base.individuals;
    eta.roles = base.roles;
    std::set<std::pair<std::string, Specifier>> atemporal;
    for (const auto& [k, r] : base.concepts) {
        atemporal.insert({k.name, strip_temporal(k.spec)});
        if (!has_temporal_pair(k.spec)) {
            eta.concepts[k] = r;
            continue;
        }
        std::vector<Region> parts;
        for (const auto& c : sharp_conjuncts(k.name, k.spec, b)) parts.push_back(base.concept_region(c.name, c.spec));
        eta.concepts[k] = intersect_one_hot(parts);
    }
    for (const auto& j : b.domain()) {
        GeometricInterpretation ej;
        ej.m = base.m;
        ej.f = base.f;
        ej.individuals = base.individuals;
        ej.roles = base.roles;
        for (const auto& [name, s] : atemporal)
            ej.concepts[{name, s}] = base.concept_region(name, with_temporal(s, during(j, j)));
        bundle.at[j] = std::move(ej);
    }
    return out;
}

TemporalModelBundle build_temporal_model(const Ontology& o, const TemporalOptions& opts) {
    return build_temporal(o, opts).bundle;
}

namespace {

bool built_on(const Specifier& s, const std::set<std::string>& d) {
    if (d.empty()) return true;
    for (const auto& p : s.pairs) {
        if (!is_temporal_attr(p.attr) && !d.count(p.attr)) return false;
        if (p.val.kind == Value::Kind::Name && !d.count(p.val.name)) return false;
    }
    return true;
}

}  // namespace

GlobalReport check_global(const TemporalModelBundle& bundle, const std::set<std::string>& d) {
    GlobalReport rep;
    const auto& eta = bundle.global;
    std::set<Vec> probes;
    for (const auto& [n, v] : eta.individuals) probes.insert(v);
    for (const auto& [k, r] : eta.concepts) probes.insert(r.gens.begin(), r.gens.end());
    for (const auto& [j, ej] : bundle.at)
        for (const auto& [k, r] : ej.concepts) probes.insert(r.gens.begin(), r.gens.end());
    auto label = [&](const Vec& v) {
        for (const auto& [n, w] : eta.individuals)
            if (w == v) return n;
        return print_vec(v);
    };
    auto member_at = [&](const TimePoint& j, const std::string& name, const Specifier& s, const Vec& x) {
        auto it = bundle.at.find(j);
        return it != bundle.at.end() && contains_point(it->second.concept_region(name, s), x);
    };

    for (const auto& [k, r] : eta.concepts) {
        if (!has_temporal_pair(k.spec) || r.empty() || !built_on(k.spec, d)) continue;
        for (const auto& p : k.spec.pairs)
            if (p.attr == "before" || p.attr == "after" || p.attr == "between")
                throw UnsupportedAttribute("global check does not cover " + p.attr);
        Specifier base = strip_temporal(k.spec);
        std::string key = k.name + "@" + print_specifier(k.spec);
        for (const auto& x : probes) {
            ++rep.checked;
            bool in = contains_point(r, x);
            // First failing condition of the definition, if any.
            std::optional<GlobalViolation> why;
            bool some = false;
            for (const auto& [j, ej] : bundle.at)
                if (member_at(j, k.name, base, x)) some = true;
            if (!some) why = GlobalViolation{label(x), "", "", key + ": no time point holds"};
            for (const auto& p : k.spec.pairs) {
                if (why || !is_temporal_attr(p.attr)) continue;
                auto fail = [&](const TimePoint& j) {
                    why = GlobalViolation{label(x), p.attr, j.get_str(),
                                          key + ": " + p.attr + " condition fails at time " + j.get_str()};
                };
                if (p.attr == "time") {
                    if (!member_at(p.val.lo, k.name, base, x)) fail(p.val.lo);
                    continue;
                }
                for (const auto& [j, ej] : bundle.at) {
                    bool needed = p.attr == "until"   ? j <= p.val.lo
                                  : p.attr == "since" ? j >= p.val.lo
                                                      : in_closed(j, p.val.lo, p.val.hi);
                    if (needed && !member_at(j, k.name, base, x)) {
                        fail(j);
                        break;
                    }
                }
            }
            if (in && why) rep.violations.push_back(*why);
            if (!in && !why)
                rep.violations.push_back({label(x), "", "", key + ": conditions hold but the point is outside the region"});
        }
    }
    for (const auto& [j, ej] : bundle.at) {
        ++rep.checked;
        if (ej.roles != eta.roles)
            rep.violations.push_back({"", "role", j.get_str(), "role regions differ at time " + j.get_str()});
    }
    return rep;
}

std::string export_bundle_json(const TemporalModelBundle& b) {
    nlohmann::json j;
    j["kmin"] = b.bounds.kmin.get_str();
    j["kmax"] = b.bounds.kmax.get_str();
    j["global"] = nlohmann::json::parse(export_json(b.global));
    nlohmann::json at = nlohmann::json::array();
    for (const auto& [t, m] : b.at) at.push_back({{"time", t.get_str()}, {"model", nlohmann::json::parse(export_json(m))}});
    j["at"] = at;
    return j.dump(1) + "\n";
}

TemporalModelBundle import_bundle_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        TemporalModelBundle b;
        b.bounds.kmin = TimePoint(j.at("kmin").get<std::string>());
        b.bounds.kmax = TimePoint(j.at("kmax").get<std::string>());
        b.global = import_json(j.at("global").dump());
        for (const auto& e : j.at("at"))
            b.at[TimePoint(e.at("time").get<std::string>())] = import_json(e.at("model").dump());
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError({}, std::string("bad bundle document: ") + e.what());
    }
}

std::string export_bundle_text(const TemporalModelBundle& b) {
    std::string out = "== global kmin " + b.bounds.kmin.get_str() + " kmax " + b.bounds.kmax.get_str() + "\n";
    out += export_text(b.global);
    for (const auto& [t, m] : b.at) out += "== time " + t.get_str() + "\n" + export_text(m);
    return out;
}

TemporalModelBundle import_bundle_text(const std::string& text) {
    TemporalModelBundle b;
    std::istringstream is(text);
    std::string line, section, body;
    bool seen_global = false;
    auto flush = [&] {
        if (section.empty()) return;
        std::istringstream hs(section);
        std::string eq, kw;
        hs >> eq >> kw;
        if (kw == "global") {
            std::string k1, v1, k2, v2;
            hs >> k1 >> v1 >> k2 >> v2;
            if (k1 != "kmin" || k2 != "kmax") throw SyntaxError({}, "bad bundle header: " + section);
            b.bounds.kmin = TimePoint(v1);
            b.bounds.kmax = TimePoint(v2);
            b.global = import_text(body);
            seen_global = true;
        } else if (kw == "time") {
            std::string t;
            hs >> t;
            b.at[TimePoint(t)] = import_text(body);
        } else {
            throw SyntaxError({}, "bad bundle section: " + section);
        }
    };
    while (std::getline(is, line)) {
        if (line.rfind("==", 0) == 0) {
            flush();
            section = line;
            body.clear();
        } else {
            body += line + "\n";
        }
    }
    flush();
    if (!seen_global) throw SyntaxError({}, "bundle has no global section");
    return b;
}

TemporalModelBundle import_bundle(const std::string& text) {
    auto p = text.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && text[p] == '{') return import_bundle_json(text);
    return import_bundle_text(text);
}

}  // namespace adl
