#include "adl/grounding.hpp"

#include "adl/syntax.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>

namespace adl {

namespace {

template <class F>
void for_each_spec(const Axiom& ax, F&& f) {
    for (const auto& [x, s] : ax.prefix) f(s);
    switch (ax.kind) {
        case Axiom::Kind::ConceptAssertion:
        case Axiom::Kind::RoleAssertion:
            f(ax.spec);
            break;
        case Axiom::Kind::ConceptInclusion:
            for (const auto& b : ax.lhs) f(b.kind == Basic::Kind::Atomic ? b.spec : b.role.spec);
            if (!ax.rhs_bot) f(ax.rhs.kind == Basic::Kind::Atomic ? ax.rhs.spec : ax.rhs.role.spec);
            break;
        case Axiom::Kind::RoleInclusion:
            f(ax.rlhs.spec);
            f(ax.rrhs.spec);
            break;
    }
}

template <class F>
void for_each_spec_mut(Axiom& ax, F&& f) {
    switch (ax.kind) {
        case Axiom::Kind::ConceptAssertion:
        case Axiom::Kind::RoleAssertion:
            f(ax.spec);
            break;
        case Axiom::Kind::ConceptInclusion:
            for (auto& b : ax.lhs) f(b.kind == Basic::Kind::Atomic ? b.spec : b.role.spec);
            if (!ax.rhs_bot) f(ax.rhs.kind == Basic::Kind::Atomic ? ax.rhs.spec : ax.rhs.role.spec);
            break;
        case Axiom::Kind::RoleInclusion:
            f(ax.rlhs.spec);
            f(ax.rrhs.spec);
            break;
    }
}

std::vector<Value> filter_kind(const std::vector<Value>& vs, Value::Kind k) {
    std::vector<Value> out;
    for (const auto& v : vs)
        if (v.kind == k) out.push_back(v);
    return out;
}

bool has_set_vars(const Axiom& ax) {
    bool found = !ax.prefix.empty();
    for_each_spec(ax, [&](const Specifier& s) {
        if (s.kind == Specifier::Kind::Var) found = true;
        for (const auto& p : s.pairs)
            if (p.val.kind == Value::Kind::Proj) found = true;
    });
    return found;
}

}  // namespace

std::vector<Value> AnnotationDomain::names() const { return filter_kind(values, Value::Kind::Name); }
std::vector<Value> AnnotationDomain::points() const { return filter_kind(values, Value::Kind::Time); }
std::vector<Value> AnnotationDomain::intervals() const { return filter_kind(values, Value::Kind::Interval); }

AnnotationDomain annotation_domain(const Ontology& o) {
    std::set<Value> vals;
    for (const auto& ax : o.axioms)
        for_each_spec(ax, [&](const Specifier& s) {
            for (const auto& p : s.pairs) {
                if (!is_temporal_attr(p.attr)) vals.insert(Value::named(p.attr));
                switch (p.val.kind) {
                    case Value::Kind::Name:
                    case Value::Kind::Time:
                        vals.insert(p.val);
                        break;
                    case Value::Kind::Interval:
                        vals.insert(p.val);
                        vals.insert(Value::time(p.val.lo));
                        vals.insert(Value::time(p.val.hi));
                        break;
                    case Value::Kind::Proj:
                        if (!is_temporal_attr(p.val.attr)) vals.insert(Value::named(p.val.attr));
                        break;
                    case Value::Kind::Var:
                        break;
                }
            }
        });
    return {std::vector<Value>(vals.begin(), vals.end())};
}

AnnSet occurring_pairs(const Ontology& o) {
    AnnSet out;
    for (const auto& ax : o.axioms)
        for_each_spec(ax, [&](const Specifier& s) {
            for (const auto& p : s.pairs)
                if (p.val.ground()) out.push_back(p);
        });
    canonicalize(out);
    return out;
}

std::vector<Assignment> enumerate_assignments(const Axiom& ax, const AnnotationDomain& dom, const AnnSet& occurring,
                                              const GroundOptions& opts) {
    VarDomain vd;
    vd.names = dom.names();
    vd.points = dom.points();
    vd.intervals = dom.intervals();
    if (opts.mode == GroundMode::Exhaustive) {
        if (has_set_vars(ax) && dom.size() > opts.cap)
            throw CapExceeded("exhaustive grounding over " + std::to_string(dom.size()) +
                              " annotation elements exceeds the cap of " + std::to_string(opts.cap));
        std::vector<std::string> temporal_attrs;
        for (const auto& p : occurring)
            if (is_temporal_attr(p.attr)) temporal_attrs.push_back(p.attr);
        vd.pool = well_typed_pairs(dom.values, temporal_attrs);
    } else {
        vd.pool = occurring;
    }
    return enumerate_compatible(ax, vd, opts.limit);
}

Axiom instantiate_axiom(const Axiom& ax, const Assignment& z) {
    Axiom out = ax;
    out.prefix.clear();
    for_each_spec_mut(out, [&](Specifier& s) {
        if (s.kind == Specifier::Kind::Var)
            s = Specifier::closed(z.sets.at(s.var));
        else
            s = canonical(instantiate(s, z));
    });
    return out;
}

Ontology ground_ontology(const Ontology& o, const GroundOptions& opts) {
    return ground_ontology(o, annotation_domain(o), opts);
}

Ontology ground_ontology(const Ontology& o, const AnnotationDomain& dom, const GroundOptions& opts) {
    Ontology g;
    std::set<std::string> seen;
    AnnSet occ = occurring_pairs(o);
    auto emit = [&](Axiom a) {
        if (seen.insert(print_axiom(a)).second) g.axioms.push_back(std::move(a));
    };
    for (const auto& ax : o.axioms) {
        if (ax.is_assertion()) {
            Axiom a = ax;
            a.spec = canonical(a.spec);
            emit(std::move(a));
            continue;
        }
        for (const auto& z : enumerate_assignments(ax, dom, occ, opts)) emit(instantiate_axiom(ax, z));
    }
    recompute_flags(g);
    return g;
}

// ---- translation ---------------------------------------------------------

const NameEntry* PlainOntology::lookup(const std::string& fresh) const {
    auto it = by_fresh.find(fresh);
    return it == by_fresh.end() ? nullptr : &names[it->second];
}

bool PlainOntology::has_negative_role_inclusion() const {
    return std::any_of(axioms.begin(), axioms.end(), [](const PlainAxiom& a) {
        return a.kind == PlainAxiom::Kind::RoleInclusion && a.rrhs.negated;
    });
}

std::string fresh_name(const std::string& name, const Specifier& spec) {
    std::string key = name + "@" + print_specifier(canonical(spec));
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return name + "_" + buf;
}

namespace {

struct Translator {
    std::map<std::string, NameEntry> table;  // fresh -> entry

    std::string intern(const std::string& name, const Specifier& s, bool role) {
        if (!s.ground()) throw NonGroundSpecifier("translation needs a ground ontology");
        Specifier c = canonical(s);
        std::string f = fresh_name(name, c);
        auto [it, fresh] = table.try_emplace(f, NameEntry{f, name, c, role});
        if (!fresh && (it->second.name != name || !(it->second.spec == c) || it->second.role != role))
            throw AdlError("fresh name collision on " + f);
        return f;
    }

    PlainBasic basic(const Basic& b) {
        if (b.kind == Basic::Kind::Atomic) return {false, intern(b.name, b.spec, false), false};
        return {true, intern(b.role.name, b.role.spec, true), b.role.inverse};
    }

    PlainRole role(const RoleExpr& r) { return {intern(r.name, r.spec, true), r.inverse, r.negated}; }
};

}  // namespace

PlainOntology dllite_translate(const Ontology& g) {
    Translator t;
    PlainOntology p;
    for (const auto& ax : g.axioms) {
        PlainAxiom pa;
        switch (ax.kind) {
            case Axiom::Kind::ConceptAssertion:
                pa.kind = PlainAxiom::Kind::ConceptAssertion;
                pa.name = t.intern(ax.name, ax.spec, false);
                pa.a = ax.a;
                break;
            case Axiom::Kind::RoleAssertion:
                pa.kind = PlainAxiom::Kind::RoleAssertion;
                pa.name = t.intern(ax.name, ax.spec, true);
                pa.a = ax.a;
                pa.b = ax.b;
                break;
            case Axiom::Kind::ConceptInclusion:
                pa.kind = PlainAxiom::Kind::ConceptInclusion;
                for (const auto& b : ax.lhs) pa.lhs.push_back(t.basic(b));
                pa.rhs_bot = ax.rhs_bot;
                if (!ax.rhs_bot) pa.rhs = t.basic(ax.rhs);
                break;
            case Axiom::Kind::RoleInclusion:
                pa.kind = PlainAxiom::Kind::RoleInclusion;
                pa.rlhs = t.role(ax.rlhs);
                pa.rrhs = t.role(ax.rrhs);
                break;
        }
        p.axioms.push_back(std::move(pa));
    }

    // E_S sub E_T whenever S ==> T among the specifiers attached to E.
    std::map<std::pair<std::string, bool>, std::vector<const NameEntry*>> by_name;
    for (const auto& [f, e] : t.table) by_name[{e.name, e.role}].push_back(&e);
    for (const auto& [key, entries] : by_name)
        for (const NameEntry* s : entries)
            for (const NameEntry* u : entries) {
                if (s == u || !specifier_implies(s->spec, u->spec)) continue;
                PlainAxiom br;
                if (key.second) {
                    br.kind = PlainAxiom::Kind::RoleInclusion;
                    br.rlhs = {s->fresh, false, false};
                    br.rrhs = {u->fresh, false, false};
                } else {
                    br.kind = PlainAxiom::Kind::ConceptInclusion;
                    br.lhs = {{false, s->fresh, false}};
                    br.rhs = {false, u->fresh, false};
                }
                p.axioms.push_back(std::move(br));
            }

    for (auto& [f, e] : t.table) {
        p.by_fresh[f] = p.names.size();
        p.names.push_back(e);
    }
    return p;
}

bool quasi_chained(const PlainOntology& p) {
    // Rule bodies: concept atoms use x, each exists atom gets its own fresh
    // variable; a role inclusion body is R(x,y), a negative one adds S(x,y).
    for (const auto& a : p.axioms) {
        std::vector<std::set<std::string>> body;
        if (a.kind == PlainAxiom::Kind::ConceptInclusion) {
            int k = 0;
            for (const auto& b : a.lhs) {
                if (b.exists)
                    body.push_back({"x", "y" + std::to_string(k++)});
                else
                    body.push_back({"x"});
            }
        } else if (a.kind == PlainAxiom::Kind::RoleInclusion) {
            body.push_back({"x", "y"});
            if (a.rrhs.negated) body.push_back({"x", "y"});
        }
        std::set<std::string> seen;
        for (const auto& atom : body) {
            std::size_t shared = 0;
            for (const auto& v : atom) shared += seen.count(v);
            if (shared > 1) return false;
            seen.insert(atom.begin(), atom.end());
        }
    }
    return true;
}

Ontology to_ontology(const PlainOntology& p) {
    Ontology o;
    auto basic = [](const PlainBasic& b) {
        Basic out;
        if (b.exists) {
            out.kind = Basic::Kind::Exists;
            out.role.name = b.name;
            out.role.inverse = b.inverse;
        } else {
            out.name = b.name;
        }
        return out;
    };
    auto role = [](const PlainRole& r) {
        RoleExpr out;
        out.name = r.name;
        out.inverse = r.inverse;
        out.negated = r.negated;
        return out;
    };
    for (const auto& a : p.axioms) {
        Axiom ax;
        switch (a.kind) {
            case PlainAxiom::Kind::ConceptAssertion:
                ax.kind = Axiom::Kind::ConceptAssertion;
                ax.name = a.name;
                ax.a = a.a;
                ax.spec = Specifier::closed({});
                break;
            case PlainAxiom::Kind::RoleAssertion:
                ax.kind = Axiom::Kind::RoleAssertion;
                ax.name = a.name;
                ax.a = a.a;
                ax.b = a.b;
                ax.spec = Specifier::closed({});
                break;
            case PlainAxiom::Kind::ConceptInclusion:
                ax.kind = Axiom::Kind::ConceptInclusion;
                for (const auto& b : a.lhs) ax.lhs.push_back(basic(b));
                ax.rhs_bot = a.rhs_bot;
                if (!a.rhs_bot) ax.rhs = basic(a.rhs);
                break;
            case PlainAxiom::Kind::RoleInclusion:
                ax.kind = Axiom::Kind::RoleInclusion;
                ax.rlhs = role(a.rlhs);
                ax.rrhs = role(a.rrhs);
                break;
        }
        o.axioms.push_back(std::move(ax));
    }
    recompute_flags(o);
    return o;
}

std::string print_plain(const PlainOntology& p) { return print_ontology(to_ontology(p)); }

std::string print_name_table(const PlainOntology& p) {
    std::ostringstream os;
    for (const auto& e : p.names)
        os << e.fresh << "\t" << (e.role ? "role" : "concept") << "\t" << e.name << "@" << print_specifier(e.spec)
           << "\n";
    return os.str();
}

}  // namespace adl
