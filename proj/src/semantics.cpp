#include "adl/semantics.hpp"

#include "adl/syntax.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace adl {

const std::string& FiniteInterpretation::element(const std::string& name) const {
    auto it = denote.find(name);
    return it == denote.end() ? name : it->second;
}

void FiniteInterpretation::close_annotation_domain() {
    std::set<Value> vals(annotations.begin(), annotations.end());
    auto add = [&](const AnnSet& f) {
        for (const auto& p : f) {
            vals.insert(Value::named(p.attr));
            vals.insert(p.val);
        }
    };
    for (const auto& [n, ext] : concepts)
        for (const auto& [d, f] : ext) add(f);
    for (const auto& [n, ext] : roles)
        for (const auto& [d, e, f] : ext) add(f);
    annotations.assign(vals.begin(), vals.end());
}

bool operator==(const FiniteInterpretation& a, const FiniteInterpretation& b) {
    return a.individuals == b.individuals && a.annotations == b.annotations && a.denote == b.denote &&
           a.concepts == b.concepts && a.roles == b.roles;
}

std::string print_assignment(const Assignment& z) {
    std::string out;
    for (const auto& [x, v] : z.objs) out += (out.empty() ? "" : ", ") + ("?" + x) + "=" + print_value(v);
    for (const auto& [x, f] : z.sets)
        out += (out.empty() ? "" : ", ") + x + "=" + print_specifier(Specifier::closed(f));
    return out;
}

SpecValue eval_specifier(const Specifier& s, const Assignment& z) {
    SpecValue out;
    if (s.kind == Specifier::Kind::Var) {
        auto it = z.sets.find(s.var);
        if (it == z.sets.end()) throw UnboundVariable("set variable " + s.var + " is unbound");
        out.core = it->second;
        return out;
    }
    out.open = s.is_open();
    for (const auto& p : s.pairs) {
        switch (p.val.kind) {
            case Value::Kind::Var: {
                auto it = z.objs.find(p.val.name);
                if (it == z.objs.end()) throw UnboundVariable("object variable ?" + p.val.name + " is unbound");
                out.core.push_back({p.attr, it->second});
                break;
            }
            case Value::Kind::Proj: {
                auto it = z.sets.find(p.val.name);
                if (it == z.sets.end()) throw UnboundVariable("set variable " + p.val.name + " is unbound");
                for (const auto& q : it->second)
                    if (q.attr == p.val.attr) out.core.push_back({p.attr, q.val});
                break;
            }
            default:
                out.core.push_back(p);
        }
    }
    canonicalize(out.core);
    return out;
}

SpecValue eval_specifier(const Specifier& s, const FiniteInterpretation&, const Assignment& z) {
    return eval_specifier(s, z);
}

Specifier instantiate(const Specifier& s, const Assignment& z) {
    SpecValue v = eval_specifier(s, z);
    return v.open ? Specifier::open(v.core) : Specifier::closed(v.core);
}

std::set<std::pair<std::string, std::string>> eval_role(const RoleExpr& r, const FiniteInterpretation& i,
                                                        const Assignment& z) {
    SpecValue sv = eval_specifier(r.spec, z);
    std::set<std::pair<std::string, std::string>> out;
    auto it = i.roles.find(r.name);
    if (it != i.roles.end())
        for (const auto& [d, e, f] : it->second)
            if (sv.contains(f)) out.insert(r.inverse ? std::pair{e, d} : std::pair{d, e});
    if (!r.negated) return out;
    std::set<std::pair<std::string, std::string>> comp;
    for (const auto& d : i.individuals)
        for (const auto& e : i.individuals)
            if (!out.count({d, e})) comp.insert({d, e});
    return comp;
}

std::set<std::string> eval_concept(const Basic& b, const FiniteInterpretation& i, const Assignment& z) {
    std::set<std::string> out;
    if (b.kind == Basic::Kind::Exists) {
        for (const auto& [d, e] : eval_role(b.role, i, z)) out.insert(d);
        return out;
    }
    SpecValue sv = eval_specifier(b.spec, z);
    auto it = i.concepts.find(b.name);
    if (it != i.concepts.end())
        for (const auto& [d, f] : it->second)
            if (sv.contains(f)) out.insert(d);
    return out;
}

std::set<std::string> eval_conjunction(const std::vector<Basic>& bs, const FiniteInterpretation& i,
                                       const Assignment& z) {
    std::set<std::string> acc(i.individuals.begin(), i.individuals.end());
    for (const auto& b : bs) {
        auto part = eval_concept(b, i, z);
        std::set<std::string> next;
        std::set_intersection(acc.begin(), acc.end(), part.begin(), part.end(), std::inserter(next, next.end()));
        acc = std::move(next);
    }
    return acc;
}

AnnSet well_typed_pairs(const std::vector<Value>& values, const std::vector<std::string>& extra_attrs) {
    std::set<std::string> attrs(extra_attrs.begin(), extra_attrs.end());
    for (const auto& v : values)
        if (v.kind == Value::Kind::Name) attrs.insert(v.name);
    AnnSet out;
    for (const auto& a : attrs)
        for (const auto& v : values) {
            bool ok = !is_temporal_attr(a)  ? v.kind == Value::Kind::Name
                      : takes_interval(a) ? v.kind == Value::Kind::Interval
                                          : v.kind == Value::Kind::Time;
            if (ok) out.push_back({a, v});
        }
    canonicalize(out);
    return out;
}

namespace {

enum class VarType { Name, Point, Interval };

VarType type_for_attr(const std::string& a) {
    if (!is_temporal_attr(a)) return VarType::Name;
    return takes_interval(a) ? VarType::Interval : VarType::Point;
}

void scan_spec(const Specifier& s, std::map<std::string, VarType>& objs, std::vector<std::string>& sets) {
    if (s.kind == Specifier::Kind::Var && std::find(sets.begin(), sets.end(), s.var) == sets.end())
        sets.push_back(s.var);
    for (const auto& p : s.pairs) {
        if (p.val.kind == Value::Kind::Var) objs.emplace(p.val.name, type_for_attr(p.attr));
        if (p.val.kind == Value::Kind::Proj && std::find(sets.begin(), sets.end(), p.val.name) == sets.end())
            sets.push_back(p.val.name);
    }
}

std::vector<const Specifier*> body_specs(const Axiom& ax) {
    std::vector<const Specifier*> out;
    if (ax.kind == Axiom::Kind::RoleInclusion) {
        out.push_back(&ax.rlhs.spec);
        out.push_back(&ax.rrhs.spec);
        return out;
    }
    auto spec_of = [](const Basic& b) { return b.kind == Basic::Kind::Atomic ? &b.spec : &b.role.spec; };
    for (const auto& b : ax.lhs) out.push_back(spec_of(b));
    if (!ax.rhs_bot) out.push_back(spec_of(ax.rhs));
    return out;
}

std::set<std::string> set_deps(const Specifier& s) {
    std::set<std::string> out;
    if (s.kind == Specifier::Kind::Var) out.insert(s.var);
    for (const auto& p : s.pairs)
        if (p.val.kind == Value::Kind::Proj) out.insert(p.val.name);
    return out;
}

// All sets core ∪ T for T ⊆ extra.
void supersets(const AnnSet& core, const AnnSet& extra, std::size_t limit, std::vector<AnnSet>& out) {
    if (extra.size() > 24 || (std::size_t(1) << extra.size()) > limit)
        throw CapExceeded("set-variable enumeration exceeds the cap (" + std::to_string(extra.size()) +
                          " free pairs)");
    std::size_t n = std::size_t(1) << extra.size();
    for (std::size_t mask = 0; mask < n; ++mask) {
        AnnSet f = core;
        for (std::size_t k = 0; k < extra.size(); ++k)
            if (mask >> k & 1) f.push_back(extra[k]);
        canonicalize(f);
        out.push_back(std::move(f));
    }
}

}  // namespace

std::vector<Assignment> enumerate_compatible(const Axiom& ax, const VarDomain& dom, std::size_t limit) {
    std::map<std::string, VarType> objs;
    std::vector<std::string> sets;
    std::vector<std::pair<std::string, Specifier>> prefix = ax.prefix;
    for (const auto& [x, s] : prefix) {
        if (std::find(sets.begin(), sets.end(), x) == sets.end()) sets.push_back(x);
        scan_spec(s, objs, sets);
    }
    for (const Specifier* s : body_specs(ax)) scan_spec(*s, objs, sets);
    for (const auto& x : sets) {
        bool declared = std::any_of(prefix.begin(), prefix.end(), [&](const auto& e) { return e.first == x; });
        if (!declared) prefix.push_back({x, Specifier::open()});
    }

    std::vector<std::pair<std::string, const std::vector<Value>*>> ranges;
    for (const auto& [x, t] : objs) {
        const auto* r = t == VarType::Name ? &dom.names : t == VarType::Point ? &dom.points : &dom.intervals;
        ranges.push_back({x, r});
    }

    std::vector<Assignment> out;
    std::size_t explored = 0;
    auto bump = [&]() {
        if (++explored > limit) throw CapExceeded("assignment enumeration exceeds the cap");
    };

    std::function<void(std::size_t, Assignment&)> sets_rec = [&](std::size_t i, Assignment& z) {
        if (i == prefix.size()) {
            bump();
            for (const auto& [x, s] : prefix) {
                if (!eval_specifier(s, z).contains(z.sets.at(x))) return;
            }
            out.push_back(z);
            return;
        }
        const auto& [x, s] = prefix[i];
        auto deps = set_deps(s);
        bool ready = !deps.count(x) && s.kind != Specifier::Kind::Var &&
                     std::all_of(deps.begin(), deps.end(), [&](const std::string& d) { return z.sets.count(d) > 0; });
        std::vector<AnnSet> cands;
        if (ready) {
            SpecValue core = eval_specifier(s, z);
            if (!core.open) {
                cands.push_back(core.core);
            } else {
                AnnSet extra;
                std::set_difference(dom.pool.begin(), dom.pool.end(), core.core.begin(), core.core.end(),
                                    std::back_inserter(extra));
                supersets(core.core, extra, limit, cands);
            }
        } else {
            supersets({}, dom.pool, limit, cands);
        }
        for (auto& f : cands) {
            z.sets[x] = std::move(f);
            sets_rec(i + 1, z);
        }
        z.sets.erase(x);
    };

    std::function<void(std::size_t, Assignment&)> objs_rec = [&](std::size_t i, Assignment& z) {
        if (i == ranges.size()) {
            sets_rec(0, z);
            return;
        }
        for (const auto& v : *ranges[i].second) {
            bump();
            z.objs[ranges[i].first] = v;
            objs_rec(i + 1, z);
        }
        z.objs.erase(ranges[i].first);
    };

    Assignment z;
    objs_rec(0, z);
    return out;
}

bool ModelReport::ok() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomCheck& c) { return c.ok; });
}

std::vector<AxiomCheck> ModelReport::failures() const {
    std::vector<AxiomCheck> out;
    for (const auto& c : results)
        if (!c.ok) out.push_back(c);
    return out;
}

namespace {

bool has_open_set_var(const Axiom& ax) {
    std::map<std::string, VarType> objs;
    std::vector<std::string> sets;
    for (const auto& [x, s] : ax.prefix) {
        if (s.is_open()) return true;
        scan_spec(s, objs, sets);
    }
    for (const Specifier* s : body_specs(ax)) scan_spec(*s, objs, sets);
    for (const auto& x : sets) {
        bool declared = std::any_of(ax.prefix.begin(), ax.prefix.end(), [&](const auto& e) { return e.first == x; });
        if (!declared) return true;
    }
    return false;
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return out;
}

}  // namespace

ModelReport check_model(const FiniteInterpretation& i, const Ontology& o, const CheckOptions& opts) {
    ModelReport rep;
    VarDomain dom;
    for (const auto& v : i.annotations) {
        if (v.kind == Value::Kind::Name) dom.names.push_back(v);
        if (v.kind == Value::Kind::Time) dom.points.push_back(v);
        if (v.kind == Value::Kind::Interval) dom.intervals.push_back(v);
    }
    dom.pool = well_typed_pairs(i.annotations);

    for (std::size_t k = 0; k < o.axioms.size(); ++k) {
        const Axiom& ax = o.axioms[k];
        AxiomCheck c;
        c.axiom = k;
        switch (ax.kind) {
            case Axiom::Kind::ConceptAssertion: {
                auto it = i.concepts.find(ax.name);
                AnnSet f = ax.spec.pairs;
                canonicalize(f);
                c.ok = it != i.concepts.end() && it->second.count({i.element(ax.a), f});
                if (!c.ok) c.witness = i.element(ax.a);
                break;
            }
            case Axiom::Kind::RoleAssertion: {
                auto it = i.roles.find(ax.name);
                AnnSet f = ax.spec.pairs;
                canonicalize(f);
                c.ok = it != i.roles.end() && it->second.count({i.element(ax.a), i.element(ax.b), f});
                if (!c.ok) c.witness = "(" + i.element(ax.a) + "," + i.element(ax.b) + ")";
                break;
            }
            default: {
                if (has_open_set_var(ax) && i.annotations.size() > opts.cap)
                    throw CapExceeded("annotation domain has " + std::to_string(i.annotations.size()) +
                                      " elements, cap is " + std::to_string(opts.cap));
                for (const auto& z : enumerate_compatible(ax, dom, std::size_t(1) << 22)) {
                    if (ax.kind == Axiom::Kind::ConceptInclusion) {
                        auto lhs = eval_conjunction(ax.lhs, i, z);
                        std::set<std::string> rhs;
                        if (!ax.rhs_bot) rhs = eval_concept(ax.rhs, i, z);
                        std::set<std::string> bad;
                        std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                            std::inserter(bad, bad.end()));
                        if (!bad.empty()) {
                            c.ok = false;
                            c.witness = join(bad);
                            std::string zs = print_assignment(z);
                            if (!zs.empty()) c.witness += " under " + zs;
                            break;
                        }
                    } else {
                        auto lhs = eval_role(ax.rlhs, i, z);
                        auto rhs = eval_role(ax.rrhs, i, z);
                        for (const auto& p : lhs)
                            if (!rhs.count(p)) {
                                c.ok = false;
                                c.witness = "(" + p.first + "," + p.second + ")";
                                std::string zs = print_assignment(z);
                                if (!zs.empty()) c.witness += " under " + zs;
                                break;
                            }
                        if (!c.ok) break;
                    }
                }
            }
        }
        rep.results.push_back(c);
    }
    return rep;
}

std::string write_interpretation(const FiniteInterpretation& i) {
    std::ostringstream os;
    os << "individuals";
    for (std::size_t k = 0; k < i.individuals.size(); ++k) os << (k ? ", " : " ") << i.individuals[k];
    os << "\nannotations";
    for (std::size_t k = 0; k < i.annotations.size(); ++k) os << (k ? ", " : " ") << print_value(i.annotations[k]);
    os << "\n";
    for (const auto& [n, e] : i.denote) os << "denote " << n << " " << e << "\n";
    for (const auto& [n, ext] : i.concepts)
        for (const auto& [d, f] : ext) os << n << "(" << d << ")@" << print_specifier(Specifier::closed(f)) << "\n";
    for (const auto& [n, ext] : i.roles)
        for (const auto& [d, e, f] : ext)
            os << n << "(" << d << ", " << e << ")@" << print_specifier(Specifier::closed(f)) << "\n";
    return os.str();
}

namespace {

std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Value parse_ground_value(const std::string& t) {
    if (t.empty()) throw SyntaxError({}, "empty annotation value");
    if (t.front() == '[') {
        auto comma = t.find(',');
        return Value::interval(TimePoint(t.substr(1, comma - 1)), TimePoint(t.substr(comma + 1, t.size() - comma - 2)));
    }
    if (std::isdigit(static_cast<unsigned char>(t.front()))) return Value::time(TimePoint(t));
    return Value::named(t);
}

}  // namespace

FiniteInterpretation read_interpretation(const std::string& text) {
    FiniteInterpretation i;
    std::istringstream is(text);
    std::string line, facts;
    while (std::getline(is, line)) {
        auto starts = [&](const std::string& kw) { return line.rfind(kw, 0) == 0; };
        if (starts("individuals")) {
            for (auto& t : split_top(line.substr(11))) i.individuals.push_back(t);
        } else if (starts("annotations")) {
            for (auto& t : split_top(line.substr(11))) i.annotations.push_back(parse_ground_value(t));
        } else if (starts("denote ")) {
            std::istringstream ls(line.substr(7));
            std::string n, e;
            ls >> n >> e;
            i.denote[n] = e;
        } else {
            facts += line + "\n";
        }
    }
    Ontology o = parse_ontology(facts);
    for (const auto& ax : o.axioms) {
        if (ax.kind == Axiom::Kind::ConceptAssertion)
            i.concepts[ax.name].insert({ax.a, ax.spec.pairs});
        else if (ax.kind == Axiom::Kind::RoleAssertion)
            i.roles[ax.name].insert({ax.a, ax.b, ax.spec.pairs});
        else
            throw SyntaxError(ax.pos, "interpretation files contain facts only");
    }
    return i;
}

}  // namespace adl
