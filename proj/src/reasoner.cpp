#include "adl/reasoner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace adl {

namespace {

// Basic atoms an individual can hold: a concept, or an outgoing/incoming edge.
struct BasicKey {
    int kind;  // 0 concept, 1 exists forward, 2 exists backward
    int sym;
    auto operator<=>(const BasicKey&) const = default;
};

class Saturator {
public:
    explicit Saturator(const PlainOntology& p) : p_(p) {
        neg_ = p.has_negative_role_inclusion();
        for (std::size_t k = 0; k < p.axioms.size(); ++k) {
            const auto& a = p.axioms[k];
            if (a.kind == PlainAxiom::Kind::ConceptInclusion) {
                Rule r;
                for (const auto& b : a.lhs) r.body.push_back(basic(b));
                r.bot = a.rhs_bot;
                if (!a.rhs_bot) r.head = basic(a.rhs);
                for (int b : r.body) by_body_[b].push_back(rules_.size());
                rules_.push_back(std::move(r));
            } else if (a.kind == PlainAxiom::Kind::RoleInclusion) {
                int l = sym(a.rlhs.name), h = sym(a.rrhs.name);
                RoleRule rr{a.rlhs.inverse, h, a.rrhs.inverse};
                if (a.rrhs.negated)
                    negative_.push_back({l, rr});
                else
                    role_rules_[l].push_back(rr);
            }
        }
    }

    FactBase run() {
        std::set<std::string> named;
        for (const auto& a : p_.axioms) {
            if (a.kind == PlainAxiom::Kind::ConceptAssertion) named.insert(a.a);
            if (a.kind == PlainAxiom::Kind::RoleAssertion) {
                named.insert(a.a);
                named.insert(a.b);
            }
        }
        for (const auto& n : named) individual(n, -1);
        for (const auto& a : p_.axioms) {
            if (a.kind == PlainAxiom::Kind::ConceptAssertion)
                hold(individual(a.a, -1), basic_id({0, sym(a.name)}));
            else if (a.kind == PlainAxiom::Kind::RoleAssertion)
                add_role(sym(a.name), individual(a.a, -1), individual(a.b, -1));
        }
        while (!queue_.empty() && !unsat_) {
            auto [x, b] = queue_.front();
            queue_.pop_front();
            for (std::size_t ri : by_body_[b]) {
                const Rule& r = rules_[ri];
                if (!std::all_of(r.body.begin(), r.body.end(), [&](int c) { return held_[x].count(c) > 0; }))
                    continue;
                if (r.bot) {
                    unsat_ = true;
                    clash_ = "bottom derived for " + inds_[x];
                    break;
                }
                fire(x, r.head);
            }
        }
        if (!unsat_) check_negative();
        return export_facts();
    }

private:
    struct Rule {
        std::vector<int> body;
        bool bot = false;
        int head = -1;
    };
    struct RoleRule {
        bool lhs_inverse;
        int head;
        bool head_inverse;
    };

    const PlainOntology& p_;
    bool neg_ = false;
    std::vector<std::string> syms_;
    std::unordered_map<std::string, int> sym_ids_;
    std::map<BasicKey, int> basic_ids_;
    std::vector<BasicKey> basics_;
    std::vector<Rule> rules_;
    std::unordered_map<int, std::vector<std::size_t>> by_body_;
    std::unordered_map<int, std::vector<RoleRule>> role_rules_;
    std::vector<std::pair<int, RoleRule>> negative_;

    std::vector<std::string> inds_;
    std::vector<int> colour_;
    std::unordered_map<std::string, int> ind_ids_;
    std::vector<std::unordered_set<int>> held_;
    std::set<std::tuple<int, int, int>> roles_;
    std::deque<std::pair<int, int>> queue_;
    bool unsat_ = false;
    std::string clash_;

    int sym(const std::string& s) {
        auto [it, fresh] = sym_ids_.try_emplace(s, static_cast<int>(syms_.size()));
        if (fresh) syms_.push_back(s);
        return it->second;
    }

    int basic_id(BasicKey k) {
        auto [it, fresh] = basic_ids_.try_emplace(k, static_cast<int>(basics_.size()));
        if (fresh) basics_.push_back(k);
        return it->second;
    }

    int basic(const PlainBasic& b) {
        if (!b.exists) return basic_id({0, sym(b.name)});
        return basic_id({b.inverse ? 2 : 1, sym(b.name)});
    }

    int individual(const std::string& name, int colour) {
        auto [it, fresh] = ind_ids_.try_emplace(name, static_cast<int>(inds_.size()));
        if (fresh) {
            inds_.push_back(name);
            colour_.push_back(colour);
            held_.emplace_back();
        }
        return it->second;
    }

    // One witness per (role, direction); with negative role inclusions present
    // the witness also depends on a colour so no edge joins equal witnesses.
    int witness(int role, bool forward, int from) {
        int c = neg_ ? (colour_[from] + 1 + 3) % 3 : 0;
        std::string name = "_w" + std::string(forward ? "f" : "b") + std::to_string(c) + "_" + syms_[role];
        return individual(name, c);
    }

    void hold(int x, int b) {
        if (held_[x].insert(b).second) queue_.push_back({x, b});
    }

    void add_role(int r, int a, int b) {
        if (!roles_.insert({r, a, b}).second) return;
        hold(a, basic_id({1, r}));
        hold(b, basic_id({2, r}));
        auto it = role_rules_.find(r);
        if (it == role_rules_.end()) return;
        for (const RoleRule& rr : it->second) {
            int x = rr.lhs_inverse ? b : a, y = rr.lhs_inverse ? a : b;
            if (rr.head_inverse) std::swap(x, y);
            add_role(rr.head, x, y);
        }
    }

    void fire(int x, int head) {
        BasicKey k = basics_[head];
        if (k.kind == 0) {
            hold(x, head);
        } else if (k.kind == 1) {
            add_role(k.sym, x, witness(k.sym, true, x));
        } else {
            add_role(k.sym, witness(k.sym, false, x), x);
        }
    }

    void check_negative() {
        for (const auto& [l, rr] : negative_)
            for (const auto& [r, a, b] : roles_) {
                if (r != l) continue;
                int x = rr.lhs_inverse ? b : a, y = rr.lhs_inverse ? a : b;
                if (rr.head_inverse) std::swap(x, y);
                if (roles_.count({rr.head, x, y})) {
                    unsat_ = true;
                    clash_ = "negative role inclusion violated by (" + inds_[a] + "," + inds_[b] + ")";
                    return;
                }
            }
    }

    FactBase export_facts() {
        FactBase fb;
        fb.unsat = unsat_;
        fb.clash = clash_;
        std::vector<std::string> named, wit;
        for (std::size_t i = 0; i < inds_.size(); ++i) (colour_[i] < 0 ? named : wit).push_back(inds_[i]);
        std::sort(named.begin(), named.end());
        std::sort(wit.begin(), wit.end());
        fb.individuals = named;
        fb.individuals.insert(fb.individuals.end(), wit.begin(), wit.end());
        for (std::size_t x = 0; x < held_.size(); ++x)
            for (int b : held_[x])
                if (basics_[b].kind == 0) fb.concepts.insert({syms_[basics_[b].sym], inds_[x]});
        for (const auto& [r, a, b] : roles_) fb.roles.insert({syms_[r], inds_[a], inds_[b]});
        return fb;
    }
};

}  // namespace

std::string FactBase::to_facts() const {
    std::ostringstream os;
    os << "individuals";
    for (std::size_t k = 0; k < individuals.size(); ++k) os << (k ? ", " : " ") << individuals[k];
    os << "\n";
    for (const auto& [c, x] : concepts) os << c << "(" << x << ")@{}\n";
    for (const auto& [r, a, b] : roles) os << r << "(" << a << ", " << b << ")@{}\n";
    return os.str();
}

FactBase saturate(const PlainOntology& p) { return Saturator(p).run(); }

bool is_satisfiable(const Ontology& o, const GroundOptions& opts) {
    return !saturate(dllite_translate(ground_ontology(o, opts))).unsat;
}

FiniteInterpretation finite_model(const FactBase& fb) {
    if (fb.unsat) throw Unsatisfiable("ontology is unsatisfiable: " + fb.clash);
    FiniteInterpretation i;
    i.individuals = fb.individuals;
    for (const auto& [c, x] : fb.concepts) i.concepts[c].insert({x, AnnSet{}});
    for (const auto& [r, a, b] : fb.roles) i.roles[r].insert({a, b, AnnSet{}});
    return i;
}

FiniteInterpretation finite_model(const PlainOntology& p) { return finite_model(saturate(p)); }

}  // namespace adl
