#include "adl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace adl {

namespace {

enum class Tok {
    Ident, Number, LBrace, RBrace, LParen, RParen, LBrack, RBrack, Comma, Colon, At, Bar,
    Dot, Ellipsis, Minus, Question, Semi, Sub, And, Exists, Bot, Not, Role, End
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrack: return "'['";
        case Tok::RBrack: return "']'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::At: return "'@'";
        case Tok::Bar: return "'|'";
        case Tok::Dot: return "'.'";
        case Tok::Ellipsis: return "'...'";
        case Tok::Minus: return "'-'";
        case Tok::Question: return "'?'";
        case Tok::Semi: return "';'";
        case Tok::Sub: return "'sub'";
        case Tok::And: return "'and'";
        case Tok::Exists: return "'exists'";
        case Tok::Bot: return "'bot'";
        case Tok::Not: return "'not'";
        case Tok::Role: return "'role'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

std::vector<Token> lex(const std::string& src) {
    static const std::map<std::string, Tok> keywords = {
        {"sub", Tok::Sub}, {"and", Tok::And}, {"exists", Tok::Exists},
        {"bot", Tok::Bot}, {"not", Tok::Not}, {"role", Tok::Role}};
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        SourcePos pos{line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word = src.substr(i, j - i);
            auto kw = keywords.find(word);
            out.push_back({kw == keywords.end() ? Tok::Ident : kw->second, word, pos});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Number, src.substr(i, j - i), pos});
            advance(j - i);
            continue;
        }
        if (src.compare(i, 3, "...") == 0) {
            out.push_back({Tok::Ellipsis, "...", pos});
            advance(3);
            continue;
        }
        Tok t;
        switch (c) {
            case '{': t = Tok::LBrace; break;
            case '}': t = Tok::RBrace; break;
            case '(': t = Tok::LParen; break;
            case ')': t = Tok::RParen; break;
            case '[': t = Tok::LBrack; break;
            case ']': t = Tok::RBrack; break;
            case ',': t = Tok::Comma; break;
            case ':': t = Tok::Colon; break;
            case '@': t = Tok::At; break;
            case '|': t = Tok::Bar; break;
            case '.': t = Tok::Dot; break;
            case '-': t = Tok::Minus; break;
            case '?': t = Tok::Question; break;
            case ';': t = Tok::Semi; break;
            default:
                throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
        }
        out.push_back({t, std::string(1, c), pos});
        advance(1);
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

// An inclusion side before we know whether names are concepts or roles.
struct RawItem {
    bool exists = false;
    bool negated = false;
    std::string name;
    bool inverse = false;
    Specifier spec;
    SourcePos pos;
};

struct RawInclusion {
    std::vector<std::pair<std::string, Specifier>> prefix;
    std::vector<RawItem> lhs;
    bool rhs_bot = false;
    RawItem rhs;
    SourcePos pos;
};

struct RawStmt {
    bool inclusion = false;
    Axiom assertion;
    RawInclusion inc;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {}

    Ontology parse_file() {
        std::vector<RawStmt> stmts;
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::Semi) {
                next();
                continue;
            }
            if (peek().kind == Tok::Role) {
                next();
                declared_roles_.insert(expect(Tok::Ident).text);
                while (accept(Tok::Comma)) declared_roles_.insert(expect(Tok::Ident).text);
                continue;
            }
            stmts.push_back(parse_stmt());
        }
        return resolve(stmts);
    }

    Specifier parse_lone_specifier() {
        Specifier s = parse_spec();
        expect(Tok::End);
        return s;
    }

    RoleConjunction parse_conjunction() {
        RoleConjunction rc;
        rc.body.push_back(parse_role_atom());
        while (accept(Tok::And)) rc.body.push_back(parse_role_atom());
        expect(Tok::Sub);
        rc.head = parse_role_atom();
        expect(Tok::End);
        return rc;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    ParseOptions opts_;
    std::set<std::string> declared_roles_;
    std::map<std::string, SourcePos> ann_names_, ind_names_;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

    bool accept(Tok t) {
        if (peek().kind != t) return false;
        next();
        return true;
    }

    [[noreturn]] void fail(std::vector<Tok> expected) {
        std::vector<std::string> names;
        for (Tok t : expected) names.push_back(tok_name(t));
        std::string msg = "expected ";
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) msg += i + 1 == names.size() ? " or " : ", ";
            msg += names[i];
        }
        const Token& t = peek();
        msg += ", found ";
        msg += t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.pos, msg, names);
    }

    const Token& expect(Tok t) {
        if (peek().kind != t) fail({t});
        return next();
    }

    void note_ann(const std::string& n, SourcePos p) {
        if (ind_names_.count(n))
            throw SyntaxError(p, "'" + n + "' is used both as an individual and as an annotation name");
        ann_names_.emplace(n, p);
    }

    void note_ind(const std::string& n, SourcePos p) {
        if (ann_names_.count(n))
            throw SyntaxError(p, "'" + n + "' is used both as an individual and as an annotation name");
        ind_names_.emplace(n, p);
    }

    TimePoint number(const Token& t) { return TimePoint(t.text, 10); }

    Value parse_value(const std::string& attr, SourcePos attr_pos) {
        const Token& t = peek();
        Value v;
        switch (t.kind) {
            case Tok::Question:
                next();
                v = Value::var(expect(Tok::Ident).text);
                break;
            case Tok::Number:
                v = Value::time(number(next()));
                break;
            case Tok::LBrack: {
                next();
                TimePoint lo = number(expect(Tok::Number));
                expect(Tok::Comma);
                TimePoint hi = number(expect(Tok::Number));
                expect(Tok::RBrack);
                if (lo > hi) throw SyntaxError(t.pos, "interval lower bound exceeds upper bound");
                v = Value::interval(lo, hi);
                break;
            }
            case Tok::Ident: {
                std::string n = next().text;
                if (accept(Tok::Dot)) {
                    const Token& a = expect(Tok::Ident);
                    note_ann(a.text, a.pos);
                    v = Value::proj(n, a.text);
                } else {
                    note_ann(n, t.pos);
                    v = Value::named(n);
                }
                break;
            }
            default:
                fail({Tok::Ident, Tok::Number, Tok::LBrack, Tok::Question});
        }
        if (opts_.typecheck) typecheck(attr, v, attr_pos);
        return v;
    }

    static void typecheck(const std::string& attr, const Value& v, SourcePos p) {
        if (v.kind == Value::Kind::Var || v.kind == Value::Kind::Proj) return;
        bool ok;
        if (!is_temporal_attr(attr))
            ok = v.kind == Value::Kind::Name;
        else if (takes_interval(attr))
            ok = v.kind == Value::Kind::Interval;
        else
            ok = v.kind == Value::Kind::Time;
        if (!ok) {
            std::string want = !is_temporal_attr(attr) ? "an annotation name"
                               : takes_interval(attr)  ? "an interval"
                                                       : "a time point";
            throw TypeError(p, "value of '" + attr + "' must be " + want);
        }
    }

    Specifier parse_braces() {
        expect(Tok::LBrace);
        std::vector<Pair> pairs;
        bool open = false;
        if (accept(Tok::Ellipsis)) {
            open = true;
        } else if (peek().kind != Tok::RBrace) {
            for (;;) {
                const Token& a = expect(Tok::Ident);
                note_ann(a.text, a.pos);
                expect(Tok::Colon);
                Value v = parse_value(a.text, a.pos);
                pairs.push_back({a.text, v});
                if (!accept(Tok::Comma)) break;
                if (accept(Tok::Ellipsis)) {
                    open = true;
                    break;
                }
            }
        }
        expect(Tok::RBrace);
        return open ? Specifier::open(std::move(pairs)) : Specifier::closed(std::move(pairs));
    }

    Specifier parse_spec() {
        if (peek().kind == Tok::Ident) return Specifier::set_var(next().text);
        if (peek().kind == Tok::LBrace) return parse_braces();
        fail({Tok::LBrace, Tok::Ident});
    }

    Specifier opt_spec() { return accept(Tok::At) ? parse_spec() : Specifier::open(); }

    RoleExpr parse_role_atom() {
        RoleExpr r;
        r.name = expect(Tok::Ident).text;
        r.inverse = accept(Tok::Minus);
        r.spec = opt_spec();
        return r;
    }

    RawItem parse_item(bool rhs) {
        RawItem it;
        it.pos = peek().pos;
        if (rhs && accept(Tok::Not)) it.negated = true;
        if (!it.negated && accept(Tok::Exists)) it.exists = true;
        if (peek().kind != Tok::Ident) {
            if (rhs && !it.negated && !it.exists) fail({Tok::Ident, Tok::Exists, Tok::Not, Tok::Bot});
            fail({Tok::Ident});
        }
        it.name = next().text;
        it.inverse = accept(Tok::Minus);
        it.spec = opt_spec();
        return it;
    }

    RawStmt parse_stmt() {
        RawStmt st;
        const Token& first = peek();
        if (first.kind == Tok::Ident && peek(1).kind == Tok::LParen) {
            st.assertion = parse_assertion();
            return st;
        }
        st.inclusion = true;
        RawInclusion& inc = st.inc;
        inc.pos = first.pos;
        if (first.kind == Tok::Ident && peek(1).kind == Tok::Colon) {
            for (;;) {
                std::string x = expect(Tok::Ident).text;
                expect(Tok::Colon);
                inc.prefix.push_back({x, parse_braces()});
                if (accept(Tok::Bar)) break;
                if (!accept(Tok::Comma)) fail({Tok::Comma, Tok::Bar});
            }
        }
        inc.lhs.push_back(parse_item(false));
        while (accept(Tok::And)) inc.lhs.push_back(parse_item(false));
        expect(Tok::Sub);
        if (accept(Tok::Bot))
            inc.rhs_bot = true;
        else
            inc.rhs = parse_item(true);
        return st;
    }

    Axiom parse_assertion() {
        Axiom ax;
        ax.pos = peek().pos;
        ax.name = expect(Tok::Ident).text;
        expect(Tok::LParen);
        const Token& a = expect(Tok::Ident);
        note_ind(a.text, a.pos);
        ax.a = a.text;
        if (accept(Tok::Comma)) {
            const Token& b = expect(Tok::Ident);
            note_ind(b.text, b.pos);
            ax.b = b.text;
            ax.kind = Axiom::Kind::RoleAssertion;
        } else {
            ax.kind = Axiom::Kind::ConceptAssertion;
        }
        expect(Tok::RParen);
        SourcePos sp = peek().pos;
        if (accept(Tok::At)) {
            ax.spec = parse_spec();
            if (ax.spec.kind != Specifier::Kind::Closed || !ax.spec.ground())
                throw SyntaxError(sp, "assertion specifier must be ground and closed");
        } else {
            ax.spec = Specifier::closed({});
        }
        ax.spec = canonical(ax.spec);
        return ax;
    }

    // Decide which names are roles, then build typed axioms.
    Ontology resolve(std::vector<RawStmt>& stmts) {
        std::set<std::string> roles = declared_roles_;
        std::set<std::string> concepts;
        std::map<std::string, SourcePos> first_use;
        for (auto& st : stmts) {
            if (!st.inclusion) {
                auto& set = st.assertion.kind == Axiom::Kind::RoleAssertion ? roles : concepts;
                set.insert(st.assertion.name);
                first_use.emplace(st.assertion.name, st.assertion.pos);
                continue;
            }
            auto note = [&](const RawItem& it) {
                first_use.emplace(it.name, it.pos);
                if (it.exists || it.negated || it.inverse) roles.insert(it.name);
            };
            for (auto& it : st.inc.lhs) note(it);
            if (!st.inc.rhs_bot) note(st.inc.rhs);
            if (st.inc.lhs.size() > 1 || st.inc.rhs_bot) {
                for (auto& it : st.inc.lhs)
                    if (!it.exists) concepts.insert(it.name);
            }
        }
        // single-item inclusions link both sides to the same sort
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& st : stmts) {
                if (!st.inclusion || st.inc.rhs_bot || st.inc.lhs.size() != 1) continue;
                const RawItem& l = st.inc.lhs[0];
                const RawItem& r = st.inc.rhs;
                if (l.exists || r.exists) continue;
                for (auto [x, y] : {std::pair{&l, &r}, std::pair{&r, &l}}) {
                    if (roles.count(x->name) && !roles.count(y->name)) {
                        roles.insert(y->name);
                        changed = true;
                    }
                    if (concepts.count(x->name) && !concepts.count(y->name)) {
                        concepts.insert(y->name);
                        changed = true;
                    }
                }
            }
        }
        for (const auto& r : roles)
            if (concepts.count(r))
                throw SyntaxError(first_use[r], "'" + r + "' is used both as a concept and as a role");

        Ontology o;
        for (auto& st : stmts) {
            if (!st.inclusion) {
                o.axioms.push_back(std::move(st.assertion));
                continue;
            }
            o.axioms.push_back(build_inclusion(st.inc, roles));
        }
        recompute_flags(o);
        for (const auto& r : declared_roles_) o.role_names.insert(r);
        return o;
    }

    static RoleExpr to_role(const RawItem& it) {
        RoleExpr r;
        r.name = it.name;
        r.inverse = it.inverse;
        r.negated = it.negated;
        r.spec = canonical(it.spec);
        return r;
    }

    static Basic to_basic(const RawItem& it, const std::set<std::string>& roles) {
        Basic b;
        if (it.exists) {
            b.kind = Basic::Kind::Exists;
            b.role = to_role(it);
            if (!roles.count(it.name)) throw SyntaxError(it.pos, "'" + it.name + "' is not a role");
        } else {
            if (roles.count(it.name) || it.inverse)
                throw SyntaxError(it.pos, "role '" + it.name + "' used where a concept is expected");
            b.kind = Basic::Kind::Atomic;
            b.name = it.name;
            b.spec = canonical(it.spec);
        }
        return b;
    }

    Axiom build_inclusion(const RawInclusion& inc, const std::set<std::string>& roles) {
        Axiom ax;
        ax.pos = inc.pos;
        for (const auto& [x, s] : inc.prefix) ax.prefix.push_back({x, canonical(s)});
        bool role_inc = inc.lhs.size() == 1 && !inc.rhs_bot && !inc.lhs[0].exists &&
                        roles.count(inc.lhs[0].name);
        if (role_inc) {
            ax.kind = Axiom::Kind::RoleInclusion;
            ax.rlhs = to_role(inc.lhs[0]);
            if (inc.rhs.exists || !roles.count(inc.rhs.name))
                throw SyntaxError(inc.rhs.pos, "right side of a role inclusion must be a role");
            ax.rrhs = to_role(inc.rhs);
        } else {
            ax.kind = Axiom::Kind::ConceptInclusion;
            for (const auto& it : inc.lhs) ax.lhs.push_back(to_basic(it, roles));
            ax.rhs_bot = inc.rhs_bot;
            if (!inc.rhs_bot) {
                if (inc.rhs.negated)
                    throw SyntaxError(inc.rhs.pos, "negation is only allowed on role inclusions");
                ax.rhs = to_basic(inc.rhs, roles);
            }
        }
        add_implicit_prefix(ax);
        return ax;
    }

    // Set variables used without a prefix entry range over all annotation sets.
    static void add_implicit_prefix(Axiom& ax) {
        std::set<std::string> declared;
        for (const auto& [x, s] : ax.prefix) declared.insert(x);
        std::vector<std::string> missing;
        auto need = [&](const std::string& x) {
            if (!declared.count(x)) {
                declared.insert(x);
                missing.push_back(x);
            }
        };
        auto scan = [&](const Specifier& s) {
            if (s.kind == Specifier::Kind::Var) need(s.var);
            for (const auto& p : s.pairs)
                if (p.val.kind == Value::Kind::Proj) need(p.val.name);
        };
        for (const auto& [x, s] : ax.prefix) scan(s);
        if (ax.kind == Axiom::Kind::RoleInclusion) {
            scan(ax.rlhs.spec);
            scan(ax.rrhs.spec);
        } else {
            for (const auto& b : ax.lhs) scan(b.kind == Basic::Kind::Atomic ? b.spec : b.role.spec);
            if (!ax.rhs_bot) scan(ax.rhs.kind == Basic::Kind::Atomic ? ax.rhs.spec : ax.rhs.role.spec);
        }
        for (const auto& x : missing) ax.prefix.push_back({x, Specifier::open()});
    }
};

bool is_plain_open(const Specifier& s) { return s.kind == Specifier::Kind::Open && s.pairs.empty(); }

void collect_vars(const Specifier& s, std::set<std::string>& objs, std::set<std::string>& sets) {
    if (s.kind == Specifier::Kind::Var) sets.insert(s.var);
    for (const auto& p : s.pairs) {
        if (p.val.kind == Value::Kind::Var) objs.insert(p.val.name);
        if (p.val.kind == Value::Kind::Proj) sets.insert(p.val.name);
    }
}

}  // namespace

Ontology parse_ontology(const std::string& text, const ParseOptions& opts) {
    Parser p(lex(text), opts);
    return p.parse_file();
}

Specifier parse_specifier(const std::string& text) {
    Parser p(lex(text), {});
    return p.parse_lone_specifier();
}

RoleConjunction parse_role_conjunction(const std::string& text) {
    Parser p(lex(text), {});
    return p.parse_conjunction();
}

std::string print_value(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Name: return v.name;
        case Value::Kind::Var: return "?" + v.name;
        case Value::Kind::Proj: return v.name + "." + v.attr;
        case Value::Kind::Time: return v.lo.get_str();
        case Value::Kind::Interval: return "[" + v.lo.get_str() + "," + v.hi.get_str() + "]";
    }
    return "";
}

std::string print_specifier(const Specifier& s) {
    if (s.kind == Specifier::Kind::Var) return s.var;
    std::string out = "{";
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        if (i) out += ", ";
        out += s.pairs[i].attr + ":" + print_value(s.pairs[i].val);
    }
    if (s.is_open()) out += s.pairs.empty() ? "..." : ", ...";
    return out + "}";
}

std::string print_role(const RoleExpr& r) {
    std::string out = r.negated ? "not " : "";
    out += r.name;
    if (r.inverse) out += "-";
    if (!is_plain_open(r.spec)) out += "@" + print_specifier(r.spec);
    return out;
}

std::string print_basic(const Basic& b) {
    if (b.kind == Basic::Kind::Exists) return "exists " + print_role(b.role);
    std::string out = b.name;
    if (!is_plain_open(b.spec)) out += "@" + print_specifier(b.spec);
    return out;
}

std::string print_axiom(const Axiom& a) {
    switch (a.kind) {
        case Axiom::Kind::ConceptAssertion:
            return a.name + "(" + a.a + ")@" + print_specifier(a.spec);
        case Axiom::Kind::RoleAssertion:
            return a.name + "(" + a.a + ", " + a.b + ")@" + print_specifier(a.spec);
        default:
            break;
    }
    std::string out;
    for (std::size_t i = 0; i < a.prefix.size(); ++i) {
        out += (i ? ", " : "") + a.prefix[i].first + ":" + print_specifier(a.prefix[i].second);
    }
    if (!a.prefix.empty()) out += " | ";
    if (a.kind == Axiom::Kind::RoleInclusion) return out + print_role(a.rlhs) + " sub " + print_role(a.rrhs);
    for (std::size_t i = 0; i < a.lhs.size(); ++i) out += (i ? " and " : "") + print_basic(a.lhs[i]);
    return out + " sub " + (a.rhs_bot ? "bot" : print_basic(a.rhs));
}

std::string print_ontology(const Ontology& o) {
    std::set<std::string> inc_roles;
    for (const auto& ax : o.axioms)
        if (ax.kind == Axiom::Kind::RoleInclusion) {
            inc_roles.insert(ax.rlhs.name);
            inc_roles.insert(ax.rrhs.name);
        }
    std::string out;
    if (!inc_roles.empty()) {
        out += "role ";
        bool first = true;
        for (const auto& r : inc_roles) {
            out += (first ? "" : ", ") + r;
            first = false;
        }
        out += "\n";
    }
    for (const auto& ax : o.axioms) out += print_axiom(ax) + "\n";
    return out;
}

ValidationReport validate_ontology(const Ontology& o) {
    ValidationReport rep;
    auto report = [&](std::size_t i, Violation::Kind k, std::string msg) {
        rep.violations.push_back({i, k, std::move(msg)});
    };
    auto check_types = [&](std::size_t i, const Specifier& s) {
        for (const auto& p : s.pairs) {
            const Value& v = p.val;
            if (v.kind == Value::Kind::Var || v.kind == Value::Kind::Proj) continue;
            if (!is_temporal_attr(p.attr)) {
                if (v.kind != Value::Kind::Name)
                    report(i, Violation::Kind::IllTyped,
                           "value of '" + p.attr + "' must be an annotation name, got " + print_value(v));
            } else if (takes_interval(p.attr)) {
                if (v.kind != Value::Kind::Interval)
                    report(i, Violation::Kind::IllTyped,
                           "valtype(" + p.attr + ") is interval, got " + print_value(v));
            } else if (v.kind != Value::Kind::Time) {
                report(i, Violation::Kind::IllTyped,
                       "valtype(" + p.attr + ") is time point, got " + print_value(v));
            }
        }
    };

    std::set<std::string> ind, ann;
    for (std::size_t i = 0; i < o.axioms.size(); ++i) {
        const Axiom& ax = o.axioms[i];
        std::vector<const Specifier*> specs;
        for (const auto& [x, s] : ax.prefix) specs.push_back(&s);
        if (ax.is_assertion()) {
            specs.push_back(&ax.spec);
            ind.insert(ax.a);
            if (!ax.b.empty()) ind.insert(ax.b);
        }
        std::set<std::string> lobj, lset, robj, rset;
        auto spec_of = [](const Basic& b) -> const Specifier& {
            return b.kind == Basic::Kind::Atomic ? b.spec : b.role.spec;
        };
        if (ax.kind == Axiom::Kind::ConceptInclusion) {
            for (const auto& b : ax.lhs) {
                specs.push_back(&spec_of(b));
                collect_vars(spec_of(b), lobj, lset);
            }
            if (!ax.rhs_bot) {
                specs.push_back(&spec_of(ax.rhs));
                collect_vars(spec_of(ax.rhs), robj, rset);
            }
        } else if (ax.kind == Axiom::Kind::RoleInclusion) {
            specs.push_back(&ax.rlhs.spec);
            specs.push_back(&ax.rrhs.spec);
            collect_vars(ax.rlhs.spec, lobj, lset);
            collect_vars(ax.rrhs.spec, robj, rset);
        }
        for (const Specifier* s : specs) {
            check_types(i, *s);
            for (const auto& p : s->pairs) {
                ann.insert(p.attr);
                if (p.val.kind == Value::Kind::Name) ann.insert(p.val.name);
                if (p.val.kind == Value::Kind::Proj) ann.insert(p.val.attr);
            }
        }
        if (!ax.is_inclusion()) continue;

        std::map<std::string, const Specifier*> prefix;
        for (const auto& [x, s] : ax.prefix) prefix[x] = &s;
        for (const auto& x : lset)
            if (!prefix.count(x))
                report(i, Violation::Kind::UndeclaredSetVar, "set variable " + x + " is not declared");
        for (const auto& x : rset)
            if (!prefix.count(x))
                report(i, Violation::Kind::UndeclaredSetVar, "set variable " + x + " is not declared");

        // object variables reachable from the left side
        std::set<std::string> safe = lobj;
        for (const auto& x : lset)
            if (prefix.count(x)) {
                std::set<std::string> o2, s2;
                collect_vars(*prefix[x], o2, s2);
                safe.insert(o2.begin(), o2.end());
            }
        std::set<std::string> need = robj;
        for (const auto& x : rset)
            if (prefix.count(x) && !lset.count(x)) {
                std::set<std::string> o2, s2;
                collect_vars(*prefix[x], o2, s2);
                need.insert(o2.begin(), o2.end());
            }
        for (const auto& v : need)
            if (!safe.count(v))
                report(i, Violation::Kind::UnsafeVariable, "unsafe variable " + v);
    }
    for (const auto& n : ind)
        if (ann.count(n))
            report(0, Violation::Kind::NameClash,
                   "'" + n + "' is used both as an individual and as an annotation name");
    return rep;
}

bool specifier_implies(const Specifier& s, const Specifier& t) {
    if (!s.ground() || !t.ground()) throw NonGroundSpecifier("specifier_implies needs ground specifiers");
    if (!t.is_open()) return false;
    AnnSet a = s.pairs, b = t.pairs;
    canonicalize(a);
    canonicalize(b);
    return is_subset(b, a);
}

std::string format_error(const std::string& file, const AdlError& e) {
    SourcePos p;
    if (auto* se = dynamic_cast<const SyntaxError*>(&e)) p = se->pos;
    if (auto* te = dynamic_cast<const TypeError*>(&e)) p = te->pos;
    std::ostringstream os;
    os << file << ":" << p.line << ":" << p.col << ": " << e.what();
    return os.str();
}

}  // namespace adl
