#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adl/syntax.hpp"

#include <fstream>
#include <sstream>

using namespace adl;

namespace {

std::string read_example(const std::string& name) {
    std::ifstream in(std::string(ADL_EXAMPLES) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

bool has_kind(const ValidationReport& r, Violation::Kind k) {
    for (const auto& v : r.violations)
        if (v.kind == k) return true;
    return false;
}

}  // namespace

TEST_CASE("the temporal role counterexample parses into six temporal axioms") {
    Ontology o = parse_ontology(read_example("paper_ex9.adl"));
    CHECK(o.axioms.size() == 6);
    CHECK(o.temporal);
    CHECK(o.role_names.count("R"));
    CHECK(o.concept_names.count("A"));
}

TEST_CASE("empty and comment-only input") {
    CHECK(parse_ontology("").axioms.empty());
    CHECK(parse_ontology("# nothing here\n\n").axioms.empty());
}

TEST_CASE("single concept assertion") {
    Ontology o = parse_ontology("A(a)@{p:q}");
    REQUIRE(o.axioms.size() == 1);
    const Axiom& ax = o.axioms[0];
    CHECK(ax.kind == Axiom::Kind::ConceptAssertion);
    CHECK(ax.name == "A");
    CHECK(ax.a == "a");
    CHECK(ax.spec.kind == Specifier::Kind::Closed);
    REQUIRE(ax.spec.pairs.size() == 1);
    CHECK(ax.spec.pairs[0].attr == "p");
    CHECK(ax.spec.pairs[0].val == Value::named("q"));
    CHECK_FALSE(o.temporal);
}

TEST_CASE("omitted specifiers") {
    Ontology o = parse_ontology("A(a)\nA sub B\nR(a, b)");
    CHECK(o.axioms[0].spec.kind == Specifier::Kind::Closed);
    CHECK(o.axioms[0].spec.pairs.empty());
    CHECK(o.axioms[1].lhs[0].spec.is_open());
    CHECK(o.axioms[1].rhs.spec.is_open());
    CHECK(o.axioms[2].spec.kind == Specifier::Kind::Closed);
}

TEST_CASE("axiom shapes") {
    Ontology o = parse_ontology(
        "role R, S;\n"
        "X:{p:?y, ...}, Y:{...} | A@X and exists R-@Y sub B@{q:X.p, ...};\n"
        "R@{...} sub not S@{p:q}\n"
        "R- sub S\n"
        "A and B sub bot\n"
        "C sub exists R@{p:q, ...}\n");
    REQUIRE(o.axioms.size() == 5);
    const Axiom& ci = o.axioms[0];
    CHECK(ci.kind == Axiom::Kind::ConceptInclusion);
    REQUIRE(ci.prefix.size() == 2);
    CHECK(ci.prefix[0].first == "X");
    CHECK(ci.lhs.size() == 2);
    CHECK(ci.lhs[1].kind == Basic::Kind::Exists);
    CHECK(ci.lhs[1].role.inverse);
    CHECK(ci.rhs.spec.pairs[0].val.kind == Value::Kind::Proj);
    CHECK(o.axioms[1].kind == Axiom::Kind::RoleInclusion);
    CHECK(o.axioms[1].rrhs.negated);
    CHECK(o.axioms[2].rlhs.inverse);
    CHECK(o.axioms[3].rhs_bot);
    CHECK(o.axioms[4].rhs.kind == Basic::Kind::Exists);
}

TEST_CASE("undeclared set variable gets an open prefix entry") {
    Ontology o = parse_ontology("A@X sub B@X");
    REQUIRE(o.axioms[0].prefix.size() == 1);
    CHECK(o.axioms[0].prefix[0].first == "X");
    CHECK(o.axioms[0].prefix[0].second == Specifier::open());
}

TEST_CASE("temporal values") {
    Ontology o = parse_ontology("A(a)@{time:3, during:[1,2]}\nA@{since:100000000000000000000} sub B");
    CHECK(o.temporal);
    const auto& ps = canonical(o.axioms[0].spec).pairs;
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].val.kind == Value::Kind::Interval);
    CHECK(o.axioms[1].lhs[0].spec.pairs[0].val.lo == TimePoint("100000000000000000000"));
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_ontology("A(a)@{p:q}\nB(b)@{p q}");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.pos.line == 2);
        CHECK(e.pos.col > 1);
        CHECK_FALSE(e.expected.empty());
        CHECK(format_error("x.adl", e).rfind("x.adl:2:", 0) == 0);
    }
    CHECK_THROWS_AS(parse_ontology("A sub"), SyntaxError);
    CHECK_THROWS_AS(parse_ontology("A(a)@{p:q"), SyntaxError);
    CHECK_THROWS_AS(parse_ontology("role:x sub B"), SyntaxError);
}

TEST_CASE("ill-typed temporal pairs") {
    CHECK_THROWS_AS(parse_ontology("A(a)@{during:3}"), TypeError);
    CHECK_THROWS_AS(parse_ontology("A(a)@{time:[1,2]}"), TypeError);
    CHECK_THROWS_AS(parse_ontology("A(a)@{during:[3,1]}"), SyntaxError);
    ParseOptions lax;
    lax.typecheck = false;
    Ontology o = parse_ontology("A(a)@{time:[1,2]}", lax);
    auto rep = validate_ontology(o);
    CHECK(has_kind(rep, Violation::Kind::IllTyped));
}

TEST_CASE("object variable safety") {
    CHECK(validate_ontology(parse_ontology("A@{p:?x} sub B@{q:?x}")).ok());
    auto bad = validate_ontology(parse_ontology("A sub B@{q:?x}"));
    CHECK(has_kind(bad, Violation::Kind::UnsafeVariable));
    // variables bound through a set variable's prefix are safe
    CHECK(validate_ontology(parse_ontology("X:{p:?x, ...} | A@X sub B@{q:?x}")).ok());
    // moving the left variable to the right breaks safety
    auto moved = validate_ontology(parse_ontology("A@{p:?x} sub B@{q:?y}"));
    CHECK(has_kind(moved, Violation::Kind::UnsafeVariable));
}

TEST_CASE("individual and annotation names are disjoint") {
    CHECK_THROWS_AS(parse_ontology("A(a)@{p:b}\nB(b)"), SyntaxError);
    // an AST built by hand goes through the validator instead
    Ontology o = parse_ontology("A(a)@{p:q}");
    o.axioms[0].a = "q";
    CHECK(has_kind(validate_ontology(o), Violation::Kind::NameClash));
}

TEST_CASE("specifier implication") {
    auto s = [](const char* t) { return parse_specifier(t); };
    CHECK(specifier_implies(s("{a:b}"), s("{...}")));
    CHECK_FALSE(specifier_implies(s("{a:b, ...}"), s("{a:b}")));
    CHECK(specifier_implies(s("{a:b, c:d}"), s("{a:b, ...}")));
    CHECK_FALSE(specifier_implies(s("{a:b}"), s("{a:b, c:d, ...}")));
    CHECK(specifier_implies(s("{a:b, ...}"), s("{a:b, ...}")));  // reflexive on open
    CHECK_FALSE(specifier_implies(s("{a:b}"), s("{a:b}")));      // never into closed
    CHECK_THROWS_AS(specifier_implies(s("X"), s("{...}")), NonGroundSpecifier);
}

TEST_CASE("specifier implication is transitive on samples") {
    std::vector<Specifier> specs;
    for (const char* t : {"{}", "{...}", "{a:b}", "{a:b, ...}", "{a:b, c:d}", "{a:b, c:d, ...}", "{c:d, ...}"})
        specs.push_back(parse_specifier(t));
    for (const auto& x : specs)
        for (const auto& y : specs)
            for (const auto& z : specs)
                if (specifier_implies(x, y) && specifier_implies(y, z)) CHECK(specifier_implies(x, z));
}

TEST_CASE("print and parse round trip on the corpus") {
    for (const char* f : {"chase.adl", "clash.adl", "paper_ex9.adl", "paper_ex10.adl", "employment.adl",
                          "temporal_shift.adl"}) {
        CAPTURE(f);
        Ontology o = parse_ontology(read_example(f));
        std::string once = print_ontology(o);
        Ontology again = parse_ontology(once);
        CHECK(again == o);
        CHECK(print_ontology(again) == once);
    }
}

TEST_CASE("canonical specifiers sort and deduplicate") {
    Specifier s = canonical(parse_specifier("{c:d, a:b, c:d, ...}"));
    CHECK(print_specifier(s) == "{a:b, c:d, ...}");
}
