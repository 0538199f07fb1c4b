#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adl/generate.hpp"
#include "adl/grounding.hpp"
#include "adl/reasoner.hpp"
#include "adl/syntax.hpp"

#include <algorithm>
#include <regex>

using namespace adl;

namespace {

std::size_t inclusions(const Ontology& o) {
    return std::count_if(o.axioms.begin(), o.axioms.end(), [](const Axiom& a) { return a.is_inclusion(); });
}

std::set<std::string> printed(const Ontology& o) {
    std::set<std::string> out;
    for (const auto& a : o.axioms) out.insert(print_axiom(a));
    return out;
}

}  // namespace

TEST_CASE("closed set variable grounds to a single instance") {
    Ontology g = ground_ontology(parse_ontology("X:{p:q} | A@X sub B@{r:s}"));
    REQUIRE(g.axioms.size() == 1);
    CHECK(print_axiom(g.axioms[0]) == print_axiom(parse_ontology("A@{p:q} sub B@{r:s}").axioms[0]));
}

TEST_CASE("object variables range over annotation names") {
    // names p, q, r occur, so ?x has three values
    Ontology o = parse_ontology("A@{p:?x} sub B@{q:?x}\nC(a)@{r:r}");
    CHECK(annotation_domain(o).names().size() == 3);
    CHECK(inclusions(ground_ontology(o)) == 3);
}

TEST_CASE("exhaustive and pairs enumeration") {
    Ontology o = parse_ontology("X:{p:q, ...} | A@X sub B@X");
    REQUIRE(annotation_domain(o).size() == 2);
    GroundOptions ex;
    ex.mode = GroundMode::Exhaustive;
    // three free pairs over {p, q} on top of the core
    CHECK(enumerate_assignments(o.axioms[0], annotation_domain(o), occurring_pairs(o), ex).size() == 8);
    // pairs mode draws only from occurring pairs: just the core here
    CHECK(enumerate_assignments(o.axioms[0], annotation_domain(o), occurring_pairs(o)).size() == 1);
    Ontology two = parse_ontology("X:{p:q, ...} | A@X sub B@{r:s}");
    CHECK(enumerate_assignments(two.axioms[0], annotation_domain(two), occurring_pairs(two)).size() == 2);

    GroundOptions tight = ex;
    tight.cap = 1;
    CHECK_THROWS_AS(ground_ontology(o, tight), CapExceeded);
}

TEST_CASE("instantiation expands projections") {
    Ontology o = parse_ontology("X:{p:q, p:r} | A@{s:X.p} sub B");
    Ontology g = ground_ontology(o);
    REQUIRE(g.axioms.size() == 1);
    CHECK(print_axiom(g.axioms[0]) == print_axiom(parse_ontology("A@{s:q, s:r} sub B").axioms[0]));
}

TEST_CASE("fresh names are stable and well formed") {
    Specifier s = parse_specifier("{p:q}");
    std::string f = fresh_name("A", s);
    CHECK(std::regex_match(f, std::regex("A_[0-9a-f]{16}")));
    CHECK(f == fresh_name("A", parse_specifier("{p:q}")));
    CHECK(f != fresh_name("A", parse_specifier("{p:r}")));
    CHECK(f != fresh_name("B", s));
}

TEST_CASE("translation introduces one name per annotated symbol") {
    Ontology g = ground_ontology(parse_ontology("A(a)@{p:q}\nA@{p:q} sub B\nR(a, b)\nR sub S-"));
    PlainOntology p = dllite_translate(g);
    // the four axioms plus the bridge R@{} sub R@{...}
    CHECK(p.axioms.size() == 5);
    for (const auto& e : p.names) {
        REQUIRE(p.lookup(e.fresh) != nullptr);
        CHECK(p.lookup(e.fresh)->name == e.name);
    }
    CHECK_FALSE(p.has_negative_role_inclusion());
    CHECK(dllite_translate(ground_ontology(parse_ontology("R sub not S"))).has_negative_role_inclusion());
    CHECK(quasi_chained(p));
}

TEST_CASE("grounding is monotone in the ontology") {
    Rng rng(7);
    for (int round = 0; round < 60; ++round) {
        GenOptions g;
        g.annotation_names = 2;
        Ontology o = random_ontology(rng, g);
        Ontology bigger = o;
        Ontology extra = random_ontology(rng, g);
        for (const auto& a : extra.axioms) bigger.axioms.push_back(a);
        recompute_flags(bigger);
        AnnotationDomain dom = annotation_domain(bigger);
        auto small = printed(ground_ontology(o, dom));
        auto large = printed(ground_ontology(bigger, dom));
        CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
}

TEST_CASE("pairs and exhaustive grounding agree on satisfiability") {
    Rng rng(11);
    int sat = 0;
    for (int round = 0; round < 120; ++round) {
        GenOptions g;
        g.individuals = 3;
        g.annotation_names = round % 4 == 3 ? 3 : 2;
        g.negative_roles = round % 3 == 0;
        Ontology o = random_ontology(rng, g);
        GroundOptions ex;
        ex.mode = GroundMode::Exhaustive;
        bool a = is_satisfiable(o), b = is_satisfiable(o, ex);
        CAPTURE(print_ontology(o));
        CHECK(a == b);
        sat += a;
    }
    CHECK(sat > 20);
}

TEST_CASE("translations of generated ontologies are quasi-chained") {
    Rng rng(3);
    for (int round = 0; round < 50; ++round) {
        Ontology o = random_ontology(rng, GenOptions{});
        CHECK(quasi_chained(dllite_translate(ground_ontology(o))));
    }
}
