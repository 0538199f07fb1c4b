#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <fstream>
#include <sstream>

using namespace adl;

namespace {

Vec vec(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

Ontology example(const char* name) {
    std::ifstream in(std::string(ADL_EXAMPLES) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return parse_ontology(s.str());
}

std::vector<std::vector<mpz_class>> integer_rows(const Matrix& m) {
    // clear denominators row by row; rank is unchanged
    std::vector<std::vector<mpz_class>> out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols; ++j) {
            mpq_class x = m(i, j) * l;
            out[i].push_back(x.get_num());
        }
    }
    return out;
}

}  // namespace

TEST_CASE("linear map validation") {
    CHECK(validate_linear_map(LinearMap::concatenation(2)));
    CHECK(validate_linear_map(LinearMap::swap_halves(3)));
    Matrix z = Matrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) z(i, 1) = 0;
    CHECK_FALSE(validate_linear_map(LinearMap(2, z)));
    CHECK_THROWS_AS(LinearMap(2, Matrix::identity(3)), DimensionMismatch);

    Rng rng(42);
    for (int k = 0; k < 60; ++k) {
        std::size_t m = 1 + k % 3;
        Matrix a = random_matrix(rng, m, k % 2 == 0);
        bool full = oracle::bareiss_rank(integer_rows(a)) == 2 * m;
        CHECK(validate_linear_map(LinearMap(m, a)) == full);
        CHECK(full == (k % 2 == 1));
    }
}

TEST_CASE("hull membership and disjointness") {
    Region r(2, {vec({1, 0}), vec({0, 1})});
    CHECK(contains_point(r, midpoint(vec({1, 0}), vec({0, 1}))));
    CHECK_FALSE(contains_point(r, vec({1, 1})));
    CHECK_FALSE(contains_point(Region(2, {}), vec({0, 0})));
    CHECK_THROWS_AS(contains_point(r, vec({1})), DimensionMismatch);

    CHECK(regions_disjoint(Region(2, {vec({1, 0})}), Region(2, {vec({0, 1})})));
    CHECK(regions_disjoint(r, Region(2, {})));

    // the time:1 and time:2 role hulls meet at f(mid, mid)
    LinearMap f = LinearMap::concatenation(2);
    Vec e1 = vec({1, 0}), e2 = vec({0, 1});
    Region same(4, {f.apply(e1, e1), f.apply(e2, e2)});
    Region cross(4, {f.apply(e1, e2), f.apply(e2, e1)});
    CHECK_FALSE(regions_disjoint(same, cross));
}

TEST_CASE("one-hot construction") {
    fixture::Pipeline p = fixture::build(parse_ontology("A(a)\nR(a, b)"));
    const GeometricInterpretation& eta = p.eta;
    CHECK(eta.m == 2);
    CHECK(eta.vec("a") == unit_vector(2, 0));
    CHECK(eta.vec("b") == unit_vector(2, 1));
    Specifier closed = Specifier::closed({});
    CHECK(eta.concept_region("A", closed) == Region(2, {unit_vector(2, 0)}));
    CHECK(eta.role_region(RoleExpr{"R", false, false, closed}) ==
          Region(4, {eta.f.apply(unit_vector(2, 0), unit_vector(2, 1))}));

    fixture::Pipeline empty = fixture::build(Ontology{});
    CHECK(empty.eta.m == 1);
    CHECK(empty.eta.concepts.empty());
    CHECK(verify_geometric_model(empty.eta, Ontology{}).ok());

    CHECK_THROWS_AS(fixture::build(parse_ontology("R(a, b)\nR sub not S")), NegativeRoleInclusionPresent);
}

TEST_CASE("chase example and the Phi correspondence") {
    fixture::Pipeline p = fixture::build(example("chase.adl"));
    CHECK(phi_facts(p.eta, p.facts.individuals) == fixture::expected_phi(p));
    CHECK(verify_geometric_model(p.eta, p.o).ok());

    Rng rng(17);
    int built = 0;
    for (int round = 0; round < 60; ++round) {
        Ontology o = random_ontology(rng, GenOptions{});
        fixture::Pipeline q;
        try {
            q = fixture::build(o);
        } catch (const Unsatisfiable&) {
            continue;
        }
        ++built;
        CAPTURE(print_ontology(o));
        CHECK(phi_facts(q.eta, q.facts.individuals) == fixture::expected_phi(q));
        CHECK(verify_geometric_model(q.eta, o).ok());
    }
    CHECK(built > 15);
}

TEST_CASE("geometric satisfaction examples") {
    fixture::Pipeline p = fixture::build(parse_ontology("A(a)\nB(a)"));
    CHECK(geometric_satisfies(p.eta, parse_ontology("A(a)").axioms[0]));
    CHECK(geometric_satisfies(p.eta, parse_ontology("A@{} and B@{} sub A@{}").axioms[0]));
    CHECK_FALSE(geometric_satisfies(p.eta, parse_ontology("A@{} sub C@{}").axioms[0]));

    Ontology ex9 = example("paper_ex9.adl");
    GeometricInterpretation naive = naive_embedding(ex9);
    // A holds at the midpoint, as the temporal reading forces
    naive.concepts[{"A", Specifier::open()}] = Region(2, {midpoint(naive.vec("a"), naive.vec("b"))});
    CHECK_FALSE(geometric_satisfies(naive, ex9.axioms[1]));
}

TEST_CASE("monotonicity and convexity witnesses of built models") {
    Rng rng(23);
    for (int round = 0; round < 40; ++round) {
        fixture::Pipeline p;
        try {
            p = fixture::build(random_ontology(rng, GenOptions{}));
        } catch (const Unsatisfiable&) {
            continue;
        }
        for (const auto* family : {&p.eta.concepts, &p.eta.roles})
            for (const auto& [k1, r1] : *family) {
                for (const auto& [k2, r2] : *family)
                    if (k1.name == k2.name && specifier_implies(k1.spec, k2.spec))
                        for (const auto& g : r1.gens) CHECK(contains_point(r2, g));
                for (const auto& g : r1.gens)
                    for (const auto& h : r1.gens) CHECK(contains_point(r1, midpoint(g, h)));
            }
    }
}

TEST_CASE("mutation: dropping a generator breaks an assertion") {
    Rng rng(29);
    int mutated = 0;
    for (int round = 0; round < 60; ++round) {
        fixture::Pipeline p;
        try {
            p = fixture::build(random_ontology(rng, GenOptions{}));
        } catch (const Unsatisfiable&) {
            continue;
        }
        for (const auto& ax : p.o.axioms) {
            if (ax.kind != Axiom::Kind::ConceptAssertion) continue;
            GeometricInterpretation broken = p.eta;
            Region& r = broken.concepts.at({ax.name, ax.spec});
            std::vector<Vec> gens;
            for (const auto& g : r.gens)
                if (g != broken.vec(ax.a)) gens.push_back(g);
            r = Region(r.dim, gens);
            CHECK_FALSE(verify_ground(broken, p.ground).ok());
            ++mutated;
            break;
        }
    }
    CHECK(mutated > 10);
}

TEST_CASE("transport preserves every verdict") {
    Rng rng(31);
    fixture::Pipeline p = fixture::build(example("chase.adl"));
    CHECK(transport_model(p.eta, p.eta.f) == p.eta);
    GeometricInterpretation swapped = transport_model(p.eta, LinearMap::swap_halves(p.eta.m));
    for (const auto& [k, r] : swapped.roles)
        for (const auto& g : r.gens) {
            Vec u(g.begin(), g.begin() + swapped.m), v(g.begin() + swapped.m, g.end());
            CHECK(contains_point(p.eta.roles.at(k), p.eta.f.apply(v, u)));
        }
    int holds = 0, fails = 0;
    for (int k = 0; k < 100; ++k) {
        Axiom a = fixture::random_ground_axiom(rng, p.eta);
        CAPTURE(print_axiom(a));
        auto v = fixture::verdict(p.eta, a);
        CHECK(v == fixture::verdict(swapped, a));
        holds += v == true;
        fails += v == false;
    }
    CHECK(holds > 10);
    CHECK(fails > 10);
    Matrix singular(2 * p.eta.m, 2 * p.eta.m);
    CHECK_THROWS_AS(transport_model(p.eta, LinearMap(p.eta.m, singular)), UnvalidatedMap);
}

TEST_CASE("induced check is sound and finds the midpoint counterexample") {
    Rng rng(37);
    fixture::Pipeline p = fixture::build(example("employment.adl"));
    std::set<std::string> d;
    for (const auto& v : annotation_domain(p.o).names()) d.insert(v.name);
    for (int k = 0; k < 150; ++k) {
        Axiom a = fixture::random_ground_axiom(rng, p.eta);
        if (fixture::verdict(p.eta, a) == true) CHECK_FALSE(induced_check(p.eta, d, a).violated);
    }
    CHECK_THROWS_AS(induced_check(p.eta, {"*"}, "*", p.o.axioms[0], default_probes(p.eta)), StarCollision);

    Ontology ex9 = example("paper_ex9.adl");
    GeometricInterpretation naive = naive_embedding(ex9);
    naive.concepts[{"A", Specifier::open()}] = Region(2, {midpoint(naive.vec("a"), naive.vec("b"))});
    InducedResult r = induced_check(naive, {}, ex9.axioms[1]);
    REQUIRE(r.violated);
    CHECK(r.witness == midpoint(naive.vec("a"), naive.vec("b")));

    fixture::Pipeline empty = fixture::build(parse_ontology("C(c)"));
    CHECK_FALSE(induced_check(empty.eta, {}, parse_ontology("A sub B").axioms[0]).violated);
}

TEST_CASE("midpoint probes reproduce the convexity counterexamples") {
    Ontology ex9 = example("paper_ex9.adl");
    auto d9 = midpoint_probe(naive_embedding(ex9), ex9);
    REQUIRE(d9.size() == 1);
    CHECK(d9[0].point == "mid(a,b)");
    CHECK(d9[0].violated == "exists R@{time:1} and A sub bot");
    CHECK(d9[0].coords == midpoint(vec({1, 0}), vec({0, 1})));

    Ontology ex10 = example("paper_ex10.adl");
    CHECK(midpoint_probe(naive_embedding(ex10), ex10).empty());
    auto d10 = midpoint_probe(naive_embedding(ex10), ex10, {parse_role_conjunction("R1 and R2 sub R3")});
    REQUIRE(d10.size() == 1);
    CHECK(d10[0].violated == "exists R3 and A sub bot");

    Ontology one = parse_ontology("R(a, a)\nexists R sub bot");
    CHECK(midpoint_probe(naive_embedding(one), one).empty());
}

TEST_CASE("one-hot shortcuts agree with the LP") {
    Rng rng(41);
    for (int round = 0; round < 200; ++round) {
        std::size_t dim = 4;
        auto random_region = [&]() {
            std::vector<Vec> gens;
            for (std::size_t k = 0; k < dim; ++k)
                if (rng() % 2) gens.push_back(unit_vector(dim, k));
            return Region(dim, gens);
        };
        Region a = random_region(), b = random_region();
        REQUIRE(a.one_hot);
        bool lp_subset = std::all_of(a.gens.begin(), a.gens.end(), [&](const Vec& g) { return contains_point(b, g); });
        CHECK(region_subset(a, b) == lp_subset);
        Region both = intersect_one_hot({a, b});
        for (std::size_t k = 0; k < dim; ++k) {
            Vec e = unit_vector(dim, k);
            CHECK(contains_point(both, e) == (contains_point(a, e) && contains_point(b, e)));
        }
        CHECK(regions_disjoint(a, b) == both.empty());
    }
}

TEST_CASE("model files round trip") {
    fixture::Pipeline p = fixture::build(example("employment.adl"));
    Rng rng(3);
    GeometricInterpretation moved = transport_model(p.eta, random_map(rng, p.eta.m));
    for (const auto* eta : {&p.eta, &moved}) {
        CHECK(import_json(export_json(*eta)) == *eta);
        CHECK(import_text(export_text(*eta)) == *eta);
        CHECK(import_model(export_json(*eta)) == *eta);
        CHECK(import_model(export_text(*eta)) == *eta);
    }
    CHECK(print_rational(Rational(3)) == "3/1");
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    CHECK(parse_map("0 1\n1 0") == LinearMap::swap_halves(1));
    CHECK_THROWS_AS(parse_map("1 0 0\n0 1 0\n0 0 1"), DimensionMismatch);
}
