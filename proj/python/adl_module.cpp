#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adl/reasoner.hpp"
#include "adl/syntax.hpp"
#include "adl/temporal.hpp"

namespace py = pybind11;
using namespace adl;

namespace {

GroundOptions ground_options(const std::string& mode, std::size_t cap) {
    GroundOptions g;
    if (mode == "exhaustive") g.mode = GroundMode::Exhaustive;
    else if (mode != "pairs") throw py::value_error("mode must be 'pairs' or 'exhaustive'");
    g.cap = cap;
    return g;
}

py::object fraction(const Rational& q) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(q.get_num().get_str() + "/" + q.get_den().get_str());
}

py::list fractions(const Vec& v) {
    py::list out;
    for (const auto& x : v) out.append(fraction(x));
    return out;
}

// Accepts ints, Fractions or "p/q" strings.
Rational to_rational(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

LinearMap to_map(const std::vector<std::vector<py::object>>& rows) {
    std::size_t n = rows.size();
    if (n == 0 || n % 2) throw DimensionMismatch("map needs an even, non-zero number of rows");
    Matrix mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw DimensionMismatch("map matrix is not square");
        for (std::size_t j = 0; j < n; ++j) mat(i, j) = to_rational(rows[i][j]);
    }
    return LinearMap(n / 2, mat);
}

std::string region_label(const RegionKey& k) { return k.name + "@" + print_specifier(k.spec); }

py::dict regions(const std::map<RegionKey, Region>& rs) {
    py::dict out;
    for (const auto& [k, r] : rs) {
        py::list gens;
        for (const auto& g : r.gens) gens.append(fractions(g));
        out[py::str(region_label(k))] = gens;
    }
    return out;
}

py::list failures(const GeoReport& r) {
    py::list out;
    for (const auto& f : r.failures) out.append(py::make_tuple(f.axiom, f.message));
    return out;
}

}  // namespace

PYBIND11_MODULE(_adl, m) {
    m.doc() = "Attributed DL-Lite reasoning with convex geometric models";

    auto base = py::register_exception<AdlError>(m, "AdlError");
    py::register_exception<SyntaxError>(m, "ParseError", base);
    py::register_exception<TypeError>(m, "OntologyTypeError", base);
    py::register_exception<CapExceeded>(m, "CapExceeded", base);
    py::register_exception<Unsatisfiable>(m, "Unsatisfiable", base);
    py::register_exception<RestrictionViolated>(m, "RestrictionViolated", base);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base);
    py::register_exception<UnvalidatedMap>(m, "UnvalidatedMap", base);
    py::register_exception<NegativeRoleInclusionPresent>(m, "NegativeRoleInclusionPresent", base);
    py::register_exception<UnsupportedAttribute>(m, "UnsupportedAttribute", base);

    py::class_<Ontology>(m, "Ontology")
        .def(py::init([](const std::string& text) { return parse_ontology(text); }), py::arg("text"))
        .def_readonly("temporal", &Ontology::temporal)
        .def_property_readonly("individuals",
                               [](const Ontology& o) {
                                   std::set<std::string> out;
                                   for (const auto& a : o.axioms) {
                                       if (!a.is_assertion()) continue;
                                       out.insert(a.a);
                                       if (a.kind == Axiom::Kind::RoleAssertion) out.insert(a.b);
                                   }
                                   return out;
                               })
        .def_readonly("concept_names", &Ontology::concept_names)
        .def_readonly("role_names", &Ontology::role_names)
        .def_property_readonly("axioms",
                               [](const Ontology& o) {
                                   std::vector<std::string> out;
                                   for (const auto& a : o.axioms) out.push_back(print_axiom(a));
                                   return out;
                               })
        .def("__len__", [](const Ontology& o) { return o.axioms.size(); })
        .def("__str__", &print_ontology)
        .def("__eq__", [](const Ontology& x, const Ontology& y) { return x == y; });

    m.def(
        "ground",
        [](const Ontology& o, const std::string& mode, std::size_t cap) {
            return ground_ontology(o, ground_options(mode, cap));
        },
        py::arg("ontology"), py::arg("mode") = "pairs", py::arg("cap") = 4);

    m.def(
        "translate",
        [](const Ontology& o, const std::string& mode, std::size_t cap) {
            PlainOntology p = dllite_translate(ground_ontology(o, ground_options(mode, cap)));
            return py::make_tuple(print_plain(p), print_name_table(p));
        },
        py::arg("ontology"), py::arg("mode") = "pairs", py::arg("cap") = 4,
        "Plain DL-Lite text and the fresh-name table.");

    m.def(
        "is_satisfiable",
        [](const Ontology& o, const std::string& mode, std::size_t cap) {
            if (!o.temporal) return is_satisfiable(o, ground_options(mode, cap));
            TemporalOptions t;
            t.ground = ground_options(mode, cap);
            t.check_restrictions = false;
            return !saturate(dllite_translate(temporal_translate(o, t).dagger)).unsat;
        },
        py::arg("ontology"), py::arg("mode") = "pairs", py::arg("cap") = 4);

    py::class_<GeometricInterpretation>(m, "Model")
        .def_readonly("m", &GeometricInterpretation::m)
        .def_property_readonly("individuals",
                               [](const GeometricInterpretation& g) {
                                   py::dict out;
                                   for (const auto& [a, v] : g.individuals) out[py::str(a)] = fractions(v);
                                   return out;
                               })
        .def_property_readonly("concepts", [](const GeometricInterpretation& g) { return regions(g.concepts); })
        .def_property_readonly("roles", [](const GeometricInterpretation& g) { return regions(g.roles); })
        .def(
            "verify",
            [](const GeometricInterpretation& g, const Ontology& o, const std::string& mode, std::size_t cap) {
                return failures(verify_geometric_model(g, o, ground_options(mode, cap)));
            },
            py::arg("ontology"), py::arg("mode") = "pairs", py::arg("cap") = 4,
            "List of (axiom, message) failures; empty for a model.")
        .def("satisfies", [](const GeometricInterpretation& g, const std::string& axiom) {
            return geometric_satisfies(g, parse_ontology(axiom).axioms.at(0));
        })
        .def("transport", [](const GeometricInterpretation& g, const std::vector<std::vector<py::object>>& rows) {
            return transport_model(g, to_map(rows));
        })
        .def(
            "export",
            [](const GeometricInterpretation& g, const std::string& format) {
                return format == "json" ? export_json(g) : export_text(g);
            },
            py::arg("format") = "text")
        .def("__eq__", [](const GeometricInterpretation& x, const GeometricInterpretation& y) { return x == y; });

    m.def(
        "build_model",
        [](const Ontology& o, std::optional<std::vector<std::vector<py::object>>> map, const std::string& mode,
           std::size_t cap) {
            PlainOntology p = dllite_translate(ground_ontology(o, ground_options(mode, cap)));
            FiniteInterpretation j = finite_model(p);
            return map ? build_geometric_model(j, p, to_map(*map)) : build_geometric_model(j, p);
        },
        py::arg("ontology"), py::arg("map") = py::none(), py::arg("mode") = "pairs", py::arg("cap") = 4);

    m.def("import_model", &import_model, py::arg("text"));

    m.def(
        "validate_linear_map",
        [](const std::vector<std::vector<py::object>>& rows) { return validate_linear_map(to_map(rows)); },
        py::arg("rows"));

    m.def(
        "probe",
        [](const Ontology& o, std::optional<GeometricInterpretation> model, const std::vector<std::string>& role_conj) {
            std::vector<RoleConjunction> extra;
            for (const auto& r : role_conj) extra.push_back(parse_role_conjunction(r));
            py::list out;
            for (const auto& d : midpoint_probe(model ? *model : naive_embedding(o), o, extra)) {
                py::dict e;
                e["point"] = d.point;
                e["coords"] = fractions(d.coords);
                e["violated"] = d.violated;
                e["chain"] = d.chain;
                out.append(e);
            }
            return out;
        },
        py::arg("ontology"), py::arg("model") = py::none(), py::arg("role_conj") = std::vector<std::string>{});

    // ---- temporal ----

    m.def("check_restrictions", [](const Ontology& o) {
        std::vector<std::pair<std::size_t, std::string>> out;
        for (const auto& v : check_temporal_restrictions(o).violations) out.push_back({v.axiom, v.message});
        return out;
    });

    m.def(
        "temporal_implies",
        [](const std::string& p1, const std::string& p2, long kmin, long kmax) {
            TemporalBounds b;
            b.kmin = kmin;
            b.kmax = kmax;
            auto pair = [](const std::string& s) { return parse_specifier("{" + s + "}").pairs.at(0); };
            return temporal_implies(pair(p1), pair(p2), b);
        },
        py::arg("p1"), py::arg("p2"), py::arg("kmin"), py::arg("kmax"),
        "Pairs are written as in specifiers, e.g. 'during:[1,3]'.");

    py::class_<TemporalModelBundle>(m, "Bundle")
        .def_property_readonly("kmin", [](const TemporalModelBundle& b) { return b.bounds.kmin.get_si(); })
        .def_property_readonly("kmax", [](const TemporalModelBundle& b) { return b.bounds.kmax.get_si(); })
        .def_readonly("global_model", &TemporalModelBundle::global)
        .def_property_readonly("times",
                               [](const TemporalModelBundle& b) {
                                   std::vector<long> out;
                                   for (const auto& [j, eta] : b.at) out.push_back(j.get_si());
                                   return out;
                               })
        .def("at", [](const TemporalModelBundle& b, long j) { return b.at.at(TimePoint(j)); })
        .def("check_global",
             [](const TemporalModelBundle& b) {
                 std::vector<std::tuple<std::string, std::string, std::string, std::string>> out;
                 for (const auto& v : check_global(b).violations) out.push_back({v.point, v.attribute, v.time, v.message});
                 return out;
             })
        .def(
            "export",
            [](const TemporalModelBundle& b, const std::string& format) {
                return format == "json" ? export_bundle_json(b) : export_bundle_text(b);
            },
            py::arg("format") = "text")
        .def("__eq__", [](const TemporalModelBundle& x, const TemporalModelBundle& y) { return x == y; });

    m.def("build_temporal_model", [](const Ontology& o) { return build_temporal_model(o); }, py::arg("ontology"));
    m.def("import_bundle", &import_bundle, py::arg("text"));
}
