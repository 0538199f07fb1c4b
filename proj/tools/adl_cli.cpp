// adl: command-line front end for the attributed DL-Lite pipeline.

#include "adl/generate.hpp"
#include "adl/geometry.hpp"
#include "adl/grounding.hpp"
#include "adl/reasoner.hpp"
#include "adl/semantics.hpp"
#include "adl/syntax.hpp"
#include "adl/temporal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace adl;

namespace {

enum Exit { Ok = 0, Fail = 1, Input = 2, Internal = 3 };

struct Config {
    std::string mode = "pairs";
    std::size_t cap = 4;
    std::string map_file;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::string out;
    std::vector<std::string> role_conj;
    std::string file, model;
    std::size_t count = 100;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_to(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + path);
}

GroundOptions ground_opts(const Config& c) {
    GroundOptions g;
    g.mode = c.mode == "exhaustive" ? GroundMode::Exhaustive : GroundMode::Pairs;
    g.cap = c.cap;
    return g;
}

TemporalOptions temporal_opts(const Config& c, bool restrictions = true) {
    TemporalOptions t;
    t.ground = ground_opts(c);
    t.check_restrictions = restrictions;
    if (c.mode == "exhaustive") t.cap = c.cap;
    return t;
}

Ontology load(const Config& c) {
    Ontology o = parse_ontology(slurp(c.file));
    auto rep = validate_ontology(o);
    if (!rep.ok()) {
        for (const auto& v : rep.violations) std::cerr << c.file << ": axiom " << v.axiom + 1 << ": " << v.message << "\n";
        throw TypeError({}, "ontology failed validation");
    }
    return o;
}

bool json_out(const Config& c) { return c.format == "json"; }

int cmd_parse(const Config& c) {
    Ontology o = load(c);
    if (json_out(c)) {
        nlohmann::json j;
        j["temporal"] = o.temporal;
        j["concepts"] = o.concept_names;
        j["roles"] = o.role_names;
        nlohmann::json axs = nlohmann::json::array();
        for (const auto& ax : o.axioms) axs.push_back(print_axiom(ax));
        j["axioms"] = axs;
        write_to(c.out, j.dump(1) + "\n");
    } else {
        write_to(c.out, print_ontology(o));
    }
    return Ok;
}

int cmd_sat(const Config& c) {
    Ontology o = load(c);
    FactBase fb;
    if (o.temporal) {
        // satisfiability does not need the convexity restrictions
        auto tr = temporal_translate(o, temporal_opts(c, false));
        fb = saturate(dllite_translate(tr.dagger));
    } else {
        fb = saturate(dllite_translate(ground_ontology(o, ground_opts(c))));
    }
    if (json_out(c)) {
        nlohmann::json j{{"satisfiable", !fb.unsat}};
        if (fb.unsat) j["reason"] = fb.clash;
        write_to(c.out, j.dump() + "\n");
    } else {
        write_to(c.out, fb.unsat ? "unsatisfiable\n" : "satisfiable\n");
        if (fb.unsat) std::cerr << "reason: " << fb.clash << "\n";
    }
    return fb.unsat ? Fail : Ok;
}

Ontology grounded(const Ontology& o, const Config& c) {
    if (o.temporal) return temporal_translate(o, temporal_opts(c, false)).grounded;
    return ground_ontology(o, ground_opts(c));
}

int cmd_ground(const Config& c) {
    Ontology o = load(c);
    Ontology g = grounded(o, c);
    PlainOntology p = dllite_translate(g);
    write_to(c.out, print_ontology(g));
    if (!c.out.empty() && c.out != "-") write_to(c.out + ".names", print_name_table(p));
    return Ok;
}

int cmd_translate(const Config& c) {
    Ontology o = load(c);
    Ontology src = o.temporal ? temporal_translate(o, temporal_opts(c, false)).dagger : ground_ontology(o, ground_opts(c));
    PlainOntology p = dllite_translate(src);
    if (json_out(c)) {
        nlohmann::json j;
        j["axioms"] = print_plain(p);
        nlohmann::json names = nlohmann::json::array();
        for (const auto& n : p.names)
            names.push_back({{"fresh", n.fresh}, {"name", n.name}, {"spec", print_specifier(n.spec)}, {"role", n.role}});
        j["names"] = names;
        j["quasi_chained"] = quasi_chained(p);
        write_to(c.out, j.dump(1) + "\n");
    } else {
        write_to(c.out, print_plain(p) + "# names\n" + print_name_table(p));
    }
    return Ok;
}

LinearMap chosen_map(const Config& c, std::size_t m) {
    if (c.map_file.empty()) return LinearMap::concatenation(m);
    LinearMap f = parse_map(slurp(c.map_file));
    if (f.m != m) throw DimensionMismatch("map has m = " + std::to_string(f.m) + ", model needs m = " + std::to_string(m));
    if (!validate_linear_map(f)) throw UnvalidatedMap("map from " + c.map_file + " is not injective on each half with independent images");
    return f;
}

int cmd_build(const Config& c) {
    Ontology o = load(c);
    if (o.temporal) {
        auto rep = check_temporal_restrictions(o);
        if (!rep.ok()) {
            for (const auto& v : rep.violations) std::cerr << "axiom " << v.axiom + 1 << ": " << v.message << "\n";
            throw RestrictionViolated("restriction violated: " + rep.violations.front().message);
        }
        TemporalBuild b = build_temporal(o, temporal_opts(c));
        if (!c.map_file.empty()) {
            LinearMap f = chosen_map(c, b.bundle.global.m);
            b.bundle.global = transport_model(b.bundle.global, f);
            for (auto& [j, e] : b.bundle.at) e = transport_model(e, f);
        }
        write_to(c.out, json_out(c) ? export_bundle_json(b.bundle) : export_bundle_text(b.bundle));
        return Ok;
    }
    PlainOntology p = dllite_translate(ground_ontology(o, ground_opts(c)));
    FactBase fb = saturate(p);
    if (fb.unsat) {
        std::cerr << "unsatisfiable: " << fb.clash << "\n";
        return Fail;
    }
    FiniteInterpretation j = finite_model(fb);
    std::size_t m = std::max<std::size_t>(1, j.individuals.size());
    GeometricInterpretation eta = build_geometric_model(j, p, chosen_map(c, m));
    write_to(c.out, json_out(c) ? export_json(eta) : export_text(eta));
    return Ok;
}

bool looks_like_bundle(const std::string& text) {
    auto p = text.find_first_not_of(" \t\r\n");
    if (p == std::string::npos) return false;
    if (text[p] == '{') return nlohmann::json::parse(text, nullptr, false).contains("global");
    return text.compare(p, 9, "== global") == 0;
}

int report_failures(const Config& c, const std::vector<std::pair<std::string, std::string>>& fails, std::size_t checked) {
    if (json_out(c)) {
        nlohmann::json j{{"ok", fails.empty()}, {"checked", checked}, {"failures", nlohmann::json::array()}};
        for (const auto& [a, m] : fails) j["failures"].push_back({{"axiom", a}, {"message", m}});
        write_to(c.out, j.dump(1) + "\n");
    } else {
        std::string s;
        for (const auto& [a, m] : fails) s += "FAIL " + a + ": " + m + "\n";
        s += (fails.empty() ? "ok" : "failed") + std::string(" (") + std::to_string(checked) + " checks)\n";
        write_to(c.out, s);
    }
    return fails.empty() ? Ok : Fail;
}

int cmd_verify(const Config& c) {
    Ontology o = load(c);
    std::string text = slurp(c.model);
    std::vector<std::pair<std::string, std::string>> fails;
    std::size_t checked = 0;
    if (looks_like_bundle(text)) {
        TemporalModelBundle b = import_bundle(text);
        auto tr = temporal_translate(o, temporal_opts(c));
        auto gr = verify_ground(b.global, tr.grounded);
        for (const auto& f : gr.failures) fails.push_back({f.axiom, f.message});
        auto gl = check_global(b);
        for (const auto& v : gl.violations) fails.push_back({"global " + v.point, v.message});
        checked = gr.checked + gl.checked;
    } else {
        if (o.temporal) throw TypeError({}, "temporal ontology needs a temporal model bundle");
        GeometricInterpretation eta = import_model(text);
        auto rep = verify_geometric_model(eta, o, ground_opts(c));
        for (const auto& f : rep.failures) fails.push_back({f.axiom, f.message});
        checked = rep.checked;
    }
    return report_failures(c, fails, checked);
}

int cmd_probe(const Config& c) {
    Ontology o = load(c);
    std::vector<RoleConjunction> extra;
    for (const auto& r : c.role_conj) extra.push_back(parse_role_conjunction(r));
    GeometricInterpretation eta = c.model.empty() ? naive_embedding(o) : import_model(slurp(c.model));
    auto diags = midpoint_probe(eta, o, extra);
    if (json_out(c)) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& d : diags)
            arr.push_back({{"point", d.point}, {"coords", print_vec(d.coords)}, {"violated", d.violated}, {"chain", d.chain}});
        write_to(c.out, arr.dump(1) + "\n");
    } else {
        std::string s;
        for (const auto& d : diags) {
            s += "point " + d.point + " " + print_vec(d.coords) + "\n";
            for (const auto& step : d.chain) s += "  " + step + "\n";
        }
        if (diags.empty()) s = "no midpoint violations\n";
        write_to(c.out, s);
    }
    return diags.empty() ? Ok : Fail;
}

int cmd_export(const Config& c) {
    std::string text = slurp(c.model);
    if (looks_like_bundle(text)) {
        auto b = import_bundle(text);
        write_to(c.out, json_out(c) ? export_bundle_json(b) : export_bundle_text(b));
    } else {
        auto eta = import_model(text);
        write_to(c.out, json_out(c) ? export_json(eta) : export_text(eta));
    }
    return Ok;
}

// Random ontologies through the whole pipeline, checked against the standard semantics.
int cmd_fuzz(const Config& c) {
    Rng rng(c.seed);
    std::size_t bad = 0, sat = 0;
    for (std::size_t i = 0; i < c.count; ++i) {
        std::string src = random_ontology_text(rng);
        Ontology o = parse_ontology(src);
        PlainOntology p = dllite_translate(ground_ontology(o, ground_opts(c)));
        FactBase fb = saturate(p);
        if (fb.unsat) continue;
        ++sat;
        FiniteInterpretation j = finite_model(fb);
        auto eta = build_geometric_model(j, p);
        auto rep = verify_geometric_model(eta, o, ground_opts(c));
        if (!rep.ok()) {
            ++bad;
            std::cerr << "# case " << i << " fails verification\n" << src;
        }
    }
    write_to(c.out, std::to_string(c.count) + " cases, " + std::to_string(sat) + " satisfiable, " +
                        std::to_string(bad) + " failures\n");
    return bad ? Fail : Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attributed DL-Lite reasoner with convex geometric models"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* s) {
        s->add_option("--mode", c.mode, "grounding mode")->check(CLI::IsMember({"exhaustive", "pairs"}));
        s->add_option("--cap", c.cap, "exhaustive enumeration cap")->check(CLI::PositiveNumber);
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
        s->add_option("-o,--output", c.out, "output file (default stdout)");
    };
    std::map<CLI::App*, int (*)(const Config&)> handlers;
    auto sub = [&](const char* name, const char* help, int (*h)(const Config&)) {
        auto* s = app.add_subcommand(name, help);
        common(s);
        handlers[s] = h;
        return s;
    };
    sub("parse", "parse and print the canonical ontology", cmd_parse)->add_option("file", c.file)->required();
    sub("sat", "decide satisfiability", cmd_sat)->add_option("file", c.file)->required();
    sub("ground", "print the grounded ontology", cmd_ground)->add_option("file", c.file)->required();
    sub("translate", "print the plain DL-Lite translation", cmd_translate)->add_option("file", c.file)->required();
    auto* build = sub("build-model", "build a convex geometric model", cmd_build);
    build->add_option("file", c.file)->required();
    build->add_option("--map", c.map_file, "rational 2m x 2m matrix for f");
    auto* verify = sub("verify", "check a model against an ontology", cmd_verify);
    verify->add_option("file", c.file)->required();
    verify->add_option("model", c.model)->required();
    auto* probe = sub("probe", "midpoint convexity probe", cmd_probe);
    probe->add_option("file", c.file)->required();
    probe->add_option("model", c.model, "model file (default: one-hot embedding of the assertions)");
    probe->add_option("--role-conj", c.role_conj, "extra rule such as \"R1 and R2 sub R3\"");
    sub("export", "convert a model between formats", cmd_export)->add_option("model", c.model)->required();
    auto* fuzz = sub("fuzz", "random end-to-end checks", cmd_fuzz);
    fuzz->add_option("--seed", c.seed);
    fuzz->add_option("--count", c.count);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : Input;
    }
    try {
        for (auto& [s, h] : handlers)
            if (s->parsed()) return h(c);
        return Input;
    } catch (const Unsatisfiable& e) {
        std::cerr << "unsatisfiable: " << e.what() << "\n";
        return Fail;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Internal;
    } catch (const SyntaxError& e) {
        std::cerr << format_error(c.file, e) << "\n";
        return Input;
    } catch (const TypeError& e) {
        std::cerr << (e.pos.line ? format_error(c.file, e) : c.file + ": " + e.what()) << "\n";
        return Input;
    } catch (const AdlError& e) {
        std::cerr << e.what() << "\n";
        return Input;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad model document: " << e.what() << "\n";
        return Input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Input;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
}
