#include "adl/geometry.hpp"
#include "adl/syntax.hpp"

#include <json.hpp>

#include <sstream>

namespace adl {

using nlohmann::json;

std::string print_rational(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw SyntaxError({}, "bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

std::string print_vec(const Vec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + print_rational(v[i]);
    return out + ")";
}

namespace {

json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(print_rational(x));
    return a;
}

Vec json_vec(const json& a) {
    Vec v;
    for (const auto& x : a) v.push_back(parse_rational(x.get<std::string>()));
    return v;
}

json regions_json(const std::map<RegionKey, Region>& rs) {
    json arr = json::array();
    for (const auto& [k, r] : rs) {
        json gens = json::array();
        for (const auto& g : r.gens) gens.push_back(vec_json(g));
        arr.push_back({{"name", k.name}, {"spec", print_specifier(k.spec)}, {"generators", gens}});
    }
    return arr;
}

void json_regions(const json& arr, std::size_t dim, std::map<RegionKey, Region>& out) {
    for (const auto& e : arr) {
        std::vector<Vec> gens;
        for (const auto& g : e.at("generators")) gens.push_back(json_vec(g));
        out[{e.at("name").get<std::string>(), canonical(parse_specifier(e.at("spec").get<std::string>()))}] =
            Region(dim, std::move(gens));
    }
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Vec words_vec(const std::string& s) {
    std::istringstream is(s);
    Vec v;
    std::string w;
    while (is >> w) v.push_back(parse_rational(w));
    return v;
}

}  // namespace

std::string export_json(const GeometricInterpretation& eta) {
    json j;
    j["m"] = eta.m;
    json f = json::array();
    for (std::size_t i = 0; i < eta.f.mat.rows; ++i) {
        Vec row(eta.f.mat.a.begin() + i * eta.f.mat.cols, eta.f.mat.a.begin() + (i + 1) * eta.f.mat.cols);
        f.push_back(vec_json(row));
    }
    j["f"] = f;
    json inds = json::object();
    for (const auto& [n, v] : eta.individuals) inds[n] = vec_json(v);
    j["individuals"] = inds;
    j["concepts"] = regions_json(eta.concepts);
    j["roles"] = regions_json(eta.roles);
    return j.dump(1) + "\n";
}

GeometricInterpretation import_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        GeometricInterpretation eta;
        eta.m = j.at("m").get<std::size_t>();
        Matrix mat(2 * eta.m, 2 * eta.m);
        const auto& f = j.at("f");
        if (f.size() != 2 * eta.m) throw DimensionMismatch("matrix of f has the wrong number of rows");
        for (std::size_t i = 0; i < f.size(); ++i) {
            Vec row = json_vec(f[i]);
            if (row.size() != 2 * eta.m) throw DimensionMismatch("matrix of f has a row of the wrong length");
            for (std::size_t c = 0; c < row.size(); ++c) mat(i, c) = row[c];
        }
        eta.f = LinearMap(eta.m, mat);
        for (const auto& [n, v] : j.at("individuals").items()) eta.individuals[n] = json_vec(v);
        json_regions(j.at("concepts"), eta.m, eta.concepts);
        json_regions(j.at("roles"), 2 * eta.m, eta.roles);
        return eta;
    } catch (const json::exception& e) {
        throw SyntaxError({}, std::string("bad model document: ") + e.what());
    }
}

std::string export_text(const GeometricInterpretation& eta) {
    std::ostringstream os;
    os << "m " << eta.m << "\nf\n";
    for (std::size_t i = 0; i < eta.f.mat.rows; ++i) {
        for (std::size_t c = 0; c < eta.f.mat.cols; ++c) os << (c ? " " : "") << print_rational(eta.f.mat(i, c));
        os << "\n";
    }
    for (const auto& [n, v] : eta.individuals) {
        os << "individual " << n;
        for (const auto& x : v) os << " " << print_rational(x);
        os << "\n";
    }
    auto regions = [&](const char* kw, const std::map<RegionKey, Region>& rs) {
        for (const auto& [k, r] : rs) {
            os << kw << " " << k.name << " " << print_specifier(k.spec) << " |";
            for (std::size_t g = 0; g < r.gens.size(); ++g) {
                os << (g ? " ;" : "");
                for (const auto& x : r.gens[g]) os << " " << print_rational(x);
            }
            os << "\n";
        }
    };
    regions("concept", eta.concepts);
    regions("role", eta.roles);
    return os.str();
}

GeometricInterpretation import_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    GeometricInterpretation eta;
    Matrix mat;
    std::size_t row = 0;
    bool in_f = false;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "m") {
            ls >> eta.m;
            mat = Matrix(2 * eta.m, 2 * eta.m);
        } else if (kw == "f") {
            in_f = true;
        } else if (kw == "individual") {
            std::string n, rest;
            ls >> n;
            std::getline(ls, rest);
            eta.individuals[n] = words_vec(rest);
        } else if (kw == "concept" || kw == "role") {
            in_f = false;
            std::string n;
            ls >> n;
            std::string rest;
            std::getline(ls, rest);
            auto bar = rest.rfind('|');
            if (bar == std::string::npos) throw SyntaxError({}, "region line without '|': " + line);
            Specifier s = canonical(parse_specifier(rest.substr(0, bar)));
            std::vector<Vec> gens;
            std::string gtext = rest.substr(bar + 1), part;
            std::istringstream gs(gtext);
            while (std::getline(gs, part, ';'))
                if (!trim(part).empty()) gens.push_back(words_vec(part));
            std::size_t dim = kw == "concept" ? eta.m : 2 * eta.m;
            (kw == "concept" ? eta.concepts : eta.roles)[{n, s}] = Region(dim, std::move(gens));
        } else if (in_f) {
            Vec r = words_vec(line);
            if (row >= mat.rows || r.size() != mat.cols) throw DimensionMismatch("matrix of f has the wrong shape");
            for (std::size_t c = 0; c < r.size(); ++c) mat(row, c) = r[c];
            ++row;
        } else {
            throw SyntaxError({}, "unexpected line in model file: " + line);
        }
    }
    if (row != mat.rows) throw DimensionMismatch("matrix of f has the wrong number of rows");
    eta.f = LinearMap(eta.m, mat);
    return eta;
}

GeometricInterpretation import_model(const std::string& text) {
    auto p = text.find_first_not_of(" \t\r\n");
    if (p != std::string::npos && text[p] == '{') return import_json(text);
    return import_text(text);
}

LinearMap parse_map(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<Vec> rows;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(words_vec(line));
    }
    std::size_t n = rows.size();
    if (n == 0 || n % 2) throw DimensionMismatch("map needs an even, non-zero number of rows");
    Matrix mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw DimensionMismatch("map matrix is not square");
        for (std::size_t c = 0; c < n; ++c) mat(i, c) = rows[i][c];
    }
    return LinearMap(n / 2, mat);
}

}  // namespace adl
