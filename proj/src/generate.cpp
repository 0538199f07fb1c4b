#include "adl/generate.hpp"

#include "adl/syntax.hpp"

#include <sstream>

namespace adl {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct Vocab {
    std::vector<std::string> inds, concepts, roles, values;
    std::string attr;  // empty when the annotation budget is zero

    Vocab(std::size_t ni, std::size_t nc, std::size_t nr, std::size_t na) {
        for (std::size_t i = 0; i < std::max<std::size_t>(ni, 1); ++i) inds.push_back("i" + std::to_string(i));
        for (std::size_t i = 0; i < std::max<std::size_t>(nc, 1); ++i) concepts.push_back(std::string(1, char('A' + i)));
        const char* rn[] = {"R", "S", "T", "U"};
        for (std::size_t i = 0; i < std::clamp<std::size_t>(nr, 1, 4); ++i) roles.push_back(rn[i]);
        if (na >= 1) attr = "p";
        if (na == 1) values = {"p"};
        if (na >= 2) values.push_back("u");
        if (na >= 3) values.push_back("v");
    }

    // Ground pair lists over the vocabulary.
    std::string pairs(Rng& rng) const {
        if (attr.empty() || coin(rng, 0.4)) return "";
        std::string out = attr + ":" + values[pick(rng, values.size())];
        if (values.size() > 1 && coin(rng, 0.25)) out = attr + ":" + values[0] + ", " + attr + ":" + values[1];
        return out;
    }
    std::string closed(Rng& rng) const { return "{" + pairs(rng) + "}"; }
    std::string open(Rng& rng) const {
        std::string p = pairs(rng);
        return p.empty() ? "{...}" : "{" + p + ", ...}";
    }
    std::string spec(Rng& rng) const { return coin(rng, 0.6) ? open(rng) : closed(rng); }

    const std::string& concept_name(Rng& rng) const { return concepts[pick(rng, concepts.size())]; }
    const std::string& role(Rng& rng) const { return roles[pick(rng, roles.size())]; }
    std::string role_expr(Rng& rng) const { return role(rng) + (coin(rng, 0.3) ? "-" : ""); }
    std::string basic(Rng& rng) const {
        if (coin(rng, 0.3)) return "exists " + role_expr(rng) + "@" + spec(rng);
        return concept_name(rng) + "@" + spec(rng);
    }
};

}  // namespace

std::string random_ontology_text(Rng& rng, const GenOptions& opts) {
    Vocab v(opts.individuals, opts.concept_names, opts.role_names, opts.annotation_names);
    std::ostringstream os;
    bool ann = !v.attr.empty();
    for (std::size_t k = 0; k < opts.inclusions; ++k) {
        std::size_t form = pick(rng, 10);
        if (form == 0 && opts.set_vars && ann) {
            os << "X:{" << v.attr << ":?y, ...} | " << v.concept_name(rng) << "@X sub " << v.concept_name(rng) << "@{"
               << v.attr << ":X." << v.attr << ", ...}\n";
        } else if (form == 1 && opts.set_vars) {
            os << "X:{...} | " << v.concept_name(rng) << "@X sub " << v.concept_name(rng) << "@X\n";
        } else if (form == 2 && ann) {
            os << v.concept_name(rng) << "@{" << v.attr << ":?y, ...} sub " << v.concept_name(rng) << "@{" << v.attr
               << ":?y, ...}\n";
        } else if (form == 3) {
            os << v.concept_name(rng) << "@" << v.spec(rng) << " and " << v.basic(rng) << " sub " << v.basic(rng)
               << "\n";
        } else if (form == 4) {
            if (opts.set_vars && coin(rng, 0.3))
                os << "X:{...} | " << v.role_expr(rng) << "@X sub " << v.role(rng) << "@X\n";
            else
                os << v.role_expr(rng) << "@" << v.spec(rng) << " sub " << v.role(rng) << "@" << v.spec(rng) << "\n";
        } else if (form == 5 && opts.bottom && coin(rng, 0.5)) {
            os << v.basic(rng) << " and " << v.basic(rng) << " sub bot\n";
        } else if (form == 6 && opts.negative_roles) {
            os << v.role_expr(rng) << "@" << v.spec(rng) << " sub not " << v.role(rng) << "@" << v.spec(rng) << "\n";
        } else if (form == 7) {
            os << v.concept_name(rng) << "@" << v.spec(rng) << " sub exists " << v.role_expr(rng) << "@" << v.spec(rng)
               << "\n";
        } else {
            os << v.basic(rng) << " sub " << v.basic(rng) << "\n";
        }
    }
    for (std::size_t k = 0; k < opts.assertions; ++k) {
        const auto& a = v.inds[pick(rng, v.inds.size())];
        if (coin(rng, 0.5))
            os << v.concept_name(rng) << "(" << a << ")@" << v.closed(rng) << "\n";
        else
            os << v.role(rng) << "(" << a << ", " << v.inds[pick(rng, v.inds.size())] << ")@" << v.closed(rng) << "\n";
    }
    return os.str();
}

Ontology random_ontology(Rng& rng, const GenOptions& opts) { return parse_ontology(random_ontology_text(rng, opts)); }

Pair random_temporal_pair(Rng& rng, unsigned max_constant) {
    auto k = [&] { return TimePoint(static_cast<unsigned long>(pick(rng, max_constant + 1))); };
    switch (pick(rng, 4)) {
        case 0:
            return {"time", Value::time(k())};
        case 1:
            return {"since", Value::time(k())};
        case 2:
            return {"until", Value::time(k())};
        default: {
            TimePoint a = k(), b = k();
            if (b < a) std::swap(a, b);
            return {"during", Value::interval(a, b)};
        }
    }
}

std::string random_temporal_text(Rng& rng, const TemporalGenOptions& opts) {
    Vocab v(opts.individuals, opts.concept_names, opts.role_names, 2);
    auto tspec = [&](bool allow_open) {
        Pair p = random_temporal_pair(rng, opts.max_constant);
        std::string body = p.attr + ":" + print_value(p.val);
        if (coin(rng, 0.25)) {
            Pair q = random_temporal_pair(rng, opts.max_constant);
            if (q.attr != p.attr) body += ", " + q.attr + ":" + print_value(q.val);
        }
        if (coin(rng, 0.3)) body += ", p:u";
        bool open = allow_open && opts.open_specs && coin(rng, 0.4);
        return "{" + body + (open ? ", ...}" : "}");
    };
    auto concept_side = [&](bool allow_open) {
        if (coin(rng, 0.7)) return v.concept_name(rng) + "@" + tspec(allow_open);
        return v.concept_name(rng) + "@" + (coin(rng, 0.5) ? std::string("{...}") : std::string("{p:u, ...}"));
    };
    std::ostringstream os;
    for (std::size_t k = 0; k < opts.inclusions; ++k) {
        switch (pick(rng, 4)) {
            case 0:
                os << "exists " << v.role_expr(rng) << "@{...} sub " << concept_side(true) << "\n";
                break;
            case 1:
                os << concept_side(true) << " sub exists " << v.role_expr(rng) << "@{...}\n";
                break;
            case 2:
                os << v.role_expr(rng) << "@{...} sub " << v.role(rng) << "@{...}\n";
                break;
            default:
                os << concept_side(true) << " sub " << concept_side(true) << "\n";
        }
    }
    for (std::size_t k = 0; k < opts.assertions; ++k) {
        const auto& a = v.inds[pick(rng, v.inds.size())];
        if (coin(rng, 0.75))
            os << v.concept_name(rng) << "(" << a << ")@" << tspec(false) << "\n";
        else
            os << v.role(rng) << "(" << a << ", " << v.inds[pick(rng, v.inds.size())] << ")@{}\n";
    }
    return os.str();
}

Ontology random_temporal(Rng& rng, const TemporalGenOptions& opts) {
    return parse_ontology(random_temporal_text(rng, opts));
}

Matrix random_matrix(Rng& rng, std::size_t m, bool singular) {
    std::size_t n = 2 * m;
    std::uniform_int_distribution<int> entry(-3, 3);
    if (singular) {
        // product of n x r and r x n factors with r < n
        std::size_t r = pick(rng, n);
        Matrix a(n, r), b(r, n);
        for (auto& x : a.a) x = entry(rng);
        for (auto& x : b.a) x = entry(rng);
        if (r == 0) return Matrix(n, n);
        return a * b;
    }
    // L D U with unit triangular factors and a non-zero diagonal
    Matrix l = Matrix::identity(n), d(n, n), u = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = entry(rng);
            u(j, i) = entry(rng);
        }
    for (std::size_t i = 0; i < n; ++i) {
        int x = 0;
        while (x == 0) x = entry(rng);
        d(i, i) = x;
    }
    Matrix out = l * d * u;
    // shuffle rows so the structure is not always triangular-looking
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = pick(rng, i);
        for (std::size_t c = 0; c < n; ++c) std::swap(out(i - 1, c), out(j, c));
    }
    return out;
}

LinearMap random_map(Rng& rng, std::size_t m) { return LinearMap(m, random_matrix(rng, m, false)); }

}  // namespace adl
