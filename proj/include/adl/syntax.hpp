#pragma once

#include "adl/ast.hpp"

#include <string>
#include <vector>

namespace adl {

struct ParseOptions {
    // Reject ill-typed temporal pairs while parsing. When off they are kept
    // in the AST and left for validate_ontology to report.
    bool typecheck = true;
};

Ontology parse_ontology(const std::string& text, const ParseOptions& opts = {});

Specifier parse_specifier(const std::string& text);

// Parses "R1 and R2 sub R3" style rules (diagnostic input only).
RoleConjunction parse_role_conjunction(const std::string& text);

std::string print_value(const Value& v);
std::string print_specifier(const Specifier& s);
std::string print_role(const RoleExpr& r);
std::string print_basic(const Basic& b);
std::string print_axiom(const Axiom& a);
std::string print_ontology(const Ontology& o);

struct Violation {
    std::size_t axiom = 0;
    enum class Kind { UnsafeVariable, IllTyped, UndeclaredSetVar, NameClash } kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_ontology(const Ontology& o);

// S ==> T over ground non-temporal specifiers.
bool specifier_implies(const Specifier& s, const Specifier& t);

// "file:line:col: message"
std::string format_error(const std::string& file, const AdlError& e);

}  // namespace adl
