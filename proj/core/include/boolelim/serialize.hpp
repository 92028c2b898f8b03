#pragma once

// JSON, LaTeX and plain-text renderings of equations and reports.
//
// Polynomials travel as their canonical text rendering, which the polynomial
// reader accepts, so every JSON document here round-trips exactly.

#include <string>
#include <string_view>

#include "boolelim/decide.hpp"
#include "boolelim/elim.hpp"

namespace boolelim {

std::string to_json(const QuantifiedEquation& qe, int indent = 2);
std::string to_json(const DegreeReport& report, int indent = 2);
std::string to_json(const EquivalenceReport& report, int indent = 2);
std::string to_json(const Disagreement& record, int indent = 2);
std::string to_json(const Verdict& verdict, int indent = 2);

/// Inverses of to_json; malformed documents raise BAD_INPUT.
QuantifiedEquation quantified_equation_from_json(std::string_view text);
DegreeReport degree_report_from_json(std::string_view text);
EquivalenceReport equivalence_report_from_json(std::string_view text);

/// "exists a forall b: P = 0"; readable by parse_quantified_equation.
std::string to_text(const QuantifiedEquation& qe);
std::string to_text(const DegreeReport& report);
std::string to_text(const EquivalenceReport& report);

/// Bracketed layout when the construction is known, e.g.
/// (\exists a \in \mathbb{C})(\forall b \in \mathbb{C})\;\Big[...\Big]\Big[...\Big] = 0
std::string to_latex(const QuantifiedEquation& qe);

/// Hand-written quantified equation: a prefix of "exists"/"forall" blocks
/// (each naming one or more comma-separated variables), a colon, then either
/// a polynomial (read as P = 0) or "lhs = rhs". A whole document starting
/// with '{' is read as JSON instead.
QuantifiedEquation parse_quantified_equation(std::string_view text, Field field);

}  // namespace boolelim
