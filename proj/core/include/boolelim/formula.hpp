#pragma once

// Boolean combinations of polynomial atoms t = 0, t != 0 and t > 0, with a
// text front end, negation normal form, DNF/CNF clause matrices and exact
// evaluation.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "boolelim/poly.hpp"

namespace boolelim {

/// Base field of a formula: complex, real or rational numbers.
enum class Field { C, R, Q };

std::string_view to_string(Field field);
Field parse_field(std::string_view text);
/// Coefficients and points live in Q(i) for C, and in Q otherwise.
ScalarField scalar_field(Field field);

enum class Rel { eq, neq, gt };

std::string_view to_string(Rel rel);

struct Atom {
  MultiPoly term;
  Rel rel;

  friend bool operator==(const Atom&, const Atom&) = default;
  std::string str() const;
};

class Formula {
 public:
  enum class Kind { atom, negation, conjunction, disjunction, truth, falsity };

  static Formula make_atom(Atom atom);
  static Formula negation(Formula inner);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula truth();
  static Formula falsity();

  Kind kind() const { return kind_; }
  const Atom& atom() const { return *atom_; }
  /// Operands of And/Or; the single operand of Not.
  const std::vector<Formula>& children() const { return children_; }

  friend bool operator==(const Formula& a, const Formula& b);

  /// Renders in the input grammar; parse(str()) reproduces the AST.
  std::string str() const;

 private:
  Kind kind_ = Kind::truth;
  std::shared_ptr<const Atom> atom_;
  std::vector<Formula> children_;
};

/// Parses the input grammar. Relations = != > >= < <= between arbitrary
/// polynomials are normalized to atoms over p - q; >= and <= expand to
/// (t > 0 \/ t = 0). Order relations are rejected for field C.
Formula parse_formula(std::string_view text, Field field);

/// Removes negations. ~(t > 0) becomes (-t > 0 \/ t = 0).
Formula to_nnf(const Formula& phi);

enum class ClauseKind { dnf, cnf };

std::string_view to_string(ClauseKind kind);

using Clause = std::vector<Atom>;

struct ClauseMatrix {
  ClauseKind kind = ClauseKind::dnf;
  Field field = Field::C;
  std::vector<Clause> clauses;
  /// Clauses produced by distribution before pruning.
  std::size_t syntactic_clauses = 0;

  std::size_t d() const { return clauses.size(); }
  std::size_t equations(std::size_t i) const;
  /// Inequations (NEQ0) plus inequalities (GT0) in clause i.
  std::size_t inequalities(std::size_t i) const;
  std::size_t total_equations() const;
  std::size_t max_equations() const;
  std::size_t max_inequalities() const;

  Formula to_formula() const;
  friend bool operator==(const ClauseMatrix&, const ClauseMatrix&) = default;
};

struct NormalFormOptions {
  Field field = Field::C;
  /// Rewrite t != 0 as (t > 0 \/ -t > 0) before distribution (order-mode
  /// constructions over R and Q).
  bool neq_as_order = false;
  std::size_t clause_limit = 4096;
};

ClauseMatrix to_dnf(const Formula& phi, const NormalFormOptions& options = {});
ClauseMatrix to_cnf(const Formula& phi, const NormalFormOptions& options = {});

/// Exact truth value at a point. Order atoms need a real value.
bool eval_formula(const Formula& phi, const Point& point);
bool eval_atom(const Atom& atom, const Point& point);
bool eval_clause(const Clause& clause, ClauseKind kind, const Point& point);
bool eval_matrix(const ClauseMatrix& m, const Point& point);

/// Free variables in canonical order.
std::vector<Var> free_variables(const Formula& phi);
std::vector<Var> free_variables(const ClauseMatrix& m);

struct RandomFormulaParams {
  std::size_t n_vars = 2;
  std::size_t d = 2;
  std::size_t max_e = 2;
  std::size_t max_f = 2;
  Field field = Field::C;
  std::int64_t coeff_bound = 32;
  ClauseKind kind = ClauseKind::dnf;
  /// Inequality literals are t > 0 instead of t != 0.
  bool order_literals = false;
};

/// Reproducible clause matrix realized as a formula over x1..xn; every
/// clause has e_i in [0, max_e] equations and f_i in [0, max_f] other
/// literals, and at least one literal.
Formula random_formula(std::uint64_t seed, const RandomFormulaParams& params);

}  // namespace boolelim
