#pragma once

// Boolean elimination: a DNF/CNF clause matrix becomes one polynomial
// equation under a short quantifier prefix.
//
//   EA_C   exists a forall b       prod_i [(1 - a*prod_k u_ik) + sum_j t_ij*b^j]
//   AE_C   forall a exists b       [1 - b*prod_i(a-i)] * [sum_i L_i(a)*prod_j t_ij*prod_k(1 - b*u_ik)]
//   E_R    exists r                prod_i [sum_j t_ij^2 + (1 - r*prod_k u_ik)^2]
//   Ed_R   exists r1..rd           sum_i [prod_j t_ij * prod_k(1 - r_i^2*u_ik)]^2
//   AE_R   forall r exists s       [1 - s*prod_i(r-i)] * [sum_i L_i(r)*prod_j t_ij*prod_k(1 - s^2*u_ik)]
//   E3d_Q  exists v1..v3d          sum_i [prod_j t_ij * prod_k(1 - u_ik*V_i)(1 - 2*u_ik*V_i)]^2
//   AE3_Q  forall v exists w1..w3  [1 - w1*prod_i(v-i)] * [sum_i L_i(v)*prod_j t_ij*prod_k(1 - u_ik*W)(1 - 2*u_ik*W)]
//
// with L_i(a) = prod_{h != i}(a - h), V_i = v_{3i-2}^2 + v_{3i-1}^2 + v_{3i}^2
// and W = w1^2 + w2^2 + w3^2.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolelim/formula.hpp"
#include "boolelim/poly.hpp"

namespace boolelim {

enum class Shape { EA_C, AE_C, E_R, Ed_R, AE_R, E3d_Q, AE3_Q };

std::string_view to_string(Shape shape);
Shape parse_shape(std::string_view text);

/// Clause form the construction consumes (DNF for EA_C and E_R).
ClauseKind input_kind(Shape shape);
/// Whether t != 0 literals are rewritten into order literals first.
bool uses_order_literals(Shape shape);
bool admits_field(Shape shape, Field field);

/// Field the shape is normally built over (C, R or Q).
Field default_field(Shape shape);

/// Random-formula parameters producing input the shape accepts: the right
/// clause kind, field and literal style. Sizes are left at their defaults.
RandomFormulaParams random_params_for(Shape shape);

enum class Quantifier { exists, forall };

std::string_view to_string(Quantifier q);

struct QuantifiedVar {
  Quantifier quantifier;
  Var var;

  friend bool operator==(const QuantifiedVar&, const QuantifiedVar&) = default;
};

/// The bracketed factors a construction multiplies (or squares and sums).
struct Layout {
  enum class Kind { product, sum_of_squares };
  Kind kind = Kind::product;
  std::vector<MultiPoly> brackets;
};

struct QuantifiedEquation {
  Field field = Field::C;
  std::vector<QuantifiedVar> prefix;
  MultiPoly equation;
  /// Absent for hand-written equations.
  std::optional<Shape> shape;
  std::optional<ClauseMatrix> provenance;
  Layout layout;

  std::vector<Var> quantified_vars() const;
  std::vector<Var> exists_vars() const;
  std::vector<Var> forall_vars() const;
};

/// prod_{h != i, 1 <= h <= d} (v - h).
MultiPoly lagrange_selector(std::size_t i, std::size_t d, const Var& v,
                            ScalarField field = ScalarField::rational);

QuantifiedEquation build_EA_C(const ClauseMatrix& m);
QuantifiedEquation build_AE_C(const ClauseMatrix& m);
QuantifiedEquation build_E_R(const ClauseMatrix& m);
QuantifiedEquation build_Ed_R(const ClauseMatrix& m);
QuantifiedEquation build_AE_R(const ClauseMatrix& m);
QuantifiedEquation build_E3d_Q(const ClauseMatrix& m);
QuantifiedEquation build_AE3_Q(const ClauseMatrix& m);

QuantifiedEquation build(Shape shape, const ClauseMatrix& m);

/// Normal form plus construction in one step.
QuantifiedEquation eliminate(const Formula& phi, Field field, Shape shape,
                             std::size_t clause_limit = 4096);

/// Clause matrix the given shape would consume for phi.
ClauseMatrix normalize_for(const Formula& phi, Field field, Shape shape,
                           std::size_t clause_limit = 4096);

struct DegreeEntry {
  Var var;
  Degree measured;
  long bound = 0;
  /// The theorem states this degree exactly rather than as an upper bound.
  bool exact = false;
  bool ok = false;
};

struct DegreeReport {
  Shape shape = Shape::EA_C;
  std::vector<DegreeEntry> entries;
  std::size_t d = 0;
  std::size_t syntactic_d = 0;
  std::size_t e_total = 0;
  std::size_t e_max = 0;
  std::size_t f_max = 0;
  bool satisfied = false;
  std::vector<std::string> notes;
};

DegreeReport degree_report(const QuantifiedEquation& qe);

/// Exact witness value: a scalar, or the positive square root of a positive
/// rational (the real shapes need r = 1/sqrt(u)).
class WitnessValue {
 public:
  WitnessValue() = default;
  WitnessValue(Scalar value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  /// sqrt(q) for q > 0; collapses to a rational when q is a rational square.
  static WitnessValue sqrt(const Rational& q);

  bool is_radical() const { return radicand_.has_value(); }
  const Scalar& value() const { return value_; }
  const Rational& radicand() const { return *radicand_; }
  std::string str() const;

 private:
  Scalar value_;
  std::optional<Rational> radicand_;
};

using Assignment = std::map<Var, WitnessValue>;

struct WitnessRecipe {
  Shape shape = Shape::EA_C;
  /// One line per existential block, read off the forward direction of the
  /// corresponding equivalence.
  std::vector<std::string> instructions;
};

WitnessRecipe witness_recipe(const QuantifiedEquation& qe);

/// Existential witnesses at x. For forall-exists shapes `universal` supplies
/// the value of the universal variable and the result answers for that value.
/// Throws NO_WITNESS when the source formula is false at x.
Assignment extract_witness(const WitnessRecipe& recipe, const ClauseMatrix& m, const Point& x,
                           const Point& universal = {});

}  // namespace boolelim
