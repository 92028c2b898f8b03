#pragma once

// Sparse multivariate polynomials over Q or Q(i).
//
// Terms are kept sorted in graded lexicographic order (highest total degree
// first); variables are ordered with the quantified names a, b, r, s, v, w
// (optionally indexed, e.g. r2, v10) ahead of every free variable. This order
// fixes the canonical text rendering used by JSON output and golden tests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolelim/exactnum.hpp"

namespace boolelim {

/// Named variable. Comparison follows the canonical variable order.
class Var {
 public:
  Var() = default;
  explicit Var(std::string name);

  const std::string& name() const { return name_; }

  /// Names of the form [abrsvw][0-9]* are reserved for quantified variables.
  bool is_quantified() const { return group_ < kFreeGroup; }
  static bool is_reserved_name(std::string_view name);

  friend bool operator==(const Var& a, const Var& b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(const Var& a, const Var& b);

 private:
  static constexpr int kFreeGroup = 6;

  std::string name_;
  int group_ = kFreeGroup;
  std::string stem_;
  std::uint64_t index_ = 0;
  bool indexed_ = false;
};

/// Indexed quantified variable, e.g. indexed_var("r", 2) is r2.
Var indexed_var(std::string_view base, std::size_t index);

/// Q-tagged polynomials must have real coefficients; mixing tags is an error.
enum class ScalarField { rational, gaussian };

std::string_view to_string(ScalarField field);

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exps;  // aligned with MultiPoly::vars()
  Scalar coeff;
};

/// Evaluation point / scalar bindings.
using Point = std::map<Var, Scalar>;

/// Lowest-degree sentinel for the zero polynomial is std::nullopt (NEG_INF);
/// std::optional ordering already places it below every natural.
using Degree = std::optional<unsigned>;
inline constexpr std::nullopt_t neg_inf = std::nullopt;

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(ScalarField field) : field_(field) {}

  static MultiPoly constant(const Scalar& c, ScalarField field = ScalarField::rational);
  static MultiPoly variable(const Var& v, ScalarField field = ScalarField::rational);
  static MultiPoly monomial(const Scalar& c, const std::vector<std::pair<Var, unsigned>>& powers,
                            ScalarField field = ScalarField::rational);
  /// Canonicalizes arbitrary terms over the sorted variable list `vars`.
  static MultiPoly from_terms(ScalarField field, std::vector<Var> vars, std::vector<Term> terms);

  ScalarField field() const { return field_; }
  /// Same polynomial re-tagged; gaussian -> rational requires real coefficients.
  MultiPoly with_field(ScalarField field) const;

  const std::vector<Var>& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  /// Value of a constant polynomial (0 for the zero polynomial).
  Scalar constant_value() const;
  Scalar constant_term() const;

  bool uses(const Var& v) const;
  Degree degree_in(const Var& v) const;
  /// Degree in each of vars(), in one pass over the terms.
  std::vector<unsigned> degrees() const;
  Degree total_degree() const;

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Scalar& c);

  friend MultiPoly operator+(MultiPoly l, const MultiPoly& r) { return l += r; }
  friend MultiPoly operator-(MultiPoly l, const MultiPoly& r) { return l -= r; }
  friend MultiPoly operator*(const MultiPoly& l, const MultiPoly& r);
  friend MultiPoly operator*(MultiPoly l, const Scalar& c) { return l *= c; }
  friend MultiPoly operator*(const Scalar& c, MultiPoly r) { return r *= c; }
  MultiPoly operator-() const;

  MultiPoly pow(unsigned exponent) const;
  /// sum_k l_k * r_k expanded in one pass; equivalent to accumulating the
  /// products with +=, without materializing each product.
  static MultiPoly sum_of_products(ScalarField field,
                                   const std::vector<std::pair<const MultiPoly*, const MultiPoly*>>& pairs);
  MultiPoly derivative(const Var& v) const;

  /// Full evaluation; every variable must be bound.
  Scalar evaluate(const Point& point) const;

  /// Equality is structural on the canonical form (field tag included).
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Canonical rendering, e.g. "-a*z + b*y + 1".
  std::string str() const;
  std::string latex() const;

 private:
  void canonicalize();
  void drop_unused_vars();
  static MultiPoly multiply_unpacked(const MultiPoly& l, const MultiPoly& r);
  void check_field(const MultiPoly& other) const;

  ScalarField field_ = ScalarField::rational;
  std::vector<Var> vars_;
  std::vector<Term> terms_;
};

inline bool operator==(const Term& a, const Term& b) { return a.exps == b.exps && a.coeff == b.coeff; }

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

/// Simultaneous substitution of polynomials for variables.
using Bindings = std::map<Var, MultiPoly>;
MultiPoly substitute(const MultiPoly& p, const Bindings& bindings);
/// Scalar substitution; unbound variables survive.
MultiPoly substitute(const MultiPoly& p, const Point& point);

/// p viewed as sum_j coeffs[j] * var^j.
struct UniView {
  Var var;
  std::vector<MultiPoly> coeffs;

  Degree degree() const {
    return coeffs.empty() ? neg_inf : Degree(static_cast<unsigned>(coeffs.size() - 1));
  }
  MultiPoly reassemble() const;
};

UniView as_univariate(const MultiPoly& p, const Var& v);

Degree degree_in(const MultiPoly& p, const Var& v);

/// Variables of p outside the given set.
std::vector<Var> variables_outside(const MultiPoly& p, const std::vector<Var>& allowed);

// ---------------------------------------------------------------------------
// Text input.

/// Reads a polynomial such as "(1 - a*z) + b*y" or "3/2*x1^2 - I*y".
/// The imaginary unit I is only accepted for the gaussian field.
MultiPoly parse_polynomial(std::string_view text, ScalarField field = ScalarField::rational);

/// Reads a constant expression such as "1/2" or "1 + 2*I".
Scalar parse_scalar(std::string_view text, ScalarField field = ScalarField::gaussian);

}  // namespace boolelim
