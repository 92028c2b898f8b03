#include "boolelim/elim.hpp"

#include <algorithm>

#include "boolelim/error.hpp"

namespace boolelim {

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::EA_C: return "EA_C";
    case Shape::AE_C: return "AE_C";
    case Shape::E_R: return "E_R";
    case Shape::Ed_R: return "Ed_R";
    case Shape::AE_R: return "AE_R";
    case Shape::E3d_Q: return "E3d_Q";
    case Shape::AE3_Q: return "AE3_Q";
  }
  return "?";
}

Shape parse_shape(std::string_view text) {
  for (Shape s : {Shape::EA_C, Shape::AE_C, Shape::E_R, Shape::Ed_R, Shape::AE_R, Shape::E3d_Q,
                  Shape::AE3_Q})
    if (to_string(s) == text) return s;
  throw Error(Errc::bad_input, "unknown shape '" + std::string(text) + "'");
}

ClauseKind input_kind(Shape shape) {
  return shape == Shape::EA_C || shape == Shape::E_R ? ClauseKind::dnf : ClauseKind::cnf;
}

bool uses_order_literals(Shape shape) {
  return shape == Shape::Ed_R || shape == Shape::AE_R || shape == Shape::E3d_Q ||
         shape == Shape::AE3_Q;
}

bool admits_field(Shape shape, Field field) {
  switch (shape) {
    case Shape::EA_C:
    case Shape::AE_C: return field == Field::C;
    case Shape::E_R: return field == Field::R || field == Field::Q;
    case Shape::Ed_R:
    case Shape::AE_R: return field == Field::R;
    case Shape::E3d_Q:
    case Shape::AE3_Q: return field == Field::Q;
  }
  return false;
}

Field default_field(Shape shape) {
  switch (shape) {
    case Shape::EA_C:
    case Shape::AE_C: return Field::C;
    case Shape::E_R:
    case Shape::Ed_R:
    case Shape::AE_R: return Field::R;
    case Shape::E3d_Q:
    case Shape::AE3_Q: return Field::Q;
  }
  return Field::C;
}

RandomFormulaParams random_params_for(Shape shape) {
  RandomFormulaParams p;
  p.field = default_field(shape);
  p.kind = input_kind(shape);
  p.order_literals = uses_order_literals(shape);
  return p;
}

std::string_view to_string(Quantifier q) { return q == Quantifier::exists ? "exists" : "forall"; }

namespace {

std::vector<Var> vars_with(const std::vector<QuantifiedVar>& prefix, std::optional<Quantifier> q) {
  std::vector<Var> out;
  for (const auto& qv : prefix)
    if (!q || qv.quantifier == *q) out.push_back(qv.var);
  return out;
}

}  // namespace

std::vector<Var> QuantifiedEquation::quantified_vars() const { return vars_with(prefix, std::nullopt); }
std::vector<Var> QuantifiedEquation::exists_vars() const { return vars_with(prefix, Quantifier::exists); }
std::vector<Var> QuantifiedEquation::forall_vars() const { return vars_with(prefix, Quantifier::forall); }

MultiPoly lagrange_selector(std::size_t i, std::size_t d, const Var& v, ScalarField field) {
  if (i < 1 || i > d)
    throw Error(Errc::index_out_of_range,
                "selector index " + std::to_string(i) + " outside 1.." + std::to_string(d));
  MultiPoly out = MultiPoly::constant(Scalar(1), field);
  const MultiPoly x = MultiPoly::variable(v, field);
  for (std::size_t h = 1; h <= d; ++h)
    if (h != i) out *= x - MultiPoly::constant(Scalar(static_cast<long>(h)), field);
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

struct Builder {
  const ClauseMatrix& m;
  Shape shape;
  ScalarField sf;

  Builder(const ClauseMatrix& matrix, Shape s) : m(matrix), shape(s), sf(scalar_field(matrix.field)) {
    if (m.kind != input_kind(shape))
      throw Error(Errc::wrong_kind, std::string(to_string(shape)) + " needs a " +
                                        std::string(to_string(input_kind(shape))) + " matrix, got " +
                                        std::string(to_string(m.kind)));
    if (!admits_field(shape, m.field))
      throw Error(Errc::incompatible_field, std::string(to_string(shape)) + " is not available over " +
                                                std::string(to_string(m.field)));
    for (const auto& clause : m.clauses)
      for (const auto& a : clause) {
        if (a.rel == Rel::gt && !uses_order_literals(shape))
          throw Error(Errc::order_literal, std::string(to_string(shape)) +
                                               " takes only = and != literals: " + a.str());
        if (a.rel == Rel::neq && uses_order_literals(shape))
          throw Error(Errc::neq_literal, std::string(to_string(shape)) +
                                             " takes only = and > literals: " + a.str());
        if (a.term.field() != sf)
          throw Error(Errc::field_mismatch, "literal '" + a.str() + "' has the wrong scalar field");
        for (const auto& v : a.term.vars())
          if (v.is_quantified())
            throw Error(Errc::variable_clash,
                        "free variable '" + v.name() + "' collides with a quantified variable name");
      }
  }

  MultiPoly one() const { return MultiPoly::constant(Scalar(1), sf); }
  MultiPoly num(long k) const { return MultiPoly::constant(Scalar(k), sf); }
  MultiPoly var(const Var& v) const { return MultiPoly::variable(v, sf); }

  // prod_j t_ij
  MultiPoly equation_product(const Clause& c) const {
    MultiPoly p = one();
    for (const auto& a : c)
      if (a.rel == Rel::eq) p *= a.term;
    return p;
  }

  // prod_k u_ik
  MultiPoly inequality_product(const Clause& c) const {
    MultiPoly p = one();
    for (const auto& a : c)
      if (a.rel != Rel::eq) p *= a.term;
    return p;
  }

  // prod_k gadget(u_ik)
  template <class Gadget>
  MultiPoly gadget_product(const Clause& c, Gadget gadget) const {
    MultiPoly p = one();
    for (const auto& a : c)
      if (a.rel != Rel::eq) p *= gadget(a.term);
    return p;
  }

  // prod_{i=1..d} (x - i)
  MultiPoly node_product(const Var& x) const {
    MultiPoly p = one();
    for (std::size_t i = 1; i <= m.d(); ++i) p *= var(x) - num(static_cast<long>(i));
    return p;
  }

  // [1 - y*prod_i(x - i)] * [sum_i L_i(x) * prod_j t_ij * inner_i]
  template <class Gadget>
  QuantifiedEquation lagrange_form(const Var& universal, const MultiPoly& escape_var,
                                   std::vector<QuantifiedVar> prefix, Gadget gadget) const {
    MultiPoly first = one() - escape_var * node_product(universal);
    MultiPoly second(sf);
    for (std::size_t i = 1; i <= m.d(); ++i) {
      const Clause& c = m.clauses[i - 1];
      second += lagrange_selector(i, m.d(), universal, sf) * equation_product(c) * gadget_product(c, gadget);
    }
    QuantifiedEquation qe = finish(std::move(prefix), first * second);
    qe.layout = {Layout::Kind::product, {std::move(first), std::move(second)}};
    return qe;
  }

  QuantifiedEquation finish(std::vector<QuantifiedVar> prefix, MultiPoly equation) const {
    QuantifiedEquation qe;
    qe.field = m.field;
    qe.prefix = std::move(prefix);
    qe.equation = std::move(equation);
    qe.shape = shape;
    qe.provenance = m;
    return qe;
  }
};

const Var kA("a");
const Var kB("b");
const Var kR("r");
const Var kS("s");
const Var kV("v");

}  // namespace

QuantifiedEquation build_EA_C(const ClauseMatrix& m) {
  Builder b(m, Shape::EA_C);
  MultiPoly eq = b.one();
  std::vector<MultiPoly> brackets;
  for (const auto& clause : m.clauses) {
    MultiPoly bracket = b.one() - b.var(kA) * b.inequality_product(clause);
    unsigned j = 0;
    for (const auto& a : clause)
      if (a.rel == Rel::eq) bracket += a.term * MultiPoly::monomial(Scalar(1), {{kB, ++j}}, b.sf);
    eq *= bracket;
    brackets.push_back(std::move(bracket));
  }
  QuantifiedEquation qe = b.finish({{Quantifier::exists, kA}, {Quantifier::forall, kB}}, std::move(eq));
  qe.layout = {Layout::Kind::product, std::move(brackets)};
  return qe;
}

QuantifiedEquation build_AE_C(const ClauseMatrix& m) {
  Builder b(m, Shape::AE_C);
  const MultiPoly bv = b.var(kB);
  return b.lagrange_form(kA, bv, {{Quantifier::forall, kA}, {Quantifier::exists, kB}},
                         [&](const MultiPoly& u) { return b.one() - bv * u; });
}

QuantifiedEquation build_E_R(const ClauseMatrix& m) {
  Builder b(m, Shape::E_R);
  MultiPoly eq = b.one();
  std::vector<MultiPoly> brackets;
  for (const auto& clause : m.clauses) {
    MultiPoly bracket = (b.one() - b.var(kR) * b.inequality_product(clause)).pow(2);
    for (const auto& a : clause)
      if (a.rel == Rel::eq) bracket += a.term.pow(2);
    eq *= bracket;
    brackets.push_back(std::move(bracket));
  }
  QuantifiedEquation qe = b.finish({{Quantifier::exists, kR}}, std::move(eq));
  qe.layout = {Layout::Kind::product, std::move(brackets)};
  return qe;
}

QuantifiedEquation build_Ed_R(const ClauseMatrix& m) {
  Builder b(m, Shape::Ed_R);
  MultiPoly eq(b.sf);
  std::vector<MultiPoly> brackets;
  std::vector<QuantifiedVar> prefix;
  for (std::size_t i = 1; i <= m.d(); ++i) {
    const Var ri = indexed_var("r", i);
    prefix.push_back({Quantifier::exists, ri});
    const MultiPoly ri_sq = b.var(ri).pow(2);
    const Clause& c = m.clauses[i - 1];
    MultiPoly bracket =
        b.equation_product(c) * b.gadget_product(c, [&](const MultiPoly& u) { return b.one() - ri_sq * u; });
    eq += bracket.pow(2);
    brackets.push_back(std::move(bracket));
  }
  QuantifiedEquation qe = b.finish(std::move(prefix), std::move(eq));
  qe.layout = {Layout::Kind::sum_of_squares, std::move(brackets)};
  return qe;
}

QuantifiedEquation build_AE_R(const ClauseMatrix& m) {
  Builder b(m, Shape::AE_R);
  const MultiPoly sv = b.var(kS);
  const MultiPoly s_sq = sv.pow(2);
  return b.lagrange_form(kR, sv, {{Quantifier::forall, kR}, {Quantifier::exists, kS}},
                         [&](const MultiPoly& u) { return b.one() - s_sq * u; });
}

namespace {

MultiPoly sum_of_three_squares(const Builder& b, const std::array<Var, 3>& vs) {
  return b.var(vs[0]).pow(2) + b.var(vs[1]).pow(2) + b.var(vs[2]).pow(2);
}

// The Q gadgets depend on the existential variables only through
// V = v1^2 + v2^2 + v3^2, so brackets are assembled (and squared) as
// polynomials in a placeholder for V and expanded once at the end; expanding
// first would square a polynomial with far more terms.
const Var kPlaceholder("V#");

MultiPoly three_squares_gadgets(const Builder& b, const Clause& c) {
  const MultiPoly V = b.var(kPlaceholder);
  return b.equation_product(c) * b.gadget_product(c, [&](const MultiPoly& u) {
    return (b.one() - u * V) * (b.one() - b.num(2) * u * V);
  });
}

using ProductList = std::vector<std::pair<const MultiPoly*, const MultiPoly*>>;

// value^0 .. value^(n-1)
std::vector<MultiPoly> powers_of(const MultiPoly& value, std::size_t n) {
  std::vector<MultiPoly> powers{MultiPoly::constant(Scalar(1), value.field())};
  for (std::size_t j = 1; j < n; ++j) powers.push_back(powers.back() * value);
  return powers;
}

void add_placeholder_terms(const UniView& view, const std::vector<MultiPoly>& powers, ProductList& out) {
  for (std::size_t j = 0; j < view.coeffs.size(); ++j) out.emplace_back(&view.coeffs[j], &powers[j]);
}

MultiPoly expand_placeholder(const MultiPoly& p, const MultiPoly& value) {
  const UniView view = as_univariate(p, kPlaceholder);
  const std::vector<MultiPoly> powers = powers_of(value, view.coeffs.size());
  ProductList pairs;
  add_placeholder_terms(view, powers, pairs);
  return MultiPoly::sum_of_products(p.field(), pairs);
}

}  // namespace

QuantifiedEquation build_E3d_Q(const ClauseMatrix& m) {
  Builder b(m, Shape::E3d_Q);
  std::vector<MultiPoly> brackets;
  std::vector<QuantifiedVar> prefix;
  // The squares are summed in a single expansion; adding them one at a time
  // would copy the growing sum again for every new block of variables.
  std::vector<UniView> squares;
  std::vector<std::vector<MultiPoly>> powers;
  squares.reserve(m.d());
  powers.reserve(m.d());
  ProductList pairs;
  for (std::size_t i = 1; i <= m.d(); ++i) {
    const std::array<Var, 3> vs{indexed_var("v", 3 * i - 2), indexed_var("v", 3 * i - 1),
                                indexed_var("v", 3 * i)};
    for (const auto& v : vs) prefix.push_back({Quantifier::exists, v});
    const MultiPoly V = sum_of_three_squares(b, vs);
    const MultiPoly bracket = three_squares_gadgets(b, m.clauses[i - 1]);
    squares.push_back(as_univariate(bracket.pow(2), kPlaceholder));
    powers.push_back(powers_of(V, squares.back().coeffs.size()));
    add_placeholder_terms(squares.back(), powers.back(), pairs);
    brackets.push_back(expand_placeholder(bracket, V));
  }
  QuantifiedEquation qe = b.finish(std::move(prefix), MultiPoly::sum_of_products(b.sf, pairs));
  qe.layout = {Layout::Kind::sum_of_squares, std::move(brackets)};
  return qe;
}

QuantifiedEquation build_AE3_Q(const ClauseMatrix& m) {
  Builder b(m, Shape::AE3_Q);
  const std::array<Var, 3> ws{Var("w1"), Var("w2"), Var("w3")};
  MultiPoly first = b.one() - b.var(ws[0]) * b.node_product(kV);
  MultiPoly second(b.sf);
  for (std::size_t i = 1; i <= m.d(); ++i)
    second += lagrange_selector(i, m.d(), kV, b.sf) * three_squares_gadgets(b, m.clauses[i - 1]);
  second = expand_placeholder(second, sum_of_three_squares(b, ws));
  QuantifiedEquation qe = b.finish({{Quantifier::forall, kV},
                                    {Quantifier::exists, ws[0]},
                                    {Quantifier::exists, ws[1]},
                                    {Quantifier::exists, ws[2]}},
                                   first * second);
  qe.layout = {Layout::Kind::product, {std::move(first), std::move(second)}};
  return qe;
}

QuantifiedEquation build(Shape shape, const ClauseMatrix& m) {
  switch (shape) {
    case Shape::EA_C: return build_EA_C(m);
    case Shape::AE_C: return build_AE_C(m);
    case Shape::E_R: return build_E_R(m);
    case Shape::Ed_R: return build_Ed_R(m);
    case Shape::AE_R: return build_AE_R(m);
    case Shape::E3d_Q: return build_E3d_Q(m);
    case Shape::AE3_Q: return build_AE3_Q(m);
  }
  throw Error(Errc::bad_input, "unknown shape");
}

ClauseMatrix normalize_for(const Formula& phi, Field field, Shape shape, std::size_t clause_limit) {
  if (!admits_field(shape, field))
    throw Error(Errc::incompatible_field, std::string(to_string(shape)) + " is not available over " +
                                              std::string(to_string(field)));
  NormalFormOptions opt;
  opt.field = field;
  opt.neq_as_order = uses_order_literals(shape);
  opt.clause_limit = clause_limit;
  return input_kind(shape) == ClauseKind::dnf ? to_dnf(phi, opt) : to_cnf(phi, opt);
}

QuantifiedEquation eliminate(const Formula& phi, Field field, Shape shape, std::size_t clause_limit) {
  return build(shape, normalize_for(phi, field, shape, clause_limit));
}

// ---------------------------------------------------------------------------
// Degree reports

DegreeReport degree_report(const QuantifiedEquation& qe) {
  if (!qe.shape || !qe.provenance)
    throw Error(Errc::shape_unsupported, "degree reports need a constructed equation");
  const ClauseMatrix& m = *qe.provenance;
  DegreeReport r;
  r.shape = *qe.shape;
  r.d = m.d();
  r.syntactic_d = m.syntactic_clauses;
  r.e_total = m.total_equations();
  r.e_max = m.max_equations();
  r.f_max = m.max_inequalities();
  const long d = static_cast<long>(r.d);
  const long f = static_cast<long>(r.f_max);

  const std::vector<unsigned> degrees = qe.equation.degrees();
  auto degree_in = [&](const Var& v) -> Degree {
    if (qe.equation.is_zero()) return neg_inf;
    const auto& vars = qe.equation.vars();
    const auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it == vars.end() || *it != v) return 0U;
    return degrees[static_cast<std::size_t>(it - vars.begin())];
  };
  auto add = [&](const Var& v, long bound, bool exact) {
    DegreeEntry e{v, degree_in(v), bound, exact, false};
    if (!e.measured) {
      e.ok = true;  // zero equation: every degree is vacuous
    } else {
      const long got = static_cast<long>(*e.measured);
      e.ok = exact ? got == bound : got <= bound;
    }
    r.entries.push_back(std::move(e));
  };

  switch (r.shape) {
    case Shape::EA_C:
      add(kA, d, true);
      add(kB, static_cast<long>(r.e_total), false);
      r.notes.push_back("b-exponents restart at 1 in every clause: each factor has b-degree at most max e_i = " +
                        std::to_string(r.e_max) + ", so the product has b-degree at most e = " +
                        std::to_string(r.e_total));
      break;
    case Shape::AE_C:
      add(kA, 2 * d - 1, true);
      add(kB, f + 1, false);
      break;
    case Shape::E_R:
      add(kR, 2 * d, true);
      break;
    case Shape::Ed_R:
      for (std::size_t i = 1; i <= m.d(); ++i)
        add(indexed_var("r", i), 4 * static_cast<long>(m.inequalities(i - 1)), false);
      r.notes.push_back("bound 4*f_i per r_i; equals the stated degree 4 when each conjunct has one inequality");
      break;
    case Shape::AE_R:
      add(kR, 2 * d - 1, true);
      add(kS, 2 * f + 1, false);
      break;
    case Shape::E3d_Q:
      for (std::size_t i = 1; i <= m.d(); ++i)
        for (std::size_t k = 3 * i - 2; k <= 3 * i; ++k)
          add(indexed_var("v", k), 8 * static_cast<long>(m.inequalities(i - 1)), false);
      break;
    case Shape::AE3_Q:
      add(kV, 2 * d - 1, true);
      add(Var("w1"), 4 * f + 1, false);
      add(Var("w2"), 4 * f, false);
      add(Var("w3"), 4 * f, false);
      break;
  }
  if (r.syntactic_d != r.d)
    r.notes.push_back("pruning reduced " + std::to_string(r.syntactic_d) + " distributed clauses to " +
                      std::to_string(r.d));
  r.satisfied = std::all_of(r.entries.begin(), r.entries.end(), [](const DegreeEntry& e) { return e.ok; });
  return r;
}

// ---------------------------------------------------------------------------
// Witnesses

WitnessValue WitnessValue::sqrt(const Rational& q) {
  if (q.sign() <= 0) throw Error(Errc::not_positive, "square root of non-positive " + q.str());
  if (q.is_square()) return WitnessValue(Scalar(q.sqrt()));
  WitnessValue w;
  w.radicand_ = q;
  return w;
}

std::string WitnessValue::str() const {
  if (radicand_) return "sqrt(" + radicand_->str() + ")";
  return value_.str();
}

WitnessRecipe witness_recipe(const QuantifiedEquation& qe) {
  if (!qe.shape) throw Error(Errc::shape_unsupported, "witness recipes need a constructed equation");
  WitnessRecipe r;
  r.shape = *qe.shape;
  switch (r.shape) {
    case Shape::EA_C:
      r.instructions = {"a := prod_k u_ik(x)^-1 for the first disjunct i true at x"};
      break;
    case Shape::E_R:
      r.instructions = {"r := prod_k u_ik(x)^-1 for the first disjunct i true at x"};
      break;
    case Shape::AE_C:
      r.instructions = {"a not in {1..d}: b := prod_i (a - i)^-1",
                        "a = i, some t_ij(x) = 0: b := 0",
                        "a = i, some u_ik(x) != 0: b := u_ik(x)^-1"};
      break;
    case Shape::AE_R:
      r.instructions = {"r not in {1..d}: s := prod_i (r - i)^-1",
                        "r = i, some t_ij(x) = 0: s := 0",
                        "r = i, some u_ik(x) > 0: s := sqrt(1/u_ik(x))"};
      break;
    case Shape::Ed_R:
      r.instructions = {"conjunct i with some t_ij(x) = 0: r_i := 0",
                        "conjunct i with some u_ik(x) > 0: r_i := sqrt(1/u_ik(x))"};
      break;
    case Shape::E3d_Q:
      r.instructions = {"conjunct i with some t_ij(x) = 0: v_{3i-2..3i} := 0",
                        "conjunct i with some u_ik(x) > 0: v_{3i-2..3i} := three-squares witness of u_ik(x)"};
      break;
    case Shape::AE3_Q:
      r.instructions = {"v not in {1..d}: w1 := prod_i (v - i)^-1, w2 := w3 := 0",
                        "v = i, some t_ij(x) = 0: w := 0",
                        "v = i, some u_ik(x) > 0: w := three-squares witness of u_ik(x)"};
      break;
  }
  return r;
}

namespace {

std::optional<std::size_t> lagrange_node(const Scalar& value, std::size_t d) {
  if (!value.is_real() || !value.re().is_integer()) return std::nullopt;
  const Integer n = value.re().numerator();
  if (n < 1 || n > static_cast<long>(d)) return std::nullopt;
  return static_cast<std::size_t>(n.get_ui());
}

Scalar node_product_inverse(const Scalar& value, std::size_t d) {
  Scalar p(1);
  for (std::size_t i = 1; i <= d; ++i) p *= value - Scalar(static_cast<long>(i));
  return p.inverse();
}

const Scalar& universal_value(const Point& universal, const Var& v) {
  auto it = universal.find(v);
  if (it == universal.end())
    throw Error(Errc::missing_assignment, "no value supplied for universal variable '" + v.name() + "'");
  return it->second;
}

bool has_vanishing_equation(const Clause& c, const Point& x) {
  return std::any_of(c.begin(), c.end(),
                     [&](const Atom& a) { return a.rel == Rel::eq && a.term.evaluate(x).is_zero(); });
}

// First inequality literal true at x, as the value u_ik(x).
std::optional<Scalar> true_inequality(const Clause& c, const Point& x) {
  for (const auto& a : c)
    if (a.rel != Rel::eq && eval_atom(a, x)) return a.term.evaluate(x);
  return std::nullopt;
}

Scalar disjunct_inverse(const ClauseMatrix& m, const Point& x) {
  for (const auto& c : m.clauses) {
    if (!eval_clause(c, ClauseKind::dnf, x)) continue;
    Scalar prod(1);
    for (const auto& a : c)
      if (a.rel != Rel::eq) prod *= a.term.evaluate(x);
    return prod.inverse();
  }
  throw Error(Errc::no_witness, "no disjunct holds at the point");
}

// Witness for one CNF conjunct with a single existential variable.
WitnessValue conjunct_witness(const Clause& c, const Point& x, bool order_gadget) {
  if (has_vanishing_equation(c, x)) return Scalar(0);
  auto u = true_inequality(c, x);
  if (!u) throw Error(Errc::no_witness, "conjunct fails at the point");
  if (order_gadget) return WitnessValue::sqrt(u->re().inverse());
  return u->inverse();
}

std::array<Rational, 3> conjunct_three_squares(const Clause& c, const Point& x) {
  if (has_vanishing_equation(c, x)) return {Rational(0), Rational(0), Rational(0)};
  auto u = true_inequality(c, x);
  if (!u) throw Error(Errc::no_witness, "conjunct fails at the point");
  return positivity_witness_q(u->re()).v;
}

}  // namespace

Assignment extract_witness(const WitnessRecipe& recipe, const ClauseMatrix& m, const Point& x,
                           const Point& universal) {
  if (!eval_matrix(m, x)) throw Error(Errc::no_witness, "formula is false at the point");
  Assignment out;
  switch (recipe.shape) {
    case Shape::EA_C:
      out[kA] = disjunct_inverse(m, x);
      break;
    case Shape::E_R:
      out[kR] = disjunct_inverse(m, x);
      break;
    case Shape::AE_C:
    case Shape::AE_R: {
      const bool real = recipe.shape == Shape::AE_R;
      const Var& u_var = real ? kR : kA;
      const Var& e_var = real ? kS : kB;
      const Scalar& value = universal_value(universal, u_var);
      if (auto node = lagrange_node(value, m.d())) {
        out[e_var] = conjunct_witness(m.clauses[*node - 1], x, real);
      } else {
        out[e_var] = node_product_inverse(value, m.d());
      }
      break;
    }
    case Shape::Ed_R:
      for (std::size_t i = 1; i <= m.d(); ++i)
        out[indexed_var("r", i)] = conjunct_witness(m.clauses[i - 1], x, true);
      break;
    case Shape::E3d_Q:
      for (std::size_t i = 1; i <= m.d(); ++i) {
        const auto v = conjunct_three_squares(m.clauses[i - 1], x);
        for (std::size_t k = 0; k < 3; ++k) out[indexed_var("v", 3 * i - 2 + k)] = Scalar(v[k]);
      }
      break;
    case Shape::AE3_Q: {
      const Scalar& value = universal_value(universal, kV);
      std::array<Rational, 3> w{Rational(0), Rational(0), Rational(0)};
      if (auto node = lagrange_node(value, m.d())) {
        w = conjunct_three_squares(m.clauses[*node - 1], x);
      } else {
        w[0] = node_product_inverse(value, m.d()).re();
      }
      for (std::size_t k = 0; k < 3; ++k) out[indexed_var("w", k + 1)] = Scalar(w[k]);
      break;
    }
  }
  return out;
}

}  // namespace boolelim
