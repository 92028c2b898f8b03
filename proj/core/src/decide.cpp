#include "boolelim/decide.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>

#include "boolelim/error.hpp"
#include "boolelim/random.hpp"
#include "boolelim/univariate.hpp"

namespace boolelim {

Verdict Verdict::refuted(Scalar sample) {
  Verdict v(Kind::refuted);
  v.sample_ = std::move(sample);
  return v;
}

Verdict Verdict::unresolved(std::size_t samples_tried) {
  Verdict v(Kind::unresolved);
  v.samples_tried_ = samples_tried;
  return v;
}

std::string Verdict::str() const {
  switch (kind_) {
    case Kind::truth: return "TRUE";
    case Kind::falsity: return "FALSE";
    case Kind::refuted: return "REFUTED(" + sample_->str() + ")";
    case Kind::unresolved: return "UNRESOLVED(" + std::to_string(samples_tried_) + ")";
  }
  return "?";
}

bool exists_root_C(const UniView& p) {
  if (p.coeffs.size() != 1) return true;  // zero, or degree >= 1
  if (!p.coeffs[0].is_constant())
    throw Error(Errc::unexpected_variables, "coefficient '" + p.coeffs[0].str() + "' is not a scalar");
  return p.coeffs[0].is_zero();
}

MultiPoly instantiate(const QuantifiedEquation& qe, const Point& x) {
  MultiPoly p = substitute(qe.equation, x);
  const auto extra = variables_outside(p, qe.quantified_vars());
  if (!extra.empty())
    throw Error(Errc::unexpected_variables, "no value for free variable '" + extra.front().name() + "'");
  return p;
}

namespace {

// Structured deciders validate on every call, and a caller typically decides
// one equation at many points; rebuilding each time would dominate.  The few
// most recent rebuilds are kept, keyed by shape and source clauses.  A hit
// still compares the full equation, so the check stays exact.
class RebuildCache {
 public:
  std::shared_ptr<const QuantifiedEquation> get(Shape shape, const ClauseMatrix& source) {
    {
      const std::lock_guard lock(mutex_);
      for (const auto& e : entries_)
        if (e.shape == shape && e.source == source) return e.rebuilt;
    }
    auto rebuilt = std::make_shared<const QuantifiedEquation>(build(shape, source));
    const std::lock_guard lock(mutex_);
    if (entries_.size() == kCapacity) entries_.pop_front();
    entries_.push_back({shape, source, rebuilt});
    return rebuilt;
  }

 private:
  struct Entry {
    Shape shape;
    ClauseMatrix source;
    std::shared_ptr<const QuantifiedEquation> rebuilt;
  };
  static constexpr std::size_t kCapacity = 8;
  std::mutex mutex_;
  std::deque<Entry> entries_;
};

RebuildCache& rebuild_cache() {
  static RebuildCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const QuantifiedEquation> validate_shape(const QuantifiedEquation& qe, Shape expected) {
  if (qe.shape != expected)
    throw Error(Errc::shape_unsupported,
                "equation is not tagged as a constructed " + std::string(to_string(expected)) + " form");
  if (!qe.provenance)
    throw Error(Errc::shape_unsupported, "equation carries no source clauses to validate against");
  std::shared_ptr<const QuantifiedEquation> rebuilt;
  try {
    rebuilt = rebuild_cache().get(expected, *qe.provenance);
  } catch (const Error& e) {
    throw Error(Errc::shape_unsupported, std::string("source clauses do not rebuild: ") + e.what());
  }
  if (rebuilt->field != qe.field || rebuilt->prefix != qe.prefix || !(rebuilt->equation == qe.equation))
    throw Error(Errc::shape_unsupported,
                "equation differs from the " + std::string(to_string(expected)) + " form of its source clauses");
  return rebuilt;
}

namespace {

void expect_prefix(const QuantifiedEquation& qe, std::initializer_list<Quantifier> pattern,
                   const char* what) {
  const bool ok = qe.prefix.size() == pattern.size() &&
                  std::equal(pattern.begin(), pattern.end(), qe.prefix.begin(),
                             [](Quantifier q, const QuantifiedVar& qv) { return q == qv.quantifier; });
  if (!ok) throw Error(Errc::shape_unsupported, std::string("expected a ") + what + " prefix");
}

void expect_field(const QuantifiedEquation& qe, Field field, const char* what) {
  if (qe.field != field)
    throw Error(Errc::shape_unsupported,
                std::string(what) + " decides equations over " + std::string(to_string(field)) + " only");
}

bool has_real_root(const MultiPoly& p, const Var& v) {
  return count_real_roots(UniPoly::from_poly(p, v)).any();
}

bool node_clause_solvable_Q(const Clause& clause, const Point& x) {
  for (const auto& a : clause) {
    const Scalar value = a.term.evaluate(x);
    if (a.rel == Rel::eq) {
      if (value.is_zero()) return true;
      continue;
    }
    const Rational& u = value.re();
    if (u.sign() <= 0) continue;
    const Rational inv = u.inverse();
    if (is_rational_sum_three_squares(inv) || is_rational_sum_three_squares(inv / Rational(2)))
      return true;
  }
  return false;
}

}  // namespace

bool decide_EA_C(const QuantifiedEquation& qe, const Point& x) {
  expect_prefix(qe, {Quantifier::exists, Quantifier::forall}, "exists-forall");
  expect_field(qe, Field::C, "decide_EA_C");
  const Var& a = qe.prefix[0].var;
  const Var& b = qe.prefix[1].var;
  const UniView view = as_univariate(instantiate(qe, x), b);
  UniPoly g;
  for (const auto& c : view.coeffs) g = gcd_univariate(g, UniPoly::from_poly(c, a));
  // All b-coefficients vanish identically, or they share a root in a.
  return g.is_zero() || g.degree().value_or(0) >= 1;
}

bool decide_AE_C(const QuantifiedEquation& qe, const Point& x) {
  expect_prefix(qe, {Quantifier::forall, Quantifier::exists}, "forall-exists");
  expect_field(qe, Field::C, "decide_AE_C");
  const Var& a = qe.prefix[0].var;
  const Var& b = qe.prefix[1].var;
  const UniView view = as_univariate(instantiate(qe, x), b);
  const UniPoly d0 = view.coeffs.empty() ? UniPoly() : UniPoly::from_poly(view.coeffs[0], a);
  UniPoly g;
  for (std::size_t j = 1; j < view.coeffs.size(); ++j) g = gcd_univariate(g, UniPoly::from_poly(view.coeffs[j], a));
  // The inner equation fails at a exactly when d_0(a) != 0 and d_j(a) = 0 for j >= 1.
  if (g.is_zero()) return d0.is_zero();
  if (g.is_constant()) return true;
  const UniPoly roots = squarefree_part(g);
  return gcd_univariate(roots, d0).degree() == roots.degree();
}

bool decide_E_R(const QuantifiedEquation& qe, const Point& x) {
  expect_prefix(qe, {Quantifier::exists}, "single exists");
  if (qe.field == Field::Q) {
    // A real root of a constructed E_R form is 1/prod(u), hence rational.
    validate_shape(qe, Shape::E_R);
  } else {
    expect_field(qe, Field::R, "decide_E_R");
  }
  return has_real_root(instantiate(qe, x), qe.prefix[0].var);
}

bool decide_Ed_R(const QuantifiedEquation& qe, const Point& x) {
  const auto rebuilt = validate_shape(qe, Shape::Ed_R);
  // A sum of real squares vanishes iff each bracket does; bracket i involves r_i only.
  for (std::size_t i = 0; i < rebuilt->layout.brackets.size(); ++i) {
    MultiPoly bracket = substitute(rebuilt->layout.brackets[i], x);
    if (!has_real_root(bracket, rebuilt->prefix[i].var)) return false;
  }
  return true;
}

bool decide_AE_R_structured(const QuantifiedEquation& qe, const Point& x) {
  validate_shape(qe, Shape::AE_R);
  const Var& r = qe.prefix[0].var;
  const Var& s = qe.prefix[1].var;
  const MultiPoly p = instantiate(qe, x);
  for (std::size_t k = 1; k <= qe.provenance->d(); ++k) {
    const MultiPoly at_node = substitute(p, Point{{r, Scalar(static_cast<long>(k))}});
    if (!has_real_root(at_node, s)) return false;
  }
  return true;
}

bool decide_E3d_Q_structured(const QuantifiedEquation& qe, const Point& x) {
  validate_shape(qe, Shape::E3d_Q);
  return std::all_of(qe.provenance->clauses.begin(), qe.provenance->clauses.end(),
                     [&](const Clause& c) { return node_clause_solvable_Q(c, x); });
}

bool decide_AE3_Q_structured(const QuantifiedEquation& qe, const Point& x) {
  validate_shape(qe, Shape::AE3_Q);
  // At v = k the equation reduces to clause k's bracket; elsewhere w1 = 1/prod(v - i) works.
  for (std::size_t k = 1; k <= qe.provenance->d(); ++k)
    if (!node_clause_solvable_Q(qe.provenance->clauses[k - 1], x)) return false;
  return true;
}

Verdict refute_AE(const QuantifiedEquation& qe, const Point& x, const SamplePlan& plan) {
  if (plan.count == 0) throw Error(Errc::bad_input, "sample plan needs count >= 1");
  expect_prefix(qe, {Quantifier::forall, Quantifier::exists}, "forall-exists with one existential variable");
  if (qe.field == Field::Q)
    throw Error(Errc::shape_unsupported, "no exact one-variable test over Q for the refuter");
  const Var& u = qe.prefix[0].var;
  const Var& e = qe.prefix[1].var;
  const MultiPoly p = instantiate(qe, x);

  auto inner_holds = [&](const Scalar& value) {
    const MultiPoly q = substitute(p, Point{{u, value}});
    if (qe.field == Field::C) return exists_root_C(as_univariate(q, e));
    return has_real_root(q, e);
  };

  const std::size_t integers =
      std::min(plan.include_integers_up_to.value_or(qe.provenance ? qe.provenance->d() : 0), plan.count);
  for (std::size_t k = 1; k <= integers; ++k) {
    Scalar value(static_cast<long>(k));
    if (!inner_holds(value)) return Verdict::refuted(std::move(value));
  }
  Rng rng(plan.seed);
  for (std::size_t tried = integers; tried < plan.count; ++tried) {
    Scalar value(rng.rational(plan.num_bound, plan.den_bound));
    if (qe.field == Field::C && rng.chance(0.5))
      value = Scalar(value.re(), rng.rational(plan.num_bound, plan.den_bound));
    if (!inner_holds(value)) return Verdict::refuted(std::move(value));
  }
  return Verdict::unresolved(plan.count);
}

// ---------------------------------------------------------------------------
// Witness checking with square roots.
//
// After scalar substitution every term is c * prod_i sqrt(q_i)^{e_i} * m(U)
// with m a monomial in the unassigned universal variables. Even powers are
// rational; odd ones leave sqrt(rho) with rho the product of the q_i. Square
// roots of rationals in different square classes are linearly independent
// over Q(i), so the sum vanishes iff, for every monomial m and every class,
// the coefficients (rescaled to a common representative) cancel.

namespace {

struct RadicalClass {
  Rational representative;
  Scalar sum;
};

}  // namespace

bool check_witness(const QuantifiedEquation& qe, const Point& x, const Assignment& assignment) {
  for (const auto& v : qe.exists_vars())
    if (!assignment.count(v))
      throw Error(Errc::missing_assignment, "no witness for existential variable '" + v.name() + "'");

  Point scalars = x;
  std::map<Var, Rational> radicals;
  for (const auto& [v, w] : assignment) {
    if (w.is_radical()) {
      radicals.emplace(v, w.radicand());
    } else {
      scalars[v] = w.value();
    }
  }
  const MultiPoly p = instantiate(qe, scalars);
  if (radicals.empty()) return p.is_zero();

  const auto& vars = p.vars();
  std::vector<std::optional<Rational>> radicand_of(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (auto it = radicals.find(vars[i]); it != radicals.end()) radicand_of[i] = it->second;

  std::map<Exponents, std::vector<RadicalClass>> groups;
  for (const auto& term : p.terms()) {
    Exponents rest(term.exps.size(), 0);
    Rational factor(1);
    Rational rho(1);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const std::uint32_t e = term.exps[i];
      if (!radicand_of[i]) {
        rest[i] = e;
        continue;
      }
      factor *= pow(*radicand_of[i], e / 2);
      if (e % 2 == 1) rho *= *radicand_of[i];
    }
    auto& classes = groups[rest];
    const Scalar contribution = term.coeff * Scalar(factor);
    bool placed = false;
    for (auto& cls : classes) {
      const Rational ratio = rho / cls.representative;
      if (ratio.is_square()) {
        cls.sum += contribution * Scalar(ratio.sqrt());
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({rho, contribution});
  }
  for (const auto& [monomial, classes] : groups)
    for (const auto& cls : classes)
      if (!cls.sum.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Decider decider) {
  switch (decider) {
    case Decider::ea_c: return "decide_EA_C";
    case Decider::ae_c: return "decide_AE_C";
    case Decider::e_r: return "decide_E_R";
    case Decider::ed_r: return "decide_Ed_R";
    case Decider::ae_r_structured: return "decide_AE_R_structured";
    case Decider::e3d_q_structured: return "decide_E3d_Q_structured";
    case Decider::ae3_q_structured: return "decide_AE3_Q_structured";
  }
  return "?";
}

Decider decider_for(Shape shape) {
  switch (shape) {
    case Shape::EA_C: return Decider::ea_c;
    case Shape::AE_C: return Decider::ae_c;
    case Shape::E_R: return Decider::e_r;
    case Shape::Ed_R: return Decider::ed_r;
    case Shape::AE_R: return Decider::ae_r_structured;
    case Shape::E3d_Q: return Decider::e3d_q_structured;
    case Shape::AE3_Q: return Decider::ae3_q_structured;
  }
  throw Error(Errc::shape_unsupported, "unknown shape");
}

Decider decider_for(const QuantifiedEquation& qe) {
  if (qe.shape) return decider_for(*qe.shape);
  std::vector<Quantifier> pattern;
  for (const auto& qv : qe.prefix) pattern.push_back(qv.quantifier);
  using Q = Quantifier;
  if (qe.field == Field::C && pattern == std::vector<Q>{Q::exists, Q::forall}) return Decider::ea_c;
  if (qe.field == Field::C && pattern == std::vector<Q>{Q::forall, Q::exists}) return Decider::ae_c;
  if (qe.field == Field::R && pattern == std::vector<Q>{Q::exists}) return Decider::e_r;
  throw Error(Errc::shape_unsupported, "no complete decider for this prefix over " +
                                           std::string(to_string(qe.field)));
}

bool run_decider(Decider decider, const QuantifiedEquation& qe, const Point& x) {
  switch (decider) {
    case Decider::ea_c: return decide_EA_C(qe, x);
    case Decider::ae_c: return decide_AE_C(qe, x);
    case Decider::e_r: return decide_E_R(qe, x);
    case Decider::ed_r: return decide_Ed_R(qe, x);
    case Decider::ae_r_structured: return decide_AE_R_structured(qe, x);
    case Decider::e3d_q_structured: return decide_E3d_Q_structured(qe, x);
    case Decider::ae3_q_structured: return decide_AE3_Q_structured(qe, x);
  }
  throw Error(Errc::shape_unsupported, "unknown decider");
}

bool decide(const QuantifiedEquation& qe, const Point& x) { return run_decider(decider_for(qe), qe, x); }

EquivalenceReport equivalence_run(const Formula& phi, const QuantifiedEquation& qe, Decider decider,
                                  const SamplePlan& plan) {
  std::vector<Var> vars = free_variables(phi);
  for (const auto& v : variables_outside(qe.equation, qe.quantified_vars())) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  EquivalenceReport report;
  report.seed = plan.seed;
  report.decider = decider;
  Rng rng(plan.seed);
  const std::string formula_text = phi.str();
  const std::string equation_text = qe.equation.str();
  for (std::size_t i = 0; i < plan.count; ++i) {
    Point x = random_point(rng, vars, qe.field, plan.num_bound);
    const bool expected = eval_formula(phi, x);
    const bool got = run_decider(decider, qe, x);
    ++report.points;
    if (expected == got) {
      ++report.agreements;
    } else {
      report.disagreements.push_back({formula_text, equation_text, std::move(x), expected, got, plan.seed});
    }
  }
  return report;
}

}  // namespace boolelim
