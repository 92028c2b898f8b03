#include "boolelim/formula.hpp"

#include <algorithm>
#include <set>

#include "boolelim/error.hpp"
#include "boolelim/random.hpp"
#include "text_parser.hpp"

namespace boolelim {

std::string_view to_string(Field field) {
  switch (field) {
    case Field::C: return "C";
    case Field::R: return "R";
    case Field::Q: return "Q";
  }
  return "?";
}

Field parse_field(std::string_view text) {
  if (text == "C" || text == "c") return Field::C;
  if (text == "R" || text == "r") return Field::R;
  if (text == "Q" || text == "q") return Field::Q;
  throw Error(Errc::bad_input, "unknown field '" + std::string(text) + "'");
}

ScalarField scalar_field(Field field) {
  return field == Field::C ? ScalarField::gaussian : ScalarField::rational;
}

std::string_view to_string(Rel rel) {
  switch (rel) {
    case Rel::eq: return "=";
    case Rel::neq: return "!=";
    case Rel::gt: return ">";
  }
  return "?";
}

std::string_view to_string(ClauseKind kind) { return kind == ClauseKind::dnf ? "DNF" : "CNF"; }

std::string Atom::str() const { return term.str() + " " + std::string(to_string(rel)) + " 0"; }

// ---------------------------------------------------------------------------
// Formula

Formula Formula::make_atom(Atom atom) {
  Formula f;
  f.kind_ = Kind::atom;
  f.atom_ = std::make_shared<const Atom>(std::move(atom));
  return f;
}

Formula Formula::negation(Formula inner) {
  Formula f;
  f.kind_ = Kind::negation;
  f.children_.push_back(std::move(inner));
  return f;
}

Formula Formula::conjunction(std::vector<Formula> children) {
  Formula f;
  f.kind_ = Kind::conjunction;
  f.children_ = std::move(children);
  return f;
}

Formula Formula::disjunction(std::vector<Formula> children) {
  Formula f;
  f.kind_ = Kind::disjunction;
  f.children_ = std::move(children);
  return f;
}

Formula Formula::truth() { return Formula(); }

Formula Formula::falsity() {
  Formula f;
  f.kind_ = Kind::falsity;
  return f;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Formula::Kind::atom) return *a.atom_ == *b.atom_;
  return a.children_ == b.children_;
}

std::string Formula::str() const {
  switch (kind_) {
    case Kind::atom: return atom_->str();
    case Kind::truth: return "true";
    case Kind::falsity: return "false";
    case Kind::negation: return "~(" + children_.front().str() + ")";
    case Kind::conjunction:
    case Kind::disjunction: {
      if (children_.empty()) return kind_ == Kind::conjunction ? "true" : "false";
      const char* sep = kind_ == Kind::conjunction ? " /\\ " : " \\/ ";
      std::string s = "(";
      for (std::size_t k = 0; k < children_.size(); ++k) {
        if (k != 0) s += sep;
        s += children_[k].str();
      }
      return s + ")";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class FormulaReader {
 public:
  FormulaReader(std::string_view text, Field field)
      : field_(field),
        poly_(detail::tokenize(text), scalar_field(field), [](const std::string& name, std::size_t pos) {
          if (Var::is_reserved_name(name))
            throw Error(Errc::reserved_name, "variable '" + name + "' at position " +
                                                 std::to_string(pos) +
                                                 " is reserved for quantified variables");
        }) {}

  Formula parse() {
    Formula f = disjunction();
    poly_.expect_end();
    return f;
  }

 private:
  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (poly_.at(detail::Tok::disj)) {
      poly_.advance();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (poly_.at(detail::Tok::conj)) {
      poly_.advance();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Formula::conjunction(std::move(parts));
  }

  Formula unary() {
    using detail::Tok;
    if (poly_.at(Tok::neg)) {
      poly_.advance();
      return Formula::negation(unary());
    }
    if (poly_.at(Tok::kw_true)) {
      poly_.advance();
      return Formula::truth();
    }
    if (poly_.at(Tok::kw_false)) {
      poly_.advance();
      return Formula::falsity();
    }
    if (poly_.at(Tok::lparen)) {
      // Either a parenthesized formula or a relation starting with a
      // parenthesized polynomial; keep whichever failure got further.
      const std::size_t m = poly_.mark();
      try {
        return relation();
      } catch (const detail::ParseFailure& as_relation) {
        poly_.reset(m);
        try {
          poly_.advance();
          Formula inner = disjunction();
          poly_.expect(Tok::rparen);
          return inner;
        } catch (const detail::ParseFailure& as_group) {
          throw as_group.pos >= as_relation.pos ? as_group : as_relation;
        }
      }
    }
    return relation();
  }

  Formula relation() {
    using detail::Tok;
    MultiPoly lhs = poly_.sum();
    const detail::Token& op = poly_.peek();
    switch (op.kind) {
      case Tok::eq: case Tok::neq: case Tok::gt: case Tok::ge: case Tok::lt: case Tok::le:
        break;
      default:
        poly_.fail("a relation (=, !=, >, >=, <, <=)");
    }
    const Tok rel = poly_.advance().kind;
    if (field_ == Field::C && rel != Tok::eq && rel != Tok::neq)
      throw Error(Errc::order_in_c, "order relation " + detail::describe(rel) + " at position " +
                                        std::to_string(op.pos) + " is not available over C");
    MultiPoly t = lhs - poly_.sum();
    auto atom = [](MultiPoly term, Rel r) { return Formula::make_atom(Atom{std::move(term), r}); };
    switch (rel) {
      case Tok::eq: return atom(t, Rel::eq);
      case Tok::neq: return atom(t, Rel::neq);
      case Tok::gt: return atom(t, Rel::gt);
      case Tok::lt: return atom(-t, Rel::gt);
      case Tok::ge: return Formula::disjunction({atom(t, Rel::gt), atom(t, Rel::eq)});
      case Tok::le: return Formula::disjunction({atom(-t, Rel::gt), atom(t, Rel::eq)});
      default: break;
    }
    poly_.fail("a relation");
  }

  Field field_;
  detail::PolyReader poly_;
};

}  // namespace

Formula parse_formula(std::string_view text, Field field) {
  try {
    return FormulaReader(text, field).parse();
  } catch (const detail::ParseFailure& f) {
    throw f.to_error();
  }
}

// ---------------------------------------------------------------------------
// Negation normal form

namespace {

Formula nnf(const Formula& phi, bool positive) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::atom: {
      if (positive) return phi;
      const Atom& a = phi.atom();
      switch (a.rel) {
        case Rel::eq: return Formula::make_atom(Atom{a.term, Rel::neq});
        case Rel::neq: return Formula::make_atom(Atom{a.term, Rel::eq});
        case Rel::gt:
          return Formula::disjunction(
              {Formula::make_atom(Atom{-a.term, Rel::gt}), Formula::make_atom(Atom{a.term, Rel::eq})});
      }
      break;
    }
    case K::negation: return nnf(phi.children().front(), !positive);
    case K::conjunction:
    case K::disjunction: {
      std::vector<Formula> kids;
      kids.reserve(phi.children().size());
      for (const auto& c : phi.children()) kids.push_back(nnf(c, positive));
      const bool conj = (phi.kind() == K::conjunction) == positive;
      return conj ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case K::truth: return positive ? Formula::truth() : Formula::falsity();
    case K::falsity: return positive ? Formula::falsity() : Formula::truth();
  }
  return phi;
}

}  // namespace

Formula to_nnf(const Formula& phi) { return nnf(phi, true); }

// ---------------------------------------------------------------------------
// Clause matrices

std::size_t ClauseMatrix::equations(std::size_t i) const {
  return static_cast<std::size_t>(
      std::count_if(clauses[i].begin(), clauses[i].end(), [](const Atom& a) { return a.rel == Rel::eq; }));
}

std::size_t ClauseMatrix::inequalities(std::size_t i) const { return clauses[i].size() - equations(i); }

std::size_t ClauseMatrix::total_equations() const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < d(); ++i) e += equations(i);
  return e;
}

std::size_t ClauseMatrix::max_equations() const {
  std::size_t e = 0;
  for (std::size_t i = 0; i < d(); ++i) e = std::max(e, equations(i));
  return e;
}

std::size_t ClauseMatrix::max_inequalities() const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < d(); ++i) f = std::max(f, inequalities(i));
  return f;
}

Formula ClauseMatrix::to_formula() const {
  std::vector<Formula> outer;
  for (const auto& clause : clauses) {
    std::vector<Formula> lits;
    for (const auto& a : clause) lits.push_back(Formula::make_atom(a));
    outer.push_back(kind == ClauseKind::dnf ? Formula::conjunction(std::move(lits))
                                            : Formula::disjunction(std::move(lits)));
  }
  return kind == ClauseKind::dnf ? Formula::disjunction(std::move(outer))
                                 : Formula::conjunction(std::move(outer));
}

namespace {

using Clauses = std::vector<Clause>;

void check_limit(std::size_t n, std::size_t limit) {
  if (n > limit)
    throw Error(Errc::size_limit, std::to_string(n) + " clauses exceed the limit of " +
                                      std::to_string(limit));
}

// For DNF the outer connective is Or and clauses are conjunctions; CNF is
// the dual. `outer` is the connective that concatenates clause lists.
Clauses distribute(const Formula& phi, ClauseKind kind, const NormalFormOptions& opt) {
  using K = Formula::Kind;
  const K outer = kind == ClauseKind::dnf ? K::disjunction : K::conjunction;
  switch (phi.kind()) {
    case K::atom: {
      const Atom& a = phi.atom();
      if (opt.neq_as_order && a.rel == Rel::neq) {
        Atom pos{a.term, Rel::gt};
        Atom neg{-a.term, Rel::gt};
        if (kind == ClauseKind::dnf) return {{pos}, {neg}};
        return {{pos, neg}};
      }
      return {{a}};
    }
    case K::truth: return kind == ClauseKind::dnf ? Clauses{{}} : Clauses{};
    case K::falsity: return kind == ClauseKind::dnf ? Clauses{} : Clauses{{}};
    case K::negation: return distribute(to_nnf(phi), kind, opt);
    case K::conjunction:
    case K::disjunction: {
      if (phi.kind() == outer) {
        Clauses out;
        for (const auto& c : phi.children()) {
          Clauses part = distribute(c, kind, opt);
          check_limit(out.size() + part.size(), opt.clause_limit);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      Clauses acc{{}};
      for (const auto& c : phi.children()) {
        Clauses part = distribute(c, kind, opt);
        check_limit(acc.size() * part.size(), opt.clause_limit);
        Clauses next;
        next.reserve(acc.size() * part.size());
        for (const auto& x : acc)
          for (const auto& y : part) {
            Clause merged = x;
            merged.insert(merged.end(), y.begin(), y.end());
            next.push_back(std::move(merged));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

// Truth value of an atom whose term is constant.
bool constant_truth(const Atom& a) {
  const Scalar c = a.term.constant_value();
  switch (a.rel) {
    case Rel::eq: return c.is_zero();
    case Rel::neq: return !c.is_zero();
    case Rel::gt: return c.is_real() && c.re().sign() > 0;
  }
  return false;
}

// Returns false when the clause should be dropped: a contradictory
// conjunction (DNF) or a tautological disjunction (CNF).
bool prune_clause(Clause& clause, ClauseKind kind) {
  const bool conj = kind == ClauseKind::dnf;
  Clause kept;
  for (auto& a : clause) {
    if (a.term.is_constant()) {
      const bool truth = constant_truth(a);
      if (truth != conj) return false;  // false in a conjunction, true in a disjunction
      continue;                          // neutral literal
    }
    if (std::find(kept.begin(), kept.end(), a) == kept.end()) kept.push_back(std::move(a));
  }
  auto has = [&](const MultiPoly& t, Rel rel) {
    return std::find(kept.begin(), kept.end(), Atom{t, rel}) != kept.end();
  };
  for (const auto& a : kept) {
    if (a.rel == Rel::eq && has(a.term, Rel::neq)) return false;
    // Trichotomy: t = 0, t > 0 and -t > 0 are mutually exclusive and
    // together exhaustive.
    if (a.rel != Rel::gt) continue;
    const MultiPoly neg = -a.term;
    if (conj && (has(a.term, Rel::eq) || has(neg, Rel::gt))) return false;
    if (!conj && has(a.term, Rel::eq) && has(neg, Rel::gt)) return false;
  }
  clause = std::move(kept);
  return true;
}

bool same_literal_set(const Clause& x, const Clause& y) {
  if (x.size() != y.size()) return false;
  return std::all_of(x.begin(), x.end(),
                     [&](const Atom& a) { return std::find(y.begin(), y.end(), a) != y.end(); });
}

ClauseMatrix normal_form(const Formula& phi, ClauseKind kind, const NormalFormOptions& opt) {
  ClauseMatrix m;
  m.kind = kind;
  m.field = opt.field;
  Clauses raw = distribute(to_nnf(phi), kind, opt);
  m.syntactic_clauses = raw.size();
  for (auto& clause : raw) {
    if (!prune_clause(clause, kind)) continue;
    const bool dup = std::any_of(m.clauses.begin(), m.clauses.end(),
                                 [&](const Clause& c) { return same_literal_set(c, clause); });
    if (!dup) m.clauses.push_back(std::move(clause));
  }
  return m;
}

}  // namespace

ClauseMatrix to_dnf(const Formula& phi, const NormalFormOptions& options) {
  return normal_form(phi, ClauseKind::dnf, options);
}

ClauseMatrix to_cnf(const Formula& phi, const NormalFormOptions& options) {
  return normal_form(phi, ClauseKind::cnf, options);
}

// ---------------------------------------------------------------------------
// Evaluation

bool eval_atom(const Atom& atom, const Point& point) {
  const Scalar value = atom.term.evaluate(point);
  switch (atom.rel) {
    case Rel::eq: return value.is_zero();
    case Rel::neq: return !value.is_zero();
    case Rel::gt:
      if (!value.is_real())
        throw Error(Errc::order_on_complex, "order atom '" + atom.str() + "' at a non-real value");
      return value.re().sign() > 0;
  }
  return false;
}

bool eval_clause(const Clause& clause, ClauseKind kind, const Point& point) {
  if (kind == ClauseKind::dnf)
    return std::all_of(clause.begin(), clause.end(), [&](const Atom& a) { return eval_atom(a, point); });
  return std::any_of(clause.begin(), clause.end(), [&](const Atom& a) { return eval_atom(a, point); });
}

bool eval_matrix(const ClauseMatrix& m, const Point& point) {
  if (m.kind == ClauseKind::dnf)
    return std::any_of(m.clauses.begin(), m.clauses.end(),
                       [&](const Clause& c) { return eval_clause(c, m.kind, point); });
  return std::all_of(m.clauses.begin(), m.clauses.end(),
                     [&](const Clause& c) { return eval_clause(c, m.kind, point); });
}

bool eval_formula(const Formula& phi, const Point& point) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::atom: return eval_atom(phi.atom(), point);
    case K::negation: return !eval_formula(phi.children().front(), point);
    case K::conjunction:
      return std::all_of(phi.children().begin(), phi.children().end(),
                         [&](const Formula& c) { return eval_formula(c, point); });
    case K::disjunction:
      return std::any_of(phi.children().begin(), phi.children().end(),
                         [&](const Formula& c) { return eval_formula(c, point); });
    case K::truth: return true;
    case K::falsity: return false;
  }
  return false;
}

namespace {

void collect_vars(const Formula& phi, std::set<Var>& out) {
  if (phi.kind() == Formula::Kind::atom) {
    out.insert(phi.atom().term.vars().begin(), phi.atom().term.vars().end());
    return;
  }
  for (const auto& c : phi.children()) collect_vars(c, out);
}

}  // namespace

std::vector<Var> free_variables(const Formula& phi) {
  std::set<Var> vars;
  collect_vars(phi, vars);
  return {vars.begin(), vars.end()};
}

std::vector<Var> free_variables(const ClauseMatrix& m) {
  std::set<Var> vars;
  for (const auto& c : m.clauses)
    for (const auto& a : c) vars.insert(a.term.vars().begin(), a.term.vars().end());
  return {vars.begin(), vars.end()};
}

// ---------------------------------------------------------------------------
// Random formulas

namespace {

MultiPoly random_term(Rng& rng, const RandomFormulaParams& p) {
  const ScalarField sf = scalar_field(p.field);
  auto x = [&]() { return MultiPoly::variable(indexed_var("x", static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(p.n_vars)))), sf); };
  auto coeff = [&]() {
    std::int64_t c = 0;
    while (c == 0) c = rng.uniform(-p.coeff_bound, p.coeff_bound);
    return Scalar(Rational(static_cast<long>(c)));
  };
  auto shift = [&]() {
    Scalar m(Rational(static_cast<long>(rng.uniform(-2, 2))));
    if (p.field == Field::C && rng.chance(0.25)) m += Scalar(Rational(0), Rational(static_cast<long>(rng.uniform(-1, 1))));
    return MultiPoly::constant(m, sf);
  };
  switch (rng.uniform(0, 3)) {
    case 0: return coeff() * (x() - shift());
    case 1: return coeff() * ((x() - shift()) * (x() - shift()));
    case 2: return coeff() * x() + coeff() * x();
    default: return coeff() * (x() * x() - shift());
  }
}

}  // namespace

Formula random_formula(std::uint64_t seed, const RandomFormulaParams& params) {
  Rng rng(seed);
  const Rel other = params.order_literals ? Rel::gt : Rel::neq;
  std::vector<Formula> clauses;
  for (std::size_t i = 0; i < params.d; ++i) {
    const auto e = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(params.max_e)));
    auto f = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(params.max_f)));
    if (e + f == 0) f = params.max_f > 0 ? 1 : 0;
    const std::size_t eq_count = e + f == 0 ? 1 : e;
    std::vector<Formula> lits;
    for (std::size_t j = 0; j < eq_count; ++j)
      lits.push_back(Formula::make_atom(Atom{random_term(rng, params), Rel::eq}));
    for (std::size_t k = 0; k < f; ++k) {
      MultiPoly t;
      do {
        t = random_term(rng, params);
      } while (t.is_zero());
      lits.push_back(Formula::make_atom(Atom{t, other}));
    }
    clauses.push_back(params.kind == ClauseKind::dnf ? Formula::conjunction(std::move(lits))
                                                     : Formula::disjunction(std::move(lits)));
  }
  return params.kind == ClauseKind::dnf ? Formula::disjunction(std::move(clauses))
                                        : Formula::conjunction(std::move(clauses));
}

}  // namespace boolelim
