// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boolelim/decide.hpp"
#include "boolelim/fixtures.hpp"
#include "boolelim/random.hpp"
#include "boolelim/univariate.hpp"
#include "support/oracles.hpp"

namespace {

using namespace boolelim;

constexpr const char* kInequationExample = "(y = 0 /\\ z != 0) \\/ (z = 0 /\\ y != 0)";
constexpr const char* kOrderExample = "(y = 0 \\/ z = 0) /\\ (y > 0 \\/ z > 0)";

constexpr Shape kAllShapes[] = {Shape::EA_C, Shape::AE_C, Shape::E_R, Shape::Ed_R,
                                Shape::AE_R, Shape::E3d_Q, Shape::AE3_Q};

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Random-formula parameters at the sizes the criteria pin: d <= 6 clauses,
// at most 4 equations and 4 other literals per clause, coefficients <= 32.
RandomFormulaParams params(Shape shape, std::uint64_t seed) {
  RandomFormulaParams p = random_params_for(shape);
  p.d = 1 + seed % 6;
  p.max_e = 4;
  p.max_f = 4;
  p.coeff_bound = 32;
  p.n_vars = 2;
  return p;
}

std::size_t max_inequalities(const ClauseMatrix& m) {
  std::size_t f = 0;
  for (const auto& c : m.clauses) {
    std::size_t k = 0;
    for (const auto& a : c) k += a.rel != Rel::eq;
    f = std::max(f, k);
  }
  return f;
}

std::string str(Shape s) { return std::string(to_string(s)); }

// --- 1. Golden reproduction ---------------------------------------------------

Outcome golden_reproduction() {
  Outcome o;
  const auto start = Clock::now();
  struct Case {
    const char* formula;
    Field field;
    Shape shape;
    const char* display;  // the bracketed form as printed, expanded by the reader
  };
  const Case cases[] = {
      {kInequationExample, Field::C, Shape::EA_C, "((1-a*z)+b*y)*((1-a*y)+b*z)"},
      {kInequationExample, Field::C, Shape::AE_C, "(1-b*(a-1)*(a-2))*((a-2)*y*z+(a-1)*(1-b*y)*(1-b*z))"},
      {kInequationExample, Field::R, Shape::E_R, "(y^2+(1-r*z)^2)*(z^2+(1-r*y)^2)"},
      {kOrderExample, Field::R, Shape::AE_R, "(1-s*(r-1)*(r-2))*((r-2)*y*z+(r-1)*(1-s^2*y)*(1-s^2*z))"},
  };
  for (const auto& c : cases) {
    const auto qe = eliminate(parse_formula(c.formula, c.field), c.field, c.shape);
    const std::string want = parse_polynomial(c.display, scalar_field(c.field)).str();
    if (qe.equation.str() != want) o.fail(str(c.shape) + ": got " + qe.equation.str() + ", want " + want);
  }
  const double t = seconds_since(start);
  if (t >= 1.0) o.fail("runtime " + std::to_string(t) + " s >= 1 s");
  if (o.passed) o.detail = "4/4 byte-exact, " + std::to_string(t) + " s";
  return o;
}

// --- 2. Degree bounds ---------------------------------------------------------

Outcome degree_bounds() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t checked = 0;
  for (Shape shape : kAllShapes) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const RandomFormulaParams p = params(shape, seed);
      const auto qe = eliminate(random_formula(seed, p), p.field, shape);
      const DegreeReport r = degree_report(qe);
      const std::string where = str(shape) + " seed " + std::to_string(seed) + ": ";
      if (!r.satisfied) o.fail(where + "degree report not satisfied");
      const long d = static_cast<long>(qe.provenance->d());
      const long f = static_cast<long>(max_inequalities(*qe.provenance));
      auto deg = [&](const char* v) { return degree_in(qe.equation, Var(v)); };
      auto expect_exact = [&](const char* v, long want) {
        if (qe.equation.is_zero()) return;  // empty CNF: the equation 0 has no degree
        if (deg(v) != Degree(static_cast<unsigned>(want)))
          o.fail(where + "deg_" + v + " != " + std::to_string(want));
      };
      switch (shape) {
        case Shape::EA_C: expect_exact("a", d); break;
        case Shape::AE_C: expect_exact("a", 2 * d - 1); break;
        case Shape::E_R: expect_exact("r", 2 * d); break;
        case Shape::AE_R:
          if (deg("s") && static_cast<long>(*deg("s")) > 2 * f + 1)
            o.fail(where + "deg_s > 2f+1 = " + std::to_string(2 * f + 1));
          break;
        default: break;
      }
      ++checked;
    }
  }
  const double t = seconds_since(start);
  if (t >= 60.0) o.fail("runtime " + std::to_string(t) + " s >= 60 s");
  if (o.passed) o.detail = std::to_string(checked) + " formulas, " + std::to_string(t) + " s";
  return o;
}

// --- 3. Semantic equivalence --------------------------------------------------

Outcome semantic_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  std::ostringstream summary;
  for (Shape shape : kAllShapes) {
    std::size_t points = 0, agreements = 0, true_points = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const RandomFormulaParams p = params(shape, seed);
      const Formula phi = random_formula(seed, p);
      const auto qe = eliminate(phi, p.field, shape);
      // Small coordinates hit the zero sets of the equations; large ones do not.
      for (const auto& [count, bound] : {std::pair<std::size_t, std::int64_t>{13, 2}, {12, 32}}) {
        SamplePlan plan;
        plan.seed = seed * 7919 + static_cast<std::uint64_t>(bound);
        plan.count = count;
        plan.num_bound = bound;
        const EquivalenceReport r = equivalence_run(phi, qe, decider_for(shape), plan);
        points += r.points;
        agreements += r.agreements;
        if (!r.disagreements.empty())
          o.fail(str(shape) + " seed " + std::to_string(seed) + ": " + r.disagreements.front().formula);
        Rng rng(plan.seed);
        std::vector<Var> vars = free_variables(phi);
        for (const auto& v : variables_outside(qe.equation, qe.quantified_vars())) vars.push_back(v);
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        for (std::size_t k = 0; k < count; ++k)
          true_points += eval_formula(phi, random_point(rng, vars, qe.field, bound));
      }
    }
    summary << " " << str(shape) << " " << agreements << "/" << points << " (" << true_points << " true)";
  }
  const double t = seconds_since(start);
  if (t >= 300.0) o.fail("runtime " + std::to_string(t) + " s >= 300 s");
  if (o.passed) o.detail = summary.str().substr(1) + ", " + std::to_string(t) + " s";
  return o;
}

// --- 4. Witness soundness -----------------------------------------------------

Outcome witness_soundness() {
  Outcome o;
  std::ostringstream summary;
  for (Shape shape : kAllShapes) {
    std::size_t found = 0;
    for (std::uint64_t seed = 0; found < 200 && seed < 20000; ++seed) {
      const RandomFormulaParams p = params(shape, seed);
      const Formula phi = random_formula(seed, p);
      const auto qe = eliminate(phi, p.field, shape);
      Rng rng(seed + 17);
      const Point x = random_point(rng, free_variables(phi), p.field, 2);
      if (!eval_formula(phi, x)) continue;
      ++found;
      const std::string where = str(shape) + " seed " + std::to_string(seed) + ": ";
      // Universal values alternate between the integer nodes and arbitrary rationals.
      Point universal;
      for (const auto& v : qe.forall_vars()) {
        const std::int64_t node = static_cast<std::int64_t>(1 + found % std::max<std::size_t>(1, qe.provenance->d()));
        universal[v] = found % 2 == 0 ? Scalar(Rational(node)) : Scalar(rng.rational(32, 32));
      }
      const Assignment w = extract_witness(witness_recipe(qe), *qe.provenance, x, universal);
      Point full = x;
      for (const auto& [v, value] : universal) full[v] = value;
      if (!check_witness(qe, full, w)) o.fail(where + "witness rejected");
      if (shape == Shape::EA_C) {
        Point with_a = x;
        with_a[Var("a")] = w.at(Var("a")).value();
        if (!substitute(qe.equation, with_a).is_zero()) o.fail(where + "a-slice is not the zero polynomial");
      }
    }
    if (found < 200) o.fail(str(shape) + ": only " + std::to_string(found) + " true pairs generated");
    summary << " " << str(shape) << " " << found;
  }
  if (o.passed) o.detail = "true pairs checked:" + summary.str();
  return o;
}

// --- 5. Pecker fixture --------------------------------------------------------

Outcome pecker() {
  Outcome o;
  const auto simplified = sweep_grid(pecker_simplified(), Var("y"), Var("z"), Rational(-2), Rational(2),
                                     Rational(Integer(1), Integer(4)));
  const auto raw = sweep_grid(pecker_unsimplified(), Var("y"), Var("z"), Rational(-2), Rational(2),
                              Rational(Integer(1), Integer(4)));
  if (simplified.size() != 289 || raw.size() != 289) o.fail("grid is not 17 x 17");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < simplified.size() && i < raw.size(); ++i) {
    const auto& s = simplified[i];
    const bool quadrant = s.y.sign() > 0 && s.z.sign() > 0;
    hits += s.has_real_root;
    if (s.has_real_root != quadrant) o.fail("simplified form wrong at (" + s.y.str() + ", " + s.z.str() + ")");
    if (raw[i].has_real_root != s.has_real_root)
      o.fail("forms disagree at (" + s.y.str() + ", " + s.z.str() + ")");
  }
  if (o.passed) o.detail = std::to_string(hits) + "/289 grid points with a real root, all with y>0, z>0";
  return o;
}

// --- 6. Number theory ---------------------------------------------------------

Outcome number_theory() {
  Outcome o;
  const auto start = Clock::now();
  const auto table = oracle::three_square_table(5000);
  for (long n = 0; n <= 5000; ++n)
    if (is_sum_three_squares(Integer(n)) != table[static_cast<std::size_t>(n)])
      o.fail("three-squares criterion wrong at n = " + std::to_string(n));
  for (long n = 1; n <= 10000; ++n) {
    const ThreeSquares t = three_squares_pair(Integer(n));
    const Integer sum = t.parts[0] * t.parts[0] + t.parts[1] * t.parts[1] + t.parts[2] * t.parts[2];
    if (sum != Integer(t.selector) * Integer(n)) o.fail("pair identity fails at n = " + std::to_string(n));
    if (t.selector == 2 && is_sum_three_squares(Integer(n)))
      o.fail("selector 2 although n is a sum of three squares at n = " + std::to_string(n));
  }
  std::mt19937_64 gen(10);
  std::uniform_int_distribution<long> num(1, 10000), den(1, 10000);
  for (int k = 0; k < 1000; ++k) {
    const Rational u(Integer(num(gen)), Integer(den(gen)));
    const PositivityWitness w = positivity_witness_q(u);
    if (Rational(w.selector) * u * w.sum_of_squares() != Rational(1)) o.fail("s*u*V != 1 at u = " + u.str());
  }
  const double t = seconds_since(start);
  if (t >= 30.0) o.fail("runtime " + std::to_string(t) + " s >= 30 s");
  if (o.passed) o.detail = "n <= 5000, n <= 10000, 1000 rationals, " + std::to_string(t) + " s";
  return o;
}

// --- 7. Oracle cross-validation -----------------------------------------------

Outcome cross_validation() {
  Outcome o;
  std::mt19937_64 gen(7);
  for (int k = 0; k < 500; ++k) {
    const auto sample = oracle::random_factored_polynomial(gen, 8);
    std::vector<Scalar> coeffs;
    for (const auto& c : sample.coeffs) coeffs.emplace_back(Rational(c));
    const RealRootCount got = count_real_roots(UniPoly(coeffs));
    const unsigned scanned = oracle::scan_real_roots(sample.coeffs, 60);
    if (got.is_infinite() || got.value() != scanned)
      o.fail("root count disagrees on " + UniPoly(coeffs).str());
  }
  std::size_t refuted = 0, true_instances = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RandomFormulaParams p = params(Shape::AE_C, seed);
    const Formula phi = random_formula(seed, p);
    const auto qe = eliminate(phi, Field::C, Shape::AE_C);
    Rng rng(seed + 99);
    const Point x = random_point(rng, free_variables(phi), Field::C, 2);
    const bool truth = decide_AE_C(qe, x);
    SamplePlan plan;
    plan.seed = seed;
    plan.count = 16;
    const Verdict v = refute_AE(qe, x, plan);
    true_instances += truth;
    refuted += v.kind() == Verdict::Kind::refuted;
    if (truth && v.kind() == Verdict::Kind::refuted) o.fail("refuted a true instance, seed " + std::to_string(seed));
  }
  if (o.passed)
    o.detail = "500 polynomials; 200 AE_C instances (" + std::to_string(true_instances) + " true, " +
               std::to_string(refuted) + " refuted)";
  return o;
}

// --- 8. Non-reproducible content ----------------------------------------------

Outcome documented_only(const Outcome& equivalence) {
  Outcome o;
  if (!equivalence.passed) o.fail("depends on the semantic-equivalence suite, which failed");
  if (o.passed) o.detail = "optimality results are proofs without algorithms; exercised via criterion 3";
  return o;
}

}  // namespace

int main() {
  struct Line {
    int number;
    const char* title;
    Outcome outcome;
  };
  std::vector<Line> lines;
  auto run = [&](int number, const char* title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s -- %s\n", o.passed ? "PASS" : "FAIL", number, title, o.detail.c_str());
    std::fflush(stdout);
    lines.push_back({number, title, o});
  };
  run(1, "golden reproduction of the displayed polynomials", golden_reproduction);
  run(2, "degree bounds", degree_bounds);
  run(3, "semantic equivalence of all constructions", semantic_equivalence);
  run(4, "witness soundness", witness_soundness);
  run(5, "Pecker fixture", pecker);
  run(6, "number theory", number_theory);
  run(7, "oracle cross-validation", cross_validation);
  run(8, "non-reproducible content", [&] { return documented_only(lines[2].outcome); });
  bool all = true;
  for (const auto& l : lines) all = all && l.outcome.passed;
  return all ? 0 : 1;
}
