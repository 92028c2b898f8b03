#include "selftest.hpp"

#include <cmath>
#include <sstream>

#include "boolelim/decide.hpp"
#include "boolelim/error.hpp"
#include "boolelim/random.hpp"

namespace boolelim::cli {

namespace {

constexpr Shape kShapes[] = {Shape::EA_C, Shape::AE_C, Shape::E_R,  Shape::Ed_R,
                             Shape::AE_R, Shape::E3d_Q, Shape::AE3_Q};

RandomFormulaParams small_params(Shape shape) {
  RandomFormulaParams p = random_params_for(shape);
  p.n_vars = 2;
  p.d = 3;
  p.max_e = 2;
  p.max_f = 2;
  return p;
}

FixtureResult fixture_check(const FixtureCase& f) {
  FixtureResult r = run_fixture(f);
  r.name = "fixture:" + f.name;
  if (r.passed && parse_polynomial(f.factored, scalar_field(f.field)).str() != f.expected) {
    r.passed = false;
    r.detail = "factored display does not expand to the stored rendering";
  }
  return r;
}

FixtureResult pecker_check() {
  FixtureResult r{"pecker-grid", true, ""};
  const auto simple = sweep_grid(pecker_simplified(), Var("y"), Var("z"), Rational(-2), Rational(2),
                                 Rational(Integer(1), Integer(4)));
  const auto raw = sweep_grid(pecker_unsimplified(), Var("y"), Var("z"), Rational(-2), Rational(2),
                              Rational(Integer(1), Integer(4)));
  for (std::size_t i = 0; i < simple.size(); ++i) {
    const bool quadrant = simple[i].y.sign() > 0 && simple[i].z.sign() > 0;
    if (simple[i].has_real_root != quadrant || raw[i].has_real_root != simple[i].has_real_root) {
      r.passed = false;
      r.detail = "mismatch at y = " + simple[i].y.str() + ", z = " + simple[i].z.str();
      break;
    }
  }
  return r;
}

FixtureResult equivalence_check(Shape shape, std::uint64_t seed) {
  FixtureResult r{"equivalence:" + std::string(to_string(shape)), true, ""};
  const RandomFormulaParams p = small_params(shape);
  for (std::uint64_t k = 0; k < 10 && r.passed; ++k) {
    const Formula phi = random_formula(seed * 1000 + k, p);
    const QuantifiedEquation qe = eliminate(phi, p.field, shape);
    SamplePlan plan;
    plan.seed = seed + k;
    plan.count = 10;
    const auto report = equivalence_run(phi, qe, decider_for(shape), plan);
    if (!report.disagreements.empty()) {
      r.passed = false;
      r.detail = "disagreement on " + phi.str();
    }
  }
  return r;
}

FixtureResult witness_check(Shape shape, std::uint64_t seed) {
  FixtureResult r{"witness:" + std::string(to_string(shape)), true, ""};
  const RandomFormulaParams p = small_params(shape);
  Rng rng(seed);
  for (std::uint64_t k = 0; k < 10 && r.passed; ++k) {
    const Formula phi = random_formula(seed * 1000 + k, p);
    const QuantifiedEquation qe = eliminate(phi, p.field, shape);
    const ClauseMatrix& m = *qe.provenance;
    const auto vars = free_variables(m);
    const WitnessRecipe recipe = witness_recipe(qe);
    for (int attempt = 0; attempt < 20; ++attempt) {
      const Point x = random_point(rng, vars, p.field, 8);
      if (!eval_matrix(m, x)) continue;
      const auto universals = qe.forall_vars();
      Point universal;
      if (!universals.empty() && shape != Shape::EA_C)
        universal[universals.front()] = rng.chance(0.5) ? Scalar(rng.uniform(1, static_cast<std::int64_t>(m.d()) + 1))
                                                         : Scalar(rng.rational(8, 8));
      Assignment a = extract_witness(recipe, m, x, universal);
      for (const auto& [v, value] : universal) a[v] = value;
      if (!check_witness(qe, x, a)) {
        r.passed = false;
        r.detail = "witness fails for " + phi.str();
      }
      break;
    }
  }
  return r;
}

FixtureResult degree_check(Shape shape, std::uint64_t seed) {
  FixtureResult r{"degrees:" + std::string(to_string(shape)), true, ""};
  RandomFormulaParams p = small_params(shape);
  for (std::uint64_t k = 0; k < 20 && r.passed; ++k) {
    p.d = 1 + k % 4;
    const Formula phi = random_formula(seed * 7919 + k, p);
    if (!degree_report(eliminate(phi, p.field, shape)).satisfied) {
      r.passed = false;
      r.detail = "bound violated on " + phi.str();
    }
  }
  return r;
}

FixtureResult three_squares_check() {
  FixtureResult r{"three-squares", true, ""};
  for (long n = 0; n <= 300 && r.passed; ++n) {
    bool found = false;
    for (long a = 0; a * a <= n && !found; ++a)
      for (long b = 0; a * a + b * b <= n && !found; ++b) {
        const long rest = n - a * a - b * b;
        const long c = std::lround(std::sqrt(static_cast<double>(rest)));
        found = c * c == rest;
      }
    if (found != is_sum_three_squares(Integer(n))) {
      r.passed = false;
      r.detail = "criterion wrong at n = " + std::to_string(n);
    }
  }
  return r;
}

template <class F>
FixtureResult guarded(const std::string& name, F&& check) {
  try {
    return check();
  } catch (const Error& e) {
    return {name, false, e.what()};
  }
}

}  // namespace

std::vector<FixtureResult> run_selftest(std::uint64_t seed) {
  std::vector<FixtureResult> out;
  for (const auto& f : fixture_cases()) out.push_back(guarded("fixture:" + f.name, [&] { return fixture_check(f); }));
  out.push_back(guarded("pecker-grid", pecker_check));
  for (Shape s : kShapes) {
    const std::string name(to_string(s));
    out.push_back(guarded("equivalence:" + name, [&] { return equivalence_check(s, seed); }));
    out.push_back(guarded("witness:" + name, [&] { return witness_check(s, seed); }));
    out.push_back(guarded("degrees:" + name, [&] { return degree_check(s, seed); }));
  }
  out.push_back(guarded("three-squares", three_squares_check));
  return out;
}

}  // namespace boolelim::cli
