#include <gtest/gtest.h>

#include <random>

#include "boolelim/decide.hpp"
#include "boolelim/error.hpp"
#include "boolelim/fixtures.hpp"
#include "boolelim/random.hpp"
#include "boolelim/serialize.hpp"
#include "support/oracles.hpp"

namespace boolelim {
namespace {

constexpr const char* kInequationExample = "(y = 0 /\\ z != 0) \\/ (z = 0 /\\ y != 0)";
constexpr const char* kOrderExample = "(y = 0 \\/ z = 0) /\\ (y > 0 \\/ z > 0)";

MultiPoly PC(std::string_view text) { return parse_polynomial(text, ScalarField::gaussian); }
MultiPoly PQ(std::string_view text) { return parse_polynomial(text, ScalarField::rational); }
Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

Errc error_code(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::bad_input;
}

Point yz(Scalar y, Scalar z) { return Point{{Var("y"), std::move(y)}, {Var("z"), std::move(z)}}; }
Point at_y(Scalar y) { return Point{{Var("y"), std::move(y)}}; }

QuantifiedEquation from_text(const char* formula, Field field, Shape shape) {
  return eliminate(parse_formula(formula, field), field, shape);
}

// --- exists_root_C -----------------------------------------------------------

TEST(ExistsRootC, Examples) {
  const Var b("b");
  EXPECT_TRUE(exists_root_C(as_univariate(PC("b^2 + 1"), b)));
  EXPECT_TRUE(exists_root_C(as_univariate(MultiPoly(ScalarField::gaussian), b)));
  EXPECT_FALSE(exists_root_C(as_univariate(PC("3 + I"), b)));
  EXPECT_EQ(error_code([&] { return exists_root_C(as_univariate(PC("y"), b)); }), Errc::unexpected_variables);
}

TEST(Instantiate, MissingFreeVariable) {
  const auto qe = from_text(kInequationExample, Field::C, Shape::EA_C);
  EXPECT_EQ(error_code([&] { return instantiate(qe, at_y(Scalar(1))); }), Errc::unexpected_variables);
}

// --- Complex shapes ----------------------------------------------------------

TEST(DecideC, ExamplePoints) {
  const auto ea = from_text(kInequationExample, Field::C, Shape::EA_C);
  const auto ae = from_text(kInequationExample, Field::C, Shape::AE_C);
  for (const auto* qe : {&ea, &ae}) {
    EXPECT_TRUE(decide(*qe, yz(0, 1)));
    EXPECT_TRUE(decide(*qe, yz(Scalar(q(2), q(-1)), 0)));
    EXPECT_FALSE(decide(*qe, yz(0, 0)));
    EXPECT_FALSE(decide(*qe, yz(1, 1)));
  }
}

TEST(DecideC, ConstantEquations) {
  EXPECT_FALSE(decide_EA_C(parse_quantified_equation("exists a forall b: 1", Field::C), {}));
  EXPECT_TRUE(decide_EA_C(parse_quantified_equation("exists a forall b: 0", Field::C), {}));
  EXPECT_TRUE(decide_AE_C(parse_quantified_equation("forall a exists b: 0", Field::C), {}));
  EXPECT_FALSE(decide_AE_C(parse_quantified_equation("forall a exists b: 1", Field::C), {}));
}

TEST(DecideC, HandWrittenEquations) {
  // exists a forall b: (a - 1) + (a^2 - 1)*b holds with a = 1.
  EXPECT_TRUE(decide_EA_C(parse_quantified_equation("exists a forall b: a - 1 + (a^2 - 1)*b", Field::C), {}));
  EXPECT_FALSE(decide_EA_C(parse_quantified_equation("exists a forall b: a - 1 + (a - 2)*b", Field::C), {}));
  // forall a exists b: a*b - 1 fails at a = 0 only.
  EXPECT_FALSE(decide_AE_C(parse_quantified_equation("forall a exists b: a*b - 1", Field::C), {}));
  // forall a exists b: a*b - a holds everywhere (b = 1).
  EXPECT_TRUE(decide_AE_C(parse_quantified_equation("forall a exists b: a*b - a", Field::C), {}));
  // At a = 0 the b-coefficient vanishes but the constant -1 does not.
  EXPECT_FALSE(decide_AE_C(parse_quantified_equation("forall a exists b: a*(a - 1)*b + a - 1", Field::C), {}));
  EXPECT_TRUE(decide_AE_C(parse_quantified_equation("forall a exists b: a*(a - 1)*b + a*(a - 1)", Field::C), {}));
}

TEST(DecideC, WrongPrefixOrField) {
  const auto ea = from_text(kInequationExample, Field::C, Shape::EA_C);
  EXPECT_EQ(error_code([&] { return decide_AE_C(ea, yz(0, 1)); }), Errc::shape_unsupported);
  EXPECT_EQ(error_code([&] { return decide_EA_C(parse_quantified_equation("exists a forall b: a", Field::R), {}); }),
            Errc::shape_unsupported);
}

// Truth of the source formula is the oracle for both complex deciders, and
// each construction is tried on the other normal form's negation.
TEST(DecideC, AgreesWithFormulaAndDuality) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    // Small matrices keep the normal-form conversion for the other shape cheap.
    RandomFormulaParams p = random_params_for(Shape::EA_C);
    p.n_vars = 2;
    p.d = 1 + seed % 2;
    p.max_e = 1;
    p.max_f = 1;
    p.coeff_bound = 3;
    const Formula phi = random_formula(seed, p);
    const Formula neg = Formula::negation(phi);
    const auto ea = eliminate(phi, Field::C, Shape::EA_C);
    const auto ae = eliminate(phi, Field::C, Shape::AE_C);
    const auto ea_neg = eliminate(neg, Field::C, Shape::EA_C);
    Rng rng(seed);
    for (int k = 0; k < 25; ++k) {
      const Point x = random_point(rng, free_variables(phi), Field::C, 3);
      const bool truth = eval_formula(phi, x);
      EXPECT_EQ(decide_EA_C(ea, x), truth) << phi.str();
      EXPECT_EQ(decide_AE_C(ae, x), truth) << phi.str();
      EXPECT_NE(decide_EA_C(ea_neg, x), decide_AE_C(ae, x)) << phi.str();
    }
  }
}

// --- Real shapes -------------------------------------------------------------

TEST(DecideR, ExistsExample) {
  const auto qe = from_text(kInequationExample, Field::R, Shape::E_R);
  EXPECT_TRUE(decide_E_R(qe, yz(0, 1)));
  EXPECT_TRUE(decide_E_R(qe, yz(-3, 0)));
  EXPECT_FALSE(decide_E_R(qe, yz(0, 0)));
  EXPECT_FALSE(decide_E_R(qe, yz(2, 5)));
}

TEST(DecideR, ExistsOverQUsesRationalRoot) {
  const auto qe = from_text(kInequationExample, Field::Q, Shape::E_R);
  EXPECT_TRUE(decide_E_R(qe, yz(0, Scalar(q(2, 3)))));
  EXPECT_FALSE(decide_E_R(qe, yz(1, 1)));
  // Without provenance there is no guarantee the real root is rational.
  EXPECT_EQ(error_code([] { return decide_E_R(parse_quantified_equation("exists r: r^2 - 2", Field::Q), {}); }),
            Errc::shape_unsupported);
}

TEST(DecideR, SquareRootEquations) {
  EXPECT_TRUE(decide(parse_quantified_equation("exists r: r^2 - 2", Field::R), {}));
  EXPECT_FALSE(decide(parse_quantified_equation("exists r: r^2 + 1", Field::R), {}));
  EXPECT_TRUE(decide(parse_quantified_equation("exists r: 0", Field::R), {}));
  EXPECT_FALSE(decide(parse_quantified_equation("exists r: 3", Field::R), {}));
}

// A factored polynomial with known real-root count against the real decider.
TEST(DecideR, AgreesWithRootScanner) {
  std::mt19937_64 gen(59);
  for (int k = 0; k < 500; ++k) {
    const auto sample = oracle::random_factored_polynomial(gen, 8);
    MultiPoly p(ScalarField::rational);
    for (std::size_t i = 0; i < sample.coeffs.size(); ++i)
      p += MultiPoly::monomial(Scalar(Rational(sample.coeffs[i])), {{Var("r"), static_cast<unsigned>(i)}});
    QuantifiedEquation qe;
    qe.field = Field::R;
    qe.prefix = {{Quantifier::exists, Var("r")}};
    qe.equation = p;
    EXPECT_EQ(decide(qe, {}), oracle::scan_real_roots(sample.coeffs, 60) > 0) << p.str();
  }
}

// Both forms are solvable in r exactly when y > 0 and z > 0: the inner
// square must equal z (resp. y^2*z), and the solved value of r^2 is positive
// only when y*z > 0.
bool pecker_truth(const Rational& y, const Rational& z) { return y.sign() > 0 && z.sign() > 0; }

TEST(Pecker, ExamplePoints) {
  EXPECT_TRUE(decide_E_R(pecker_simplified(), yz(1, 1)));
  EXPECT_FALSE(decide_E_R(pecker_simplified(), yz(1, -1)));
}

TEST(Pecker, BothFormsMatchClosedForm) {
  for (long yn = -6; yn <= 6; ++yn)
    for (long zn = -6; zn <= 6; ++zn) {
      const Rational y = q(yn, 2), z = q(zn, 3);
      const Point x = yz(Scalar(y), Scalar(z));
      EXPECT_EQ(decide_E_R(pecker_simplified(), x), pecker_truth(y, z)) << y << ", " << z;
      EXPECT_EQ(decide_E_R(pecker_unsimplified(), x), pecker_truth(y, z)) << y << ", " << z;
    }
}

TEST(Pecker, GridSweepMatchesClosedForm) {
  const auto samples = sweep_grid(pecker_simplified(), Var("y"), Var("z"), q(-2), q(2), q(1, 2));
  EXPECT_EQ(samples.size(), 81U);
  for (const auto& s : samples) EXPECT_EQ(s.has_real_root, pecker_truth(s.y, s.z));
}

TEST(DecideEdR, OrderExample) {
  const auto qe = from_text(kOrderExample, Field::R, Shape::Ed_R);
  EXPECT_TRUE(decide_Ed_R(qe, yz(0, 1)));
  EXPECT_TRUE(decide_Ed_R(qe, yz(Scalar(q(1, 3)), 0)));
  EXPECT_FALSE(decide_Ed_R(qe, yz(-1, -2)));
  EXPECT_FALSE(decide_Ed_R(qe, yz(0, 0)));
  EXPECT_FALSE(decide_Ed_R(qe, yz(1, 1)));
}

TEST(DecideEdR, RejectsEquationsWithoutMatchingSource) {
  auto qe = from_text(kOrderExample, Field::R, Shape::Ed_R);
  qe.equation += PQ("1");
  EXPECT_EQ(error_code([&] { return decide_Ed_R(qe, yz(0, 1)); }), Errc::shape_unsupported);
  qe.provenance.reset();
  EXPECT_EQ(error_code([&] { return decide_Ed_R(qe, yz(0, 1)); }), Errc::shape_unsupported);
}

// The differently-labelled display [yz]^2 + [(1 - s^2 y)(1 - r^2 z)]^2 with
// both r and s existential defines the same set as the order example: the
// first square forces yz = 0, and when y <= 0 and z <= 0 each factor of the
// second bracket is at least 1.
TEST(DecideEdR, DisplayedTwoVariableFormIsEquivalent) {
  QuantifiedEquation display;
  display.field = Field::R;
  display.prefix = {{Quantifier::exists, Var("r")}, {Quantifier::exists, Var("s")}};
  display.equation = PQ("(y*z)^2 + ((1 - s^2*y)*(1 - r^2*z))^2");
  const Formula phi = parse_formula(kOrderExample, Field::R);
  Rng rng(61);
  for (long yn = -3; yn <= 3; ++yn)
    for (long zn = -3; zn <= 3; ++zn) {
      const Rational y = q(yn, 2), z = q(zn, 1);
      const Point x = yz(Scalar(y), Scalar(z));
      const bool truth = eval_formula(phi, x);
      if (truth) {
        Assignment w{{Var("r"), Scalar(0)}, {Var("s"), Scalar(0)}};
        if (y.sign() > 0) w[Var("s")] = WitnessValue::sqrt(Rational(1) / y);
        if (z.sign() > 0) w[Var("r")] = WitnessValue::sqrt(Rational(1) / z);
        EXPECT_TRUE(check_witness(display, x, w)) << y << ", " << z;
      } else if (!(y * z).is_zero()) {
        EXPECT_FALSE(instantiate(display, x).evaluate(Point{{Var("r"), Scalar(0)}, {Var("s"), Scalar(0)}}).is_zero());
      } else {
        for (int k = 0; k < 20; ++k) {
          const Point rs{{Var("r"), Scalar(rng.rational(20, 7))}, {Var("s"), Scalar(rng.rational(20, 7))}};
          EXPECT_GE(instantiate(display, x).evaluate(rs).re(), Rational(1));
        }
      }
    }
}

TEST(DecideAER, OrderExample) {
  const auto qe = from_text(kOrderExample, Field::R, Shape::AE_R);
  EXPECT_TRUE(decide_AE_R_structured(qe, yz(0, 1)));
  EXPECT_FALSE(decide_AE_R_structured(qe, yz(1, -1)));
  EXPECT_FALSE(decide_AE_R_structured(qe, yz(0, 0)));
}

TEST(DecideReal, AgreesWithFormulaOnRandomInputs) {
  for (Shape shape : {Shape::E_R, Shape::Ed_R, Shape::AE_R}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      RandomFormulaParams p = random_params_for(shape);
      p.n_vars = 2;
      p.d = 1 + seed % 3;
      p.coeff_bound = 3;
      const Formula phi = random_formula(seed, p);
      const auto qe = eliminate(phi, p.field, shape);
      Rng rng(seed + 1000);
      for (int k = 0; k < 8; ++k) {
        const Point x = random_point(rng, free_variables(phi), p.field, 3);
        EXPECT_EQ(decide(qe, x), eval_formula(phi, x)) << to_string(shape) << ": " << phi.str();
      }
    }
  }
}

// Away from the nodes 1..d the first bracket can be zeroed by
// s = 1/prod(r - i), so only the integer nodes carry information.
TEST(DecideAER, NonIntegerUniversalValuesAreAlwaysSolvable) {
  const auto qe = from_text(kOrderExample, Field::R, Shape::AE_R);
  Rng rng(67);
  for (int k = 0; k < 50; ++k) {
    const Rational r = rng.nonzero_rational(20, 7);
    if (r == q(1) || r == q(2)) continue;
    const Rational s = Rational(1) / ((r - q(1)) * (r - q(2)));
    const Point x{{Var("y"), Scalar(1)}, {Var("z"), Scalar(-1)}, {Var("r"), Scalar(r)}, {Var("s"), Scalar(s)}};
    EXPECT_TRUE(qe.equation.evaluate(x).is_zero());
  }
}

// --- Rational three-square shapes -------------------------------------------

TEST(DecideQ, PositivityClause) {
  const Formula phi = parse_formula("y > 0", Field::Q);
  const auto e3d = eliminate(phi, Field::Q, Shape::E3d_Q);
  const auto ae3 = eliminate(phi, Field::Q, Shape::AE3_Q);
  for (const auto* qe : {&e3d, &ae3}) {
    EXPECT_TRUE(decide(*qe, at_y(Scalar(q(1, 2)))));
    EXPECT_TRUE(decide(*qe, at_y(Scalar(q(1, 7)))));
    EXPECT_FALSE(decide(*qe, at_y(Scalar(-1))));
    EXPECT_FALSE(decide(*qe, at_y(Scalar(0))));
  }
}

TEST(DecideQ, EmptyConjunctionIsTrue) {
  ClauseMatrix m;
  m.kind = ClauseKind::cnf;
  m.field = Field::Q;
  EXPECT_TRUE(decide(build_E3d_Q(m), {}));
  EXPECT_TRUE(decide(build_AE3_Q(m), {}));
}

TEST(DecideQ, AgreesWithFormulaOnRandomInputs) {
  for (Shape shape : {Shape::E3d_Q, Shape::AE3_Q}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      RandomFormulaParams p = random_params_for(shape);
      p.n_vars = 2;
      p.d = 1 + seed % 3;
      p.coeff_bound = 3;
      const Formula phi = random_formula(seed, p);
      const auto qe = eliminate(phi, Field::Q, shape);
      Rng rng(seed + 2000);
      for (int k = 0; k < 8; ++k) {
        const Point x = random_point(rng, free_variables(phi), Field::Q, 3);
        EXPECT_EQ(decide(qe, x), eval_formula(phi, x)) << to_string(shape) << ": " << phi.str();
      }
    }
  }
}

// Off the nodes w1 = 1/prod(v - i) kills the selector bracket; the three-square
// part of w is then unconstrained.
TEST(DecideAE3Q, NonIntegerUniversalValuesAreAlwaysSolvable) {
  const auto qe = from_text(kInequationExample, Field::Q, Shape::AE3_Q);
  ASSERT_EQ(qe.provenance->d(), 2U);
  Rng rng(71);
  for (int k = 0; k < 50; ++k) {
    const Rational v = rng.nonzero_rational(20, 7);
    if (v == q(1) || v == q(2)) continue;
    const Point x{{Var("y"), Scalar(1)},
                  {Var("z"), Scalar(1)},
                  {Var("v"), Scalar(v)},
                  {Var("w1"), Scalar(Rational(1) / ((v - q(1)) * (v - q(2))))},
                  {Var("w2"), Scalar(rng.rational(5, 5))},
                  {Var("w3"), Scalar(rng.rational(5, 5))}};
    EXPECT_TRUE(qe.equation.evaluate(x).is_zero());
  }
}

// --- Refuter -----------------------------------------------------------------

TEST(RefuteAE, ComplexExample) {
  const auto qe = from_text(kInequationExample, Field::C, Shape::AE_C);
  // At y = z = 0 the equation is (1 - b*(a-1)*(a-2))*(a - 1), so a = 1 is
  // solvable and a = 2 is the first failing node.
  const Verdict v = refute_AE(qe, yz(0, 0), SamplePlan{});
  ASSERT_EQ(v.kind(), Verdict::Kind::refuted);
  EXPECT_EQ(v.sample(), Scalar(2));
}

TEST(RefuteAE, TrueInstanceStaysUnresolved) {
  const auto qe = from_text(kOrderExample, Field::R, Shape::AE_R);
  SamplePlan plan;
  plan.count = 50;
  EXPECT_EQ(refute_AE(qe, yz(0, 1), plan), Verdict::unresolved(50));
  plan.count = 1;
  EXPECT_EQ(refute_AE(qe, yz(0, 1), plan), Verdict::unresolved(1));
  plan.count = 0;
  EXPECT_EQ(error_code([&] { return refute_AE(qe, yz(0, 1), plan); }), Errc::bad_input);
}

TEST(RefuteAE, RealExampleRefuted) {
  const auto qe = from_text(kOrderExample, Field::R, Shape::AE_R);
  const Verdict v = refute_AE(qe, yz(1, -1), SamplePlan{});
  ASSERT_EQ(v.kind(), Verdict::Kind::refuted);
  EXPECT_EQ(v.sample(), Scalar(1));
}

TEST(RefuteAE, UnsupportedOverQ) {
  const auto qe = from_text(kInequationExample, Field::Q, Shape::AE3_Q);
  EXPECT_EQ(error_code([&] { return refute_AE(qe, yz(0, 1), SamplePlan{}); }), Errc::shape_unsupported);
}

// Refutations are sound, and a false instance is refuted at an integer node.
TEST(RefuteAE, SoundAndCompleteAtNodes) {
  for (Shape shape : {Shape::AE_C, Shape::AE_R}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      RandomFormulaParams p = random_params_for(shape);
      p.n_vars = 2;
      p.d = 1 + seed % 3;
      p.coeff_bound = 3;
      const Formula phi = random_formula(seed, p);
      const auto qe = eliminate(phi, p.field, shape);
      Rng rng(seed + 3000);
      for (int k = 0; k < 5; ++k) {
        const Point x = random_point(rng, free_variables(phi), p.field, 3);
        SamplePlan plan;
        plan.seed = seed;
        plan.count = 8;
        const Verdict v = refute_AE(qe, x, plan);
        if (v.kind() == Verdict::Kind::refuted) {
          EXPECT_FALSE(eval_formula(phi, x));
          const MultiPoly at_sample = substitute(instantiate(qe, x), Point{{qe.prefix[0].var, v.sample()}});
          if (p.field == Field::C) {
            EXPECT_FALSE(exists_root_C(as_univariate(at_sample, qe.prefix[1].var)));
          }
        } else {
          EXPECT_EQ(v, Verdict::unresolved(8));
        }
        if (!eval_formula(phi, x) && qe.provenance->d() <= plan.count) {
          ASSERT_EQ(v.kind(), Verdict::Kind::refuted) << phi.str();
          EXPECT_TRUE(v.sample().im().is_zero() && v.sample().re().is_integer());
        }
      }
    }
  }
}

TEST(Verdict, Rendering) {
  EXPECT_EQ(Verdict::truth().str(), "TRUE");
  EXPECT_EQ(Verdict::falsity().str(), "FALSE");
  EXPECT_EQ(Verdict::refuted(Scalar(2)).str(), "REFUTED(2)");
  EXPECT_EQ(Verdict::unresolved(50).str(), "UNRESOLVED(50)");
}

// --- Witness checking --------------------------------------------------------

TEST(CheckWitness, ExistsForallExample) {
  const auto qe = from_text(kInequationExample, Field::C, Shape::EA_C);
  EXPECT_TRUE(check_witness(qe, yz(0, 1), {{Var("a"), Scalar(1)}}));
  EXPECT_FALSE(check_witness(qe, yz(0, 1), {{Var("a"), Scalar(2)}}));
  EXPECT_EQ(error_code([&] { return check_witness(qe, yz(0, 1), {}); }), Errc::missing_assignment);
}

TEST(CheckWitness, ZeroEquationAcceptsAnything) {
  ClauseMatrix m;
  m.kind = ClauseKind::cnf;
  m.field = Field::C;
  const auto qe = build_AE_C(m);
  EXPECT_TRUE(check_witness(qe, {}, {{Var("b"), Scalar(5)}}));
}

TEST(CheckWitness, SquareRoots) {
  const auto qe = from_text("y > 0", Field::R, Shape::Ed_R);
  EXPECT_TRUE(check_witness(qe, at_y(Scalar(2)), {{Var("r1"), WitnessValue::sqrt(q(1, 2))}}));
  EXPECT_FALSE(check_witness(qe, at_y(Scalar(2)), {{Var("r1"), WitnessValue::sqrt(q(1, 3))}}));
  EXPECT_FALSE(check_witness(qe, at_y(Scalar(2)), {{Var("r1"), Scalar(1)}}));
}

// Every extracted witness is accepted, for every shape and every true instance.
TEST(CheckWitness, ExtractedWitnessesVerify) {
  for (Shape shape : {Shape::EA_C, Shape::AE_C, Shape::E_R, Shape::Ed_R, Shape::AE_R, Shape::E3d_Q, Shape::AE3_Q}) {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      RandomFormulaParams p = random_params_for(shape);
      p.n_vars = 2;
      p.d = 1 + seed % 3;
      p.coeff_bound = 3;
      const Formula phi = random_formula(seed, p);
      const auto qe = eliminate(phi, p.field, shape);
      const WitnessRecipe recipe = witness_recipe(qe);
      Rng rng(seed + 4000);
      for (int k = 0; k < 6; ++k) {
        const Point x = random_point(rng, free_variables(phi), p.field, 3);
        if (!eval_formula(phi, x)) continue;
        Point universal;
        for (const auto& v : qe.forall_vars()) universal[v] = Scalar(1 + static_cast<long>(k % 4));
        const Assignment w = extract_witness(recipe, *qe.provenance, x, universal);
        Point full = x;
        for (const auto& [v, value] : universal) full[v] = value;
        EXPECT_TRUE(check_witness(qe, full, w)) << to_string(shape) << ": " << phi.str();
        ++checked;
      }
    }
    EXPECT_GT(checked, 20U) << to_string(shape);
  }
}

// --- Equivalence runs --------------------------------------------------------

TEST(Equivalence, ConstructionsAgreeWithFormulas) {
  for (Shape shape : {Shape::EA_C, Shape::AE_C}) {
    const Formula phi = parse_formula(kInequationExample, Field::C);
    const auto qe = eliminate(phi, Field::C, shape);
    SamplePlan plan;
    plan.seed = 7;
    plan.count = 100;
    plan.num_bound = 2;
    const EquivalenceReport r = equivalence_run(phi, qe, decider_for(shape), plan);
    EXPECT_EQ(r.points, 100U);
    EXPECT_EQ(r.agreements, 100U);
    EXPECT_TRUE(r.disagreements.empty());
  }
}

TEST(Equivalence, MismatchedPairDisagrees) {
  const Formula phi = parse_formula(kInequationExample, Field::C);
  const auto other = from_text("y = 0 /\\ z = 0", Field::C, Shape::EA_C);
  SamplePlan plan;
  plan.count = 100;
  plan.num_bound = 1;
  const EquivalenceReport r = equivalence_run(phi, other, Decider::ea_c, plan);
  EXPECT_EQ(r.points, 100U);
  ASSERT_FALSE(r.disagreements.empty());
  EXPECT_EQ(r.agreements + r.disagreements.size(), 100U);
  const Disagreement& d = r.disagreements.front();
  EXPECT_EQ(d.expected, eval_formula(phi, d.point));
  EXPECT_NE(d.expected, d.got);
}

TEST(Equivalence, DeterministicInSeed) {
  const Formula phi = parse_formula(kOrderExample, Field::R);
  const auto qe = eliminate(phi, Field::R, Shape::Ed_R);
  SamplePlan plan;
  plan.seed = 99;
  plan.count = 30;
  const auto a = equivalence_run(phi, qe, Decider::ed_r, plan);
  const auto b = equivalence_run(phi, qe, Decider::ed_r, plan);
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(DeciderFor, PrefixFallback) {
  EXPECT_EQ(decider_for(parse_quantified_equation("exists a forall b: a", Field::C)), Decider::ea_c);
  EXPECT_EQ(decider_for(parse_quantified_equation("forall a exists b: a", Field::C)), Decider::ae_c);
  EXPECT_EQ(decider_for(parse_quantified_equation("exists r: r", Field::R)), Decider::e_r);
  EXPECT_EQ(error_code([] { return decider_for(parse_quantified_equation("exists r, s: r", Field::R)); }),
            Errc::shape_unsupported);
}

}  // namespace
}  // namespace boolelim
