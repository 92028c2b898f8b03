#include "boolelim/fixtures.hpp"

#include "boolelim/decide.hpp"
#include "boolelim/error.hpp"
#include "boolelim/serialize.hpp"

namespace boolelim {

namespace {

constexpr const char* kInequationExample = "(y = 0 /\\ z != 0) \\/ (z = 0 /\\ y != 0)";
constexpr const char* kOrderExample = "(y = 0 \\/ z = 0) /\\ (y > 0 \\/ z > 0)";

}  // namespace

const std::vector<FixtureCase>& fixture_cases() {
  static const std::vector<FixtureCase> cases = {
      {"inequation-EA_C", kInequationExample, Field::C, Shape::EA_C,
       "a^2*y*z - a*b*y^2 - a*b*z^2 + b^2*y*z - a*y - a*z + b*y + b*z + 1",
       "((1 - a*z) + b*y)*((1 - a*y) + b*z)"},
      {"inequation-AE_C", kInequationExample, Field::C, Shape::AE_C,
       "-a^3*b^3*y*z + 4*a^2*b^3*y*z + a^3*b^2*y + a^3*b^2*z - a^3*b*y*z - 5*a*b^3*y*z - 4*a^2*b^2*y - 4*a^2*b^2*z + 5*a^2*b*y*z + a*b^2*y*z + 2*b^3*y*z - a^3*b + 5*a*b^2*y + 5*a*b^2*z - 8*a*b*y*z - b^2*y*z + 4*a^2*b - a*b*y - a*b*z + a*y*z - 2*b^2*y - 2*b^2*z + 4*b*y*z - 5*a*b + b*y + b*z - 2*y*z + a + 2*b - 1",
       "(1 - b*(a - 1)*(a - 2))*((a - 2)*y*z + (a - 1)*(1 - b*y)*(1 - b*z))"},
      {"inequation-E_R", kInequationExample, Field::R, Shape::E_R,
       "r^4*y^2*z^2 - 2*r^3*y^2*z - 2*r^3*y*z^2 + r^2*y^4 + r^2*z^4 + r^2*y^2 + 4*r^2*y*z + r^2*z^2 - 2*r*y^3 - 2*r*z^3 + y^2*z^2 - 2*r*y - 2*r*z + y^2 + z^2 + 1",
       "(y^2 + (1 - r*z)^2)*(z^2 + (1 - r*y)^2)"},
      {"order-AE_R", kOrderExample, Field::R, Shape::AE_R,
       "-r^3*s^5*y*z + 4*r^2*s^5*y*z - 5*r*s^5*y*z + r^3*s^3*y + r^3*s^3*z + r*s^4*y*z + 2*s^5*y*z - r^3*s*y*z - 4*r^2*s^3*y - 4*r^2*s^3*z - s^4*y*z + 5*r^2*s*y*z + 5*r*s^3*y + 5*r*s^3*z - r^3*s - r*s^2*y - r*s^2*z - 8*r*s*y*z - 2*s^3*y - 2*s^3*z + 4*r^2*s + r*y*z + s^2*y + s^2*z + 4*s*y*z - 5*r*s - 2*y*z + r + 2*s - 1",
       "(1 - s*(r - 1)*(r - 2))*((r - 2)*y*z + (r - 1)*(1 - s^2*y)*(1 - s^2*z))"},
  };
  return cases;
}

FixtureResult run_fixture(const FixtureCase& fixture) {
  FixtureResult result{fixture.name, false, ""};
  try {
    const QuantifiedEquation qe = eliminate(parse_formula(fixture.formula, fixture.field), fixture.field,
                                            fixture.shape);
    const std::string got = qe.equation.str();
    if (got == fixture.expected) {
      result.passed = true;
    } else {
      result.detail = "expected " + fixture.expected + ", got " + got;
    }
  } catch (const Error& e) {
    result.detail = e.what();
  }
  return result;
}

QuantifiedEquation pecker_simplified() {
  return parse_quantified_equation("exists r: (r^2*y*z - z - 1)^2 - z", Field::R);
}

QuantifiedEquation pecker_unsimplified() {
  return parse_quantified_equation("exists r: (r^2*y*z - y^2*z - 1)^2 - y^2*z", Field::R);
}

std::vector<GridSample> sweep_grid(const QuantifiedEquation& qe, const Var& y, const Var& z,
                                   const Rational& lo, const Rational& hi, const Rational& step) {
  if (step.sign() <= 0) throw Error(Errc::bad_input, "grid step must be positive");
  if (qe.prefix.size() != 1 || qe.prefix[0].quantifier != Quantifier::exists)
    throw Error(Errc::shape_unsupported, "grid sweeps need a single existential variable");
  const auto free = variables_outside(qe.equation, qe.quantified_vars());
  for (const auto& v : free)
    if (!(v == y) && !(v == z))
      throw Error(Errc::shape_unsupported, "unexpected free variable '" + v.name() + "'");
  std::vector<GridSample> out;
  for (Rational yv = lo; yv <= hi; yv += step)
    for (Rational zv = lo; zv <= hi; zv += step)
      out.push_back({yv, zv, decide_E_R(qe, Point{{y, Scalar(yv)}, {z, Scalar(zv)}})});
  return out;
}

}  // namespace boolelim
