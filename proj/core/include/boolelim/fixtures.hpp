#pragma once

// Worked examples shipped with the library: the two-variable formula in its
// four constructed forms and the single-quantifier real curves of Pecker type.

#include <string>
#include <vector>

#include "boolelim/elim.hpp"

namespace boolelim {

struct FixtureCase {
  std::string name;
  std::string formula;
  Field field = Field::C;
  Shape shape = Shape::EA_C;
  /// Canonical rendering of the constructed equation.
  std::string expected;
  /// Factored display the expected polynomial expands from.
  std::string factored;
};

const std::vector<FixtureCase>& fixture_cases();

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Builds the fixture's form and compares the canonical rendering.
FixtureResult run_fixture(const FixtureCase& fixture);

/// exists r: (r^2*y*z - z - 1)^2 - z = 0, which holds iff y > 0 and z > 0.
QuantifiedEquation pecker_simplified();
/// exists r: (r^2*y*z - y^2*z - 1)^2 - y^2*z = 0.
QuantifiedEquation pecker_unsimplified();

struct GridSample {
  Rational y;
  Rational z;
  bool has_real_root = false;
};

/// Decides an exists-r equation over R at every point of the grid
/// {lo, lo + step, ..., hi}^2 in the two free variables (y outer, z inner).
/// SHAPE_UNSUPPORTED unless there is one existential variable and exactly the
/// two named free variables.
std::vector<GridSample> sweep_grid(const QuantifiedEquation& qe, const Var& y, const Var& z,
                                   const Rational& lo, const Rational& hi, const Rational& step);

}  // namespace boolelim
