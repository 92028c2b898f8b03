#pragma once

// Exact decision oracles for quantified single equations at concrete points.
//
// Over C the one-variable criterion is the fundamental theorem of algebra: a
// univariate polynomial has a root unless it is a nonzero constant. Over R the
// existential case is decided with Sturm chains. For the constructed forall-
// exists shapes over R and Q only the integer Lagrange nodes 1..d are
// decisive: for any other value of the universal variable the first bracket
// has a witness. Structured deciders rely on that and therefore re-derive the
// construction from its provenance before answering.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boolelim/elim.hpp"
#include "boolelim/formula.hpp"

namespace boolelim {

class Verdict {
 public:
  enum class Kind { truth, falsity, refuted, unresolved };

  static Verdict truth() { return Verdict(Kind::truth); }
  static Verdict falsity() { return Verdict(Kind::falsity); }
  static Verdict from_bool(bool value) { return value ? truth() : falsity(); }
  static Verdict refuted(Scalar sample);
  static Verdict unresolved(std::size_t samples_tried);

  Kind kind() const { return kind_; }
  bool is_definite() const { return kind_ != Kind::unresolved; }
  /// The universal value at which the inner existential fails.
  const Scalar& sample() const { return *sample_; }
  std::size_t samples_tried() const { return samples_tried_; }

  /// "TRUE", "FALSE", "REFUTED(a = 1)", "UNRESOLVED(50)".
  std::string str() const;
  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  explicit Verdict(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::optional<Scalar> sample_;
  std::size_t samples_tried_ = 0;
};

struct SamplePlan {
  std::uint64_t seed = 0;
  std::size_t count = 64;
  std::int64_t num_bound = 32;
  std::int64_t den_bound = 32;
  /// Integer universal values 1..k tried first; unset means the clause count
  /// recorded in the equation's provenance (0 when there is none).
  std::optional<std::size_t> include_integers_up_to;
};

/// Whether a univariate polynomial with scalar coefficients has a complex
/// root: false exactly for nonzero constants.
bool exists_root_C(const UniView& p);

/// Substitutes the free variables; the result involves quantified variables
/// only. Throws UNEXPECTED_VARIABLES when a free variable is left unbound.
MultiPoly instantiate(const QuantifiedEquation& qe, const Point& x);

/// Rebuilds the construction from the provenance and checks that it matches
/// the equation; throws SHAPE_UNSUPPORTED otherwise. Returns the rebuilt form
/// (recent rebuilds are shared between calls).
std::shared_ptr<const QuantifiedEquation> validate_shape(const QuantifiedEquation& qe, Shape expected);

/// exists a forall b. Generic over any such prefix.
bool decide_EA_C(const QuantifiedEquation& qe, const Point& x);
/// forall a exists b. Generic over any such prefix.
bool decide_AE_C(const QuantifiedEquation& qe, const Point& x);
/// exists r over R (Sturm). Over Q the equation must be a constructed E_R form.
bool decide_E_R(const QuantifiedEquation& qe, const Point& x);
bool decide_Ed_R(const QuantifiedEquation& qe, const Point& x);
bool decide_AE_R_structured(const QuantifiedEquation& qe, const Point& x);
bool decide_E3d_Q_structured(const QuantifiedEquation& qe, const Point& x);
bool decide_AE3_Q_structured(const QuantifiedEquation& qe, const Point& x);

/// Sampling refuter for forall-exists equations with one existential
/// variable. Returns REFUTED at the first failing universal value, else
/// UNRESOLVED(plan.count). SHAPE_UNSUPPORTED for other prefixes, and for
/// fields where the inner existential has no exact test.
Verdict refute_AE(const QuantifiedEquation& qe, const Point& x, const SamplePlan& plan);

/// Exact substitution of x and the assignment. Every existential variable
/// must be assigned (MISSING_ASSIGNMENT otherwise); universal variables left
/// unassigned stay symbolic, and the result is true iff what remains is the
/// zero polynomial. Square-root values are handled exactly.
bool check_witness(const QuantifiedEquation& qe, const Point& x, const Assignment& assignment);

enum class Decider {
  ea_c,
  ae_c,
  e_r,
  ed_r,
  ae_r_structured,
  e3d_q_structured,
  ae3_q_structured,
};

std::string_view to_string(Decider decider);
Decider decider_for(Shape shape);
/// Complete decider for hand-written equations, chosen by field and prefix;
/// SHAPE_UNSUPPORTED when there is none.
Decider decider_for(const QuantifiedEquation& qe);
bool run_decider(Decider decider, const QuantifiedEquation& qe, const Point& x);
/// decider_for(qe) then run_decider.
bool decide(const QuantifiedEquation& qe, const Point& x);

struct Disagreement {
  std::string formula;
  std::string equation;
  Point point;
  bool expected = false;
  bool got = false;
  std::uint64_t seed = 0;
};

struct EquivalenceReport {
  std::size_t points = 0;
  std::size_t agreements = 0;
  std::vector<Disagreement> disagreements;
  std::uint64_t seed = 0;
  Decider decider = Decider::ea_c;
};

/// Samples plan.count points (Gaussian rationals over C, rationals over R and
/// Q) and compares the formula's truth value with the decider's verdict.
EquivalenceReport equivalence_run(const Formula& phi, const QuantifiedEquation& qe, Decider decider,
                                  const SamplePlan& plan);

}  // namespace boolelim
