#pragma once

// Dense univariate polynomials with scalar coefficients: Euclidean GCD,
// squarefree parts and Sturm chains.

#include <string>
#include <vector>

#include "boolelim/poly.hpp"

namespace boolelim {

class UniPoly {
 public:
  UniPoly() = default;
  /// Coefficients from the constant term upwards; trailing zeros are trimmed.
  explicit UniPoly(std::vector<Scalar> coeffs);

  /// Requires every coefficient of the view to be constant.
  static UniPoly from_view(const UniView& view);
  /// p must involve at most the single variable v.
  static UniPoly from_poly(const MultiPoly& p, const Var& v);

  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_real() const;
  Degree degree() const;
  const Scalar& leading() const { return coeffs_.back(); }

  UniPoly monic() const;
  UniPoly derivative() const;
  Scalar evaluate(const Scalar& x) const;

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  friend UniPoly operator+(UniPoly l, const UniPoly& r) { return l += r; }
  friend UniPoly operator-(UniPoly l, const UniPoly& r) { return l -= r; }
  friend UniPoly operator*(const UniPoly& l, const UniPoly& r);
  UniPoly operator-() const;

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  MultiPoly to_poly(const Var& v, ScalarField field) const;
  std::string str(const std::string& var = "r") const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

struct DivMod {
  UniPoly quotient;
  UniPoly remainder;
};

/// Long division over the coefficient field; divisor must be nonzero.
DivMod divmod(const UniPoly& dividend, const UniPoly& divisor);

/// Monic GCD; gcd(0, 0) = 0.
UniPoly gcd_univariate(const UniPoly& p, const UniPoly& q);
UniView gcd_univariate(const UniView& p, const UniView& q);

/// p / gcd(p, p'), made monic. Throws ZERO_POLYNOMIAL for p = 0.
UniPoly squarefree_part(const UniPoly& p);
UniView squarefree_part(const UniView& p);

struct SturmChain {
  std::vector<UniPoly> polys;
};

/// p, p', then negated remainders until the remainder vanishes.
SturmChain sturm_chain(const UniPoly& p);

class RealRootCount {
 public:
  static RealRootCount infinite() { return RealRootCount(true, 0); }
  static RealRootCount finite(unsigned n) { return RealRootCount(false, n); }

  bool is_infinite() const { return infinite_; }
  unsigned value() const { return count_; }
  /// At least one real root (or identically zero).
  bool any() const { return infinite_ || count_ > 0; }

  friend bool operator==(const RealRootCount&, const RealRootCount&) = default;

 private:
  RealRootCount(bool inf, unsigned n) : infinite_(inf), count_(n) {}
  bool infinite_;
  unsigned count_;
};

/// Distinct real roots from sign variations of the Sturm chain at -inf and
/// +inf, read off leading coefficients. Coefficients must be real.
RealRootCount count_real_roots(const UniPoly& p);
RealRootCount count_real_roots(const UniView& p);

}  // namespace boolelim
