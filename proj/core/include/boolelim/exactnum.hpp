#pragma once

// Exact scalars: arbitrary-precision rationals, Gaussian rationals, and the
// three-squares routines used by the constructions over Q.

#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace boolelim {

using Integer = mpz_class;

/// Canonical fraction num/den with den > 0 and gcd(|num|, den) = 1.
///
/// Values whose numerator and denominator fit in 62 bits are held inline;
/// larger ones in an immutable shared GMP rational. Polynomial expansion
/// creates and destroys coefficients at a high rate, and nearly all of them
/// are small.
class Rational {
 public:
  Rational() = default;
  Rational(long value);  // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& value);
  explicit Rational(Integer&& value);
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& value);

  /// From a GMP integer, which may be a read-only view.
  static Rational from_mpz(mpz_srcptr value);
  /// Accepts "n" or "n/d" with an optional leading sign.
  static Rational parse(std::string_view text);

  Integer numerator() const;
  Integer denominator() const;
  mpq_class to_mpq() const;

  int sign() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  bool is_canonical() const;
  /// Whether this is the square of a rational.
  bool is_square() const;
  /// Exact square root; requires is_square().
  Rational sqrt() const;

  Rational abs() const;
  Rational inverse() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);
  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;

 private:
  /// Immutable, reference-counted GMP rational whose limbs live in the same
  /// allocation as the header and count, so a value costs one heap block.
  class Big {
   public:
    Big() noexcept = default;
    /// Copies num/den (already canonical), negated if requested.
    static Big make(mpz_srcptr num, mpz_srcptr den, bool negate = false);
    Big(const Big& other) noexcept : block_(other.block_) {
      if (block_) block_->refs.fetch_add(1, std::memory_order_relaxed);
    }
    Big(Big&& other) noexcept : block_(std::exchange(other.block_, nullptr)) {}
    Big& operator=(Big other) noexcept {
      std::swap(block_, other.block_);
      return *this;
    }
    ~Big() {
      if (block_ && block_->refs.fetch_sub(1, std::memory_order_acq_rel) == 1) release(block_);
    }
    explicit operator bool() const noexcept { return block_ != nullptr; }
    mpq_srcptr get() const noexcept { return &block_->value; }

   private:
    struct Block {
      std::atomic<std::uint32_t> refs;
      __mpq_struct value;  // read-only views over the trailing limbs
    };
    static void release(Block* block) noexcept;
    Block* block_ = nullptr;
  };

  /// Stack storage for viewing an inline value as a GMP rational.
  struct Scratch {
    mp_limb_t num = 0;
    mp_limb_t den = 0;
    __mpq_struct value{};
  };
  mpq_srcptr view(Scratch& scratch) const;

  /// Canonical value from a 128-bit fraction (den != 0).
  static Rational from_wide(__int128 num, __int128 den);
  /// Canonical value from a GMP rational, demoted when it fits inline.
  static Rational from_big(const mpq_class& value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  Big big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

/// re + im*i with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return im_.is_zero() && re_.is_one(); }
  bool is_real() const { return im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& rhs);
  GaussianRational& operator-=(const GaussianRational& rhs);
  GaussianRational& operator*=(const GaussianRational& rhs);
  GaussianRational& operator/=(const GaussianRational& rhs);

  friend GaussianRational operator+(GaussianRational l, const GaussianRational& r) { return l += r; }
  friend GaussianRational operator-(GaussianRational l, const GaussianRational& r) { return l -= r; }
  friend GaussianRational operator*(GaussianRational l, const GaussianRational& r) { return l *= r; }
  friend GaussianRational operator/(GaussianRational l, const GaussianRational& r) { return l /= r; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  /// "3/2", "-I", "1 + 2*I", "(1/2)*I"; parseable by the polynomial reader.
  std::string str() const;

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

GaussianRational pow(const GaussianRational& base, unsigned exponent);

/// Polynomial coefficients and evaluation points use this type throughout;
/// real-field data simply keeps im = 0.
using Scalar = GaussianRational;

// ---------------------------------------------------------------------------
// Three squares.

struct ThreeSquares {
  Integer n;
  int selector = 1;  // 1: n itself decomposed, 2: 2n decomposed
  std::array<Integer, 3> parts;
};

/// True iff n is not of the form 4^k(8m+7).
bool is_sum_three_squares(const Integer& n);

/// Decomposes n (or 2n when n is excluded) as p1^2+p2^2+p3^2 with
/// p1 >= p2 >= p3 >= 0, choosing the lexicographically smallest triple.
ThreeSquares three_squares_pair(const Integer& n);

struct PositivityWitness {
  int selector = 1;  // the factor (1 - selector*u*V) vanishes
  std::array<Rational, 3> v;

  Rational sum_of_squares() const { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }
};

/// Rationals v with selector*u*(v1^2+v2^2+v3^2) = 1, for u > 0.
PositivityWitness positivity_witness_q(const Rational& u);

/// Whether a positive rational is a sum of three rational squares.
bool is_rational_sum_three_squares(const Rational& q);

}  // namespace boolelim
