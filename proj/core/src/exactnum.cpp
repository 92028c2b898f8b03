#include "boolelim/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <ostream>

#include "boolelim/error.hpp"

namespace boolelim {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::division_by_zero: return "DIVISION_BY_ZERO";
    case Errc::not_positive: return "NOT_POSITIVE";
    case Errc::field_mismatch: return "FIELD_MISMATCH";
    case Errc::zero_polynomial: return "ZERO_POLYNOMIAL";
    case Errc::syntax_error: return "SYNTAX_ERROR";
    case Errc::order_in_c: return "ORDER_IN_C";
    case Errc::reserved_name: return "RESERVED_NAME";
    case Errc::size_limit: return "SIZE_LIMIT";
    case Errc::order_on_complex: return "ORDER_ON_COMPLEX";
    case Errc::index_out_of_range: return "INDEX_OUT_OF_RANGE";
    case Errc::wrong_kind: return "WRONG_KIND";
    case Errc::order_literal: return "ORDER_LITERAL";
    case Errc::neq_literal: return "NEQ_LITERAL";
    case Errc::incompatible_field: return "INCOMPATIBLE_FIELD";
    case Errc::variable_clash: return "VARIABLE_CLASH";
    case Errc::unexpected_variables: return "UNEXPECTED_VARIABLES";
    case Errc::shape_unsupported: return "SHAPE_UNSUPPORTED";
    case Errc::missing_assignment: return "MISSING_ASSIGNMENT";
    case Errc::no_witness: return "NO_WITNESS";
    case Errc::unbound_variable: return "UNBOUND_VARIABLE";
    case Errc::bad_input: return "BAD_INPUT";
  }
  return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// Rational

namespace {

constexpr std::int64_t kInlineLimit = std::int64_t{1} << 62;

bool fits_inline(__int128 v) { return v < kInlineLimit && v > -kInlineLimit; }

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  std::uint64_t x = a < 0 ? -static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  std::uint64_t y = b < 0 ? -static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
  while (y != 0) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  return static_cast<std::int64_t>(x);
}

Integer wide_to_integer(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer out = (hi << 64) + lo;
  return negative ? Integer(-out) : out;
}

// Constant-initialized, so usable during static initialization elsewhere.
mp_limb_t kOneLimb = 1;
const mpz_t kOne = MPZ_ROINIT_N(&kOneLimb, 1);

bool integer_fits_inline(const Integer& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;  // |z| < 2^62, matching fits_inline
}

}  // namespace

void Rational::Big::release(Block* block) noexcept {
  block->~Block();
  ::operator delete(block);
}

Rational::Big Rational::Big::make(mpz_srcptr num, mpz_srcptr den, bool negate) {
  const std::size_t num_size = mpz_size(num);
  const std::size_t den_size = mpz_size(den);
  static_assert(sizeof(Block) % alignof(mp_limb_t) == 0);
  void* raw = ::operator new(sizeof(Block) + (num_size + den_size) * sizeof(mp_limb_t));
  auto* block = new (raw) Block{};
  block->refs.store(1, std::memory_order_relaxed);
  auto* limbs = reinterpret_cast<mp_limb_t*>(block + 1);
  std::copy_n(mpz_limbs_read(num), num_size, limbs);
  std::copy_n(mpz_limbs_read(den), den_size, limbs + num_size);
  const auto sign = static_cast<mp_size_t>(mpz_sgn(num) < 0 ? -1 : 1) * (negate ? -1 : 1);
  mpz_roinit_n(mpq_numref(&block->value), limbs, sign * static_cast<mp_size_t>(num_size));
  mpz_roinit_n(mpq_denref(&block->value), limbs + num_size, static_cast<mp_size_t>(den_size));
  Big out;
  out.block_ = block;
  return out;
}

mpq_srcptr Rational::view(Scratch& scratch) const {
  if (big_) return big_.get();
  scratch.num = static_cast<mp_limb_t>(num_ < 0 ? -num_ : num_);
  scratch.den = static_cast<mp_limb_t>(den_);
  mpz_roinit_n(mpq_numref(&scratch.value), &scratch.num, num_ < 0 ? -1 : (num_ > 0 ? 1 : 0));
  mpz_roinit_n(mpq_denref(&scratch.value), &scratch.den, 1);
  return &scratch.value;
}

Rational::Rational(long value) {
  if (fits_inline(value)) {
    num_ = value;
  } else {
    const Integer num(value);
    big_ = Big::make(num.get_mpz_t(), kOne);
  }
}

Rational::Rational(Integer&& value) : Rational(static_cast<const Integer&>(value)) {}

Rational::Rational(const Integer& value) : Rational(from_mpz(value.get_mpz_t())) {}

Rational Rational::from_mpz(mpz_srcptr value) {
  Rational r;
  if (mpz_sizeinbase(value, 2) <= 62) {  // as integer_fits_inline
    r.num_ = mpz_get_si(value);
  } else {
    r.big_ = Big::make(value, kOne);
  }
  return r;
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw Error(Errc::division_by_zero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  *this = from_big(q);
}

Rational::Rational(const mpq_class& value) {
  if (sgn(value.get_den()) == 0) throw Error(Errc::division_by_zero, "zero denominator");
  mpq_class q(value);
  q.canonicalize();
  *this = from_big(q);
}

Rational Rational::from_big(const mpq_class& value) {
  Rational r;
  if (integer_fits_inline(value.get_num()) && integer_fits_inline(value.get_den())) {
    r.num_ = value.get_num().get_si();
    r.den_ = value.get_den().get_si();
  } else {
    r.big_ = Big::make(value.get_num_mpz_t(), value.get_den_mpz_t());
  }
  return r;
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const unsigned __int128 g = gcd128(num < 0 ? -static_cast<unsigned __int128>(num)
                                             : static_cast<unsigned __int128>(num),
                                     static_cast<unsigned __int128>(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  Rational r;
  if (fits_inline(num) && fits_inline(den)) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
  } else {
    const Integer n = wide_to_integer(num), d = wide_to_integer(den);
    r.big_ = Big::make(n.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s, 10));
    return Rational(Integer(s.substr(0, slash), 10), Integer(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw Error(Errc::syntax_error, "not a rational literal: '" + s + "'");
  }
}

Integer Rational::numerator() const {
  return big_ ? Integer(mpq_numref(big_.get())) : Integer(static_cast<long>(num_));
}
Integer Rational::denominator() const {
  return big_ ? Integer(mpq_denref(big_.get())) : Integer(static_cast<long>(den_));
}

mpq_class Rational::to_mpq() const {
  if (big_) return mpq_class(big_.get());
  mpq_class q;
  q.get_num() = static_cast<long>(num_);
  q.get_den() = static_cast<long>(den_);
  return q;
}

int Rational::sign() const {
  if (big_) return mpq_sgn(big_.get());
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? mpz_cmp_ui(mpq_denref(big_.get()), 1) == 0 : den_ == 1; }

bool Rational::is_canonical() const {
  if (big_) {
    const Integer num = numerator(), den = denominator();
    if (sgn(den) <= 0) return false;
    // Values that fit the inline form must use it, so equality can stay structural.
    if (integer_fits_inline(num) && integer_fits_inline(den)) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return g == 1;
  }
  return den_ > 0 && gcd64(num_, den_) == 1;
}

bool Rational::is_square() const {
  if (sign() < 0) return false;
  const Integer n = numerator();
  const Integer d = denominator();
  return mpz_perfect_square_p(n.get_mpz_t()) != 0 && mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

Rational Rational::sqrt() const {
  if (!is_square()) throw Error(Errc::not_positive, str() + " is not the square of a rational");
  Integer n = numerator();
  Integer d = denominator();
  mpz_sqrt(n.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), d.get_mpz_t());
  return Rational(n, d);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  if (!big_) return from_wide(den_, num_);
  mpq_class q;
  mpq_inv(q.get_mpq_t(), big_.get());
  return from_big(q);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_ && den_ == 1) {
      const std::int64_t s = num_ + rhs.num_;  // both below 2^62, no overflow
      if (fits_inline(s)) {
        num_ = s;
        return *this;
      }
    }
    const __int128 n = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
    const __int128 d = static_cast<__int128>(den_) * rhs.den_;
    return *this = from_wide(n, d);
  }
  Scratch ls, rs;
  mpq_class q;
  mpq_add(q.get_mpq_t(), view(ls), rhs.view(rs));
  return *this = from_big(q);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      const __int128 p = static_cast<__int128>(num_) * rhs.num_;
      if (fits_inline(p)) {
        num_ = static_cast<std::int64_t>(p);
        return *this;
      }
    }
    // Cross-cancel first so the products stay small.
    const std::int64_t g1 = num_ == 0 ? 1 : gcd64(num_, rhs.den_);
    const std::int64_t g2 = rhs.num_ == 0 ? 1 : gcd64(rhs.num_, den_);
    const __int128 n = static_cast<__int128>(num_ / g1) * (rhs.num_ / g2);
    const __int128 d = static_cast<__int128>(den_ / g2) * (rhs.den_ / g1);
    if (n == 0) return *this = Rational();
    if (fits_inline(n) && fits_inline(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    return *this = from_wide(n, d);
  }
  Scratch ls, rs;
  mpq_class q;
  mpq_mul(q.get_mpq_t(), view(ls), rhs.view(rs));
  return *this = from_big(q);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(Errc::division_by_zero, "division by zero");
  return *this *= rhs.inverse();
}

Rational Rational::operator-() const {
  Rational r;
  if (!big_) {
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  r.big_ = Big::make(mpq_numref(big_.get()), mpq_denref(big_.get()), true);
  return r;
}

bool operator==(const Rational& a, const Rational& b) {
  // Canonical forms: inline and shared values never denote the same number.
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return mpq_equal(a.big_.get(), b.big_.get()) != 0;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = 0;
  if (!a.big_ && !b.big_) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    c = (l > r) - (l < r);
  } else {
    Rational::Scratch ls, rs;
    c = mpq_cmp(a.view(ls), b.view(rs));
  }
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::str() const {
  if (big_) return mpq_class(big_.get()).get_str(10);
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Integer num = base.numerator();
  Integer den = base.denominator();
  mpz_pow_ui(num.get_mpz_t(), num.get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), exponent);
  return Rational(num, den);  // already coprime
}

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  if (is_real()) return GaussianRational(re_.inverse());
  Rational n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& rhs) {
  re_ += rhs.re_;
  if (!rhs.im_.is_zero()) im_ += rhs.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& rhs) {
  re_ -= rhs.re_;
  if (!rhs.im_.is_zero()) im_ -= rhs.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& rhs) {
  if (rhs.im_.is_zero()) {
    re_ *= rhs.re_;
    if (!im_.is_zero()) im_ *= rhs.re_;
    return *this;
  }
  if (im_.is_zero()) {
    im_ = re_ * rhs.im_;
    re_ *= rhs.re_;
    return *this;
  }
  Rational re = re_ * rhs.re_ - im_ * rhs.im_;
  Rational im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& rhs) {
  if (rhs.is_zero()) throw Error(Errc::division_by_zero, "division by zero");
  if (rhs.is_real()) {
    re_ /= rhs.re_;
    if (!im_.is_zero()) im_ /= rhs.re_;
    return *this;
  }
  return *this *= rhs.inverse();
}

std::string GaussianRational::str() const {
  if (im_.is_zero()) return re_.str();
  std::string imag;
  if (im_.is_one()) {
    imag = "I";
  } else if ((-im_).is_one()) {
    imag = "-I";
  } else {
    imag = im_.str() + "*I";
  }
  if (re_.is_zero()) return imag;
  if (im_.sign() < 0) {
    std::string mag = (-im_).is_one() ? "I" : (-im_).str() + "*I";
    return re_.str() + " - " + mag;
  }
  return re_.str() + " + " + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

GaussianRational pow(const GaussianRational& base, unsigned exponent) {
  if (base.is_real()) return GaussianRational(pow(base.re(), exponent));
  GaussianRational result(1);
  GaussianRational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Three squares

bool is_sum_three_squares(const Integer& n) {
  if (sgn(n) < 0) return false;
  if (sgn(n) == 0) return true;
  Integer m = n;
  while (mpz_divisible_2exp_p(m.get_mpz_t(), 2) != 0) m >>= 2;
  return mpz_fdiv_ui(m.get_mpz_t(), 8) != 7;
}

namespace {

// Exact floor(sqrt(n)) for n < 2^62: the double estimate is off by at most
// one, which the corrections fix without overflow.
std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square_u64(std::uint64_t n, std::uint64_t& root) {
  root = isqrt_u64(n);
  return root * root == n;
}

// Lexicographically smallest (p1 >= p2 >= p3 >= 0) with p1^2+p2^2+p3^2 = n.
bool search_small(std::uint64_t n, std::array<std::uint64_t, 3>& out) {
  std::uint64_t p1 = isqrt_u64(n / 3);
  while (3 * p1 * p1 < n) ++p1;
  const std::uint64_t p1_max = isqrt_u64(n);
  for (; p1 <= p1_max; ++p1) {
    const std::uint64_t rem = n - p1 * p1;
    std::uint64_t p2 = isqrt_u64(rem / 2);
    while (2 * p2 * p2 < rem) ++p2;
    const std::uint64_t p2_max = std::min(p1, isqrt_u64(rem));
    for (; p2 <= p2_max; ++p2) {
      std::uint64_t p3 = 0;
      if (is_square_u64(rem - p2 * p2, p3)) {
        out = {p1, p2, p3};
        return true;
      }
    }
  }
  return false;
}

bool search_big(const Integer& n, std::array<Integer, 3>& out) {
  Integer p1, p1_max, rem, p2, p2_max, p3, t;
  t = n / 3;
  mpz_sqrt(p1.get_mpz_t(), t.get_mpz_t());
  while (3 * p1 * p1 < n) ++p1;
  mpz_sqrt(p1_max.get_mpz_t(), n.get_mpz_t());
  for (; p1 <= p1_max; ++p1) {
    rem = n - p1 * p1;
    t = rem / 2;
    mpz_sqrt(p2.get_mpz_t(), t.get_mpz_t());
    while (2 * p2 * p2 < rem) ++p2;
    mpz_sqrt(p2_max.get_mpz_t(), rem.get_mpz_t());
    if (p2_max > p1) p2_max = p1;
    for (; p2 <= p2_max; ++p2) {
      t = rem - p2 * p2;
      if (mpz_perfect_square_p(t.get_mpz_t()) != 0) {
        mpz_sqrt(p3.get_mpz_t(), t.get_mpz_t());
        out = {p1, p2, p3};
        return true;
      }
    }
  }
  return false;
}

std::array<Integer, 3> decompose(const Integer& n) {
  std::array<Integer, 3> parts;
  bool found = false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) < 62) {
    std::array<std::uint64_t, 3> small{};
    found = search_small(mpz_get_ui(n.get_mpz_t()), small);
    for (std::size_t k = 0; k < 3; ++k) parts[k] = Integer(static_cast<unsigned long>(small[k]));
  } else {
    found = search_big(n, parts);
  }
  if (!found) throw std::logic_error("three-squares search exhausted for " + n.get_str());
  return parts;
}

}  // namespace

ThreeSquares three_squares_pair(const Integer& n) {
  if (sgn(n) <= 0) throw Error(Errc::not_positive, "three_squares_pair needs n >= 1");
  ThreeSquares out;
  out.n = n;
  if (is_sum_three_squares(n)) {
    out.selector = 1;
    out.parts = decompose(n);
  } else {
    out.selector = 2;
    out.parts = decompose(2 * n);
  }
  return out;
}

PositivityWitness positivity_witness_q(const Rational& u) {
  if (u.sign() <= 0) throw Error(Errc::not_positive, "u = " + u.str() + " is not positive");
  // 1/(2u) = p/q; decompose n = p*q (or 2n) and scale parts by 1/q.
  const Rational half_inverse = (Rational(2) * u).inverse();
  const Integer q = half_inverse.denominator();
  const ThreeSquares ts = three_squares_pair(half_inverse.numerator() * q);
  PositivityWitness w;
  // n = sum p_k^2 gives V = 1/(2u); 2n = sum p_k^2 gives V = 1/u.
  w.selector = ts.selector == 1 ? 2 : 1;
  for (std::size_t k = 0; k < 3; ++k) w.v[k] = Rational(ts.parts[k], q);
  return w;
}

bool is_rational_sum_three_squares(const Rational& q) {
  if (q.sign() < 0) return false;
  return is_sum_three_squares(q.numerator() * q.denominator());
}

}  // namespace boolelim
