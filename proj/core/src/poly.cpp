#include "boolelim/poly.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <unordered_map>

#include <absl/container/flat_hash_map.h>
#include <absl/numeric/int128.h>

#include "boolelim/error.hpp"

namespace boolelim {

namespace {

constexpr std::string_view kQuantifiedBases = "abrsvw";

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Var

Var::Var(std::string name) : name_(std::move(name)) {
  std::string_view n = name_;
  std::size_t split = n.size();
  while (split > 0 && n[split - 1] >= '0' && n[split - 1] <= '9') --split;
  if (split == 0) split = n.size();  // all digits: no stem/index split
  std::string_view stem = n.substr(0, split);
  std::string_view digits = n.substr(split);
  if (!digits.empty() && digits.size() <= 18) {
    std::from_chars(digits.data(), digits.data() + digits.size(), index_);
    indexed_ = true;
  }
  stem_ = std::string(indexed_ ? stem : n);
  if (is_reserved_name(n)) group_ = static_cast<int>(kQuantifiedBases.find(n[0]));
}

bool Var::is_reserved_name(std::string_view name) {
  return !name.empty() && kQuantifiedBases.find(name[0]) != std::string_view::npos &&
         all_digits(name.substr(1));
}

std::strong_ordering operator<=>(const Var& a, const Var& b) {
  if (auto c = a.group_ <=> b.group_; c != 0) return c;
  if (auto c = a.stem_ <=> b.stem_; c != 0) return c;
  if (auto c = a.indexed_ <=> b.indexed_; c != 0) return c;
  if (auto c = a.index_ <=> b.index_; c != 0) return c;
  return a.name_ <=> b.name_;
}

Var indexed_var(std::string_view base, std::size_t index) {
  return Var(std::string(base) + std::to_string(index));
}

std::string_view to_string(ScalarField field) {
  return field == ScalarField::rational ? "rational" : "gaussian";
}

// ---------------------------------------------------------------------------
// Canonical form helpers

namespace {

unsigned total(const Exponents& e) {
  unsigned s = 0;
  for (auto x : e) s += x;
  return s;
}

// Graded lexicographic, highest first.
bool term_before(const Exponents& a, const Exponents& b) {
  const unsigned ta = total(a);
  const unsigned tb = total(b);
  if (ta != tb) return ta > tb;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return false;
}

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : e) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

std::vector<Var> merge_vars(const std::vector<Var>& a, const std::vector<Var>& b) {
  std::vector<Var> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Positions of `from` inside the sorted superset `to`.
std::vector<std::size_t> column_map(const std::vector<Var>& from, const std::vector<Var>& to) {
  std::vector<std::size_t> map(from.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    while (to[j] != from[i]) ++j;
    map[i] = j;
  }
  return map;
}

Exponents remap(const Exponents& e, const std::vector<std::size_t>& cols, std::size_t width) {
  Exponents out(width, 0);
  for (std::size_t i = 0; i < e.size(); ++i) out[cols[i]] = e[i];
  return out;
}

}  // namespace

void MultiPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& x, const Term& y) { return term_before(x.exps, y.exps); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exps == t.exps) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
  terms_ = std::move(merged);
  drop_unused_vars();
}

void MultiPoly::drop_unused_vars() {
  std::vector<bool> used(vars_.size(), false);
  std::size_t unseen = vars_.size();
  for (const auto& t : terms_) {
    if (unseen == 0) return;
    for (std::size_t k = 0; k < t.exps.size(); ++k)
      if (t.exps[k] != 0 && !used[k]) {
        used[k] = true;
        --unseen;
      }
  }
  if (unseen == 0) return;
  std::vector<Var> kept;
  for (std::size_t k = 0; k < vars_.size(); ++k)
    if (used[k]) kept.push_back(vars_[k]);
  for (auto& t : terms_) {
    Exponents e;
    e.reserve(kept.size());
    for (std::size_t k = 0; k < t.exps.size(); ++k)
      if (used[k]) e.push_back(t.exps[k]);
    t.exps = std::move(e);
  }
  vars_ = std::move(kept);
}

void MultiPoly::check_field(const MultiPoly& other) const {
  if (field_ != other.field_)
    throw Error(Errc::field_mismatch, std::string("cannot combine ") +
                                          std::string(to_string(field_)) + " and " +
                                          std::string(to_string(other.field_)) + " polynomials");
}

// ---------------------------------------------------------------------------
// Construction

MultiPoly MultiPoly::constant(const Scalar& c, ScalarField field) {
  if (field == ScalarField::rational && !c.is_real())
    throw Error(Errc::field_mismatch, "non-real constant in a rational polynomial");
  MultiPoly p(field);
  if (!c.is_zero()) p.terms_.push_back(Term{{}, c});
  return p;
}

MultiPoly MultiPoly::variable(const Var& v, ScalarField field) {
  MultiPoly p(field);
  p.vars_ = {v};
  p.terms_.push_back(Term{{1}, Scalar(1)});
  return p;
}

MultiPoly MultiPoly::monomial(const Scalar& c, const std::vector<std::pair<Var, unsigned>>& powers,
                              ScalarField field) {
  MultiPoly p = constant(c, field);
  if (p.is_zero()) return p;
  std::map<Var, unsigned> merged;
  for (const auto& [v, e] : powers) merged[v] += e;
  Exponents exps;
  for (const auto& [v, e] : merged) {
    p.vars_.push_back(v);
    exps.push_back(e);
  }
  p.terms_.front().exps = std::move(exps);
  p.canonicalize();
  return p;
}

MultiPoly MultiPoly::from_terms(ScalarField field, std::vector<Var> vars, std::vector<Term> terms) {
  MultiPoly p(field);
  for (const auto& t : terms)
    if (field == ScalarField::rational && !t.coeff.is_real())
      throw Error(Errc::field_mismatch, "non-real coefficient in a rational polynomial");
  p.vars_ = std::move(vars);
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

MultiPoly MultiPoly::with_field(ScalarField field) const {
  if (field == ScalarField::rational) {
    for (const auto& t : terms_)
      if (!t.coeff.is_real())
        throw Error(Errc::field_mismatch, "polynomial has non-real coefficients");
  }
  MultiPoly p = *this;
  p.field_ = field;
  return p;
}

// ---------------------------------------------------------------------------
// Queries

Scalar MultiPoly::constant_value() const {
  if (!is_constant()) throw Error(Errc::unexpected_variables, "polynomial is not constant: " + str());
  return terms_.empty() ? Scalar(0) : terms_.front().coeff;
}

Scalar MultiPoly::constant_term() const {
  if (!terms_.empty() && total(terms_.back().exps) == 0) return terms_.back().coeff;
  return Scalar(0);
}

bool MultiPoly::uses(const Var& v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

Degree MultiPoly::degree_in(const Var& v) const {
  if (is_zero()) return neg_inf;
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return 0U;
  const auto k = static_cast<std::size_t>(it - vars_.begin());
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[k]);
  return d;
}

std::vector<unsigned> MultiPoly::degrees() const {
  std::vector<unsigned> d(vars_.size(), 0);
  for (const auto& t : terms_)
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::max(d[k], t.exps[k]);
  return d;
}

Degree MultiPoly::total_degree() const {
  if (is_zero()) return neg_inf;
  return total(terms_.front().exps);
}

// ---------------------------------------------------------------------------
// Arithmetic

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_field(rhs);
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    vars_ = rhs.vars_;
    terms_ = rhs.terms_;
    return *this;
  }
  std::vector<Var> vars = merge_vars(vars_, rhs.vars_);
  const bool same_lhs = vars.size() == vars_.size();
  const bool same_rhs = vars.size() == rhs.vars_.size();
  const auto lcols = column_map(vars_, vars);
  const auto rcols = column_map(rhs.vars_, vars);

  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  auto left = [&](std::size_t k) {
    return same_lhs ? terms_[k].exps : remap(terms_[k].exps, lcols, vars.size());
  };
  auto right = [&](std::size_t k) {
    return same_rhs ? rhs.terms_[k].exps : remap(rhs.terms_[k].exps, rcols, vars.size());
  };
  Exponents le;
  Exponents re;
  if (i < terms_.size()) le = left(i);
  if (j < rhs.terms_.size()) re = right(j);
  while (i < terms_.size() || j < rhs.terms_.size()) {
    if (j == rhs.terms_.size() || (i < terms_.size() && term_before(le, re))) {
      out.push_back(Term{std::move(le), std::move(terms_[i].coeff)});
      if (++i < terms_.size()) le = left(i);
    } else if (i == terms_.size() || term_before(re, le)) {
      out.push_back(Term{std::move(re), rhs.terms_[j].coeff});
      if (++j < rhs.terms_.size()) re = right(j);
    } else {
      Scalar c = std::move(terms_[i].coeff);
      c += rhs.terms_[j].coeff;
      if (!c.is_zero()) out.push_back(Term{std::move(le), std::move(c)});
      if (++i < terms_.size()) le = left(i);
      if (++j < rhs.terms_.size()) re = right(j);
    }
  }
  // Inserting zero columns preserves the term order, so the merge is
  // already sorted and free of duplicates.
  vars_ = std::move(vars);
  terms_ = std::move(out);
  drop_unused_vars();
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
  if (field_ == ScalarField::rational && !c.is_real())
    throw Error(Errc::field_mismatch, "non-real scalar applied to a rational polynomial");
  if (c.is_zero()) {
    vars_.clear();
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

namespace {

// Exponent vectors are packed side by side into one 64- or 128-bit word:
// the total degree in the top bits, then column 0, column 1, ...  Words then
// compare in canonical (graded lexicographic) order, and the word of a
// product is the sum of the factors' words.
struct PackedLayout {
  std::vector<unsigned> shift;
  std::vector<unsigned> bits;
  unsigned total_shift = 0;  // bits used by the columns
  unsigned used = 0;         // including the total degree

  template <class Key>
  Key pack(const Exponents& e, const std::vector<std::size_t>& cols) const {
    Key key = Key(total(e)) << total_shift;
    for (std::size_t c = 0; c < e.size(); ++c) key |= Key(e[c]) << shift[cols[c]];
    return key;
  }
  template <class Key>
  Exponents unpack(Key key) const {
    Exponents e(shift.size());
    for (std::size_t c = 0; c < e.size(); ++c)
      e[c] = static_cast<std::uint32_t>((key >> shift[c]) & ((Key(1) << bits[c]) - 1));
    return e;
  }
};

// From the per-column maxima of the product degrees; nullopt when they do
// not fit in 128 bits.
std::optional<PackedLayout> packed_layout(const std::vector<std::uint64_t>& max_degree) {
  PackedLayout layout;
  const std::size_t width = max_degree.size();
  layout.shift.assign(width, 0);
  layout.bits.assign(width, 0);
  std::uint64_t max_total = 0;
  for (std::size_t c = width; c-- > 0;) {
    layout.bits[c] = static_cast<unsigned>(std::bit_width(max_degree[c]));
    layout.shift[c] = layout.total_shift;
    layout.total_shift += layout.bits[c];
    max_total += max_degree[c];
    if (layout.total_shift > 127) return std::nullopt;
  }
  layout.used = layout.total_shift + static_cast<unsigned>(std::bit_width(max_total));
  if (layout.used > 127) return std::nullopt;
  return layout;
}

// Coefficients of like monomials, keyed by packed exponents.
template <class Key, class C>
struct Accumulator {
  absl::flat_hash_map<Key, std::uint32_t> index;
  std::vector<Key> keys;
  std::vector<C> coeffs;

  // The slot for `key` and whether it was just created (and is unset).
  std::pair<C&, bool> slot(Key key) {
    auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(coeffs.size()));
    if (inserted) {
      keys.push_back(key);
      coeffs.emplace_back();
    }
    return {coeffs[it->second], inserted};
  }
};

// How coefficients are accumulated: machine integers when every product
// sum provably fits in 128 bits, GMP integers for other integer inputs, and
// general scalars otherwise.  Polynomial expansion in the constructions is
// almost entirely integral, and this avoids a heap value per product.
struct WideInt {
  using Value = __int128;
  using Input = std::int64_t;
  static Input input(const Scalar& c) { return c.re().numerator().get_si(); }
  static Input twice(Input x) { return 2 * x; }
  static void add_product(Value& acc, bool fresh, Input a, Input b) {
    const auto p = static_cast<__int128>(a) * b;
    acc = fresh ? p : acc + p;
  }
  static bool is_zero(const Value& v) { return v == 0; }
  static Scalar scalar(Value v) {
    if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max())
      return Scalar(Rational(static_cast<long>(v)));
    const bool negative = v < 0;
    const auto magnitude = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer z(static_cast<unsigned long>(magnitude >> 64));
    z <<= 64;
    z += static_cast<unsigned long>(magnitude);
    if (negative) z = -z;
    return Scalar(Rational(std::move(z)));
  }
};

// Integer sums bounded below 2^250: four limbs in two's complement, so no
// accumulator touches the heap.  Wrap-around in partial sums is harmless
// because the final values are in range.
struct FixedInt {
  static constexpr mp_size_t kLimbs = 4;
  struct Value {
    std::array<mp_limb_t, kLimbs> w;
  };
  struct Input {
    std::array<mp_limb_t, kLimbs> mag{};
    mp_size_t size = 0;  // limbs in use; 0 for zero
    bool negative = false;
  };
  static Input input(const Scalar& c) {
    const Integer n = c.re().numerator();
    Input x;
    x.size = static_cast<mp_size_t>(mpz_size(n.get_mpz_t()));
    x.negative = sgn(n) < 0;
    std::copy_n(mpz_limbs_read(n.get_mpz_t()), x.size, x.mag.begin());
    return x;
  }
  static Input twice(const Input& x) {
    Input y = x;
    if (x.size == 0) return y;
    const mp_limb_t carry = mpn_lshift(y.mag.data(), x.mag.data(), x.size, 1);
    if (carry != 0) y.mag[static_cast<std::size_t>(y.size++)] = carry;
    return y;
  }
  static void add_product(Value& acc, bool fresh, const Input& a, const Input& b) {
    std::array<mp_limb_t, 2 * kLimbs> p{};
    if (a.size != 0 && b.size != 0) {
      if (a.size >= b.size) {
        mpn_mul(p.data(), a.mag.data(), a.size, b.mag.data(), b.size);
      } else {
        mpn_mul(p.data(), b.mag.data(), b.size, a.mag.data(), a.size);
      }
    }
    const bool negative = a.negative != b.negative;
    if (fresh) {
      if (negative) {
        mpn_neg(acc.w.data(), p.data(), kLimbs);
      } else {
        std::copy_n(p.begin(), kLimbs, acc.w.begin());
      }
    } else if (negative) {
      mpn_sub_n(acc.w.data(), acc.w.data(), p.data(), kLimbs);
    } else {
      mpn_add_n(acc.w.data(), acc.w.data(), p.data(), kLimbs);
    }
  }
  static bool is_zero(const Value& v) { return mpn_zero_p(v.w.data(), kLimbs) != 0; }
  static Scalar scalar(Value&& v) {
    const bool negative = (v.w[kLimbs - 1] >> (GMP_NUMB_BITS - 1)) != 0;
    std::array<mp_limb_t, kLimbs> mag = v.w;
    if (negative) mpn_neg(mag.data(), v.w.data(), kLimbs);
    mp_size_t size = kLimbs;
    while (size > 0 && mag[static_cast<std::size_t>(size - 1)] == 0) --size;
    mpz_t view;
    mpz_roinit_n(view, mag.data(), negative ? -size : size);
    return Scalar(Rational::from_mpz(view));
  }
};

struct BigInt {
  using Value = Integer;
  using Input = Integer;
  static Input input(const Scalar& c) { return c.re().numerator(); }
  static Input twice(const Input& x) { return Integer(x * 2); }
  static void add_product(Value& acc, bool fresh, const Input& a, const Input& b) {
    if (fresh) {
      mpz_mul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    } else {
      mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
  }
  static bool is_zero(const Value& v) { return sgn(v) == 0; }
  static Scalar scalar(Value&& v) { return Scalar(Rational(std::move(v))); }
};

struct AnyScalar {
  using Value = Scalar;
  using Input = Scalar;
  static Input input(const Scalar& c) { return c; }
  static Input twice(const Input& x) { return x + x; }
  static void add_product(Value& acc, bool fresh, const Input& a, const Input& b) {
    if (fresh) {
      acc = a;
      acc *= b;
    } else {
      acc += a * b;
    }
  }
  static bool is_zero(const Value& v) { return v.is_zero(); }
  static Scalar scalar(Value&& v) { return std::move(v); }
};

struct ProductPlan {
  const MultiPoly* l;
  const MultiPoly* r;
  std::vector<std::size_t> lcols;
  std::vector<std::size_t> rcols;
};

// Expanded sum of the planned products, in canonical term order.
template <class Mode, class Key>
std::vector<Term> accumulate_products(const std::vector<ProductPlan>& plans, const PackedLayout& layout) {
  Accumulator<Key, typename Mode::Value> acc;
  std::size_t pairs = 0;
  for (const auto& plan : plans) pairs += plan.l->terms().size() * plan.r->terms().size();
  acc.index.reserve(std::min<std::size_t>(pairs, std::size_t{1} << 22));
  std::vector<typename Mode::Input> lc;
  std::vector<typename Mode::Input> rc;
  std::vector<Key> lkeys;
  std::vector<Key> rkeys;
  auto add = [&](Key key, const typename Mode::Input& a, const typename Mode::Input& b) {
    auto [value, fresh] = acc.slot(key);
    Mode::add_product(value, fresh, a, b);
  };
  for (const auto& plan : plans) {
    lc.clear();
    rc.clear();
    lkeys.clear();
    rkeys.clear();
    for (const auto& t : plan.l->terms()) {
      lc.push_back(Mode::input(t.coeff));
      lkeys.push_back(layout.pack<Key>(t.exps, plan.lcols));
    }
    for (const auto& t : plan.r->terms()) {
      rc.push_back(Mode::input(t.coeff));
      rkeys.push_back(layout.pack<Key>(t.exps, plan.rcols));
    }
    if (plan.l == plan.r) {
      // Squares: each cross term once, doubled.
      for (std::size_t i = 0; i < lc.size(); ++i) {
        const auto twice = Mode::twice(lc[i]);
        add(lkeys[i] + lkeys[i], lc[i], lc[i]);
        for (std::size_t k = i + 1; k < lc.size(); ++k) add(lkeys[i] + lkeys[k], twice, lc[k]);
      }
      continue;
    }
    for (std::size_t i = 0; i < lc.size(); ++i)
      for (std::size_t k = 0; k < rc.size(); ++k) add(lkeys[i] + rkeys[k], lc[i], rc[k]);
  }

  std::vector<std::pair<Key, std::uint32_t>> order;
  order.reserve(acc.coeffs.size());
  for (std::uint32_t i = 0; i < acc.coeffs.size(); ++i)
    if (!Mode::is_zero(acc.coeffs[i])) order.emplace_back(acc.keys[i], i);
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<Term> terms;
  terms.reserve(order.size());
  for (const auto& [key, index] : order)
    terms.push_back(Term{layout.unpack<Key>(key), Mode::scalar(std::move(acc.coeffs[index]))});
  return terms;
}

enum class SumWidth { machine, fixed, unbounded };

template <class Key>
std::vector<Term> accumulate(const std::vector<ProductPlan>& plans, const PackedLayout& layout, bool integral,
                             SumWidth width) {
  if (integral && width == SumWidth::machine) return accumulate_products<WideInt, Key>(plans, layout);
  if (integral && width == SumWidth::fixed) return accumulate_products<FixedInt, Key>(plans, layout);
  if (integral) return accumulate_products<BigInt, Key>(plans, layout);
  return accumulate_products<AnyScalar, Key>(plans, layout);
}

}  // namespace

MultiPoly MultiPoly::sum_of_products(ScalarField field, const std::vector<std::pair<const MultiPoly*, const MultiPoly*>>& pairs) {
  MultiPoly out(field);
  std::vector<ProductPlan> plans;
  for (const auto& [l, r] : pairs) {
    out.check_field(*l);
    out.check_field(*r);
    if (!l->is_zero() && !r->is_zero()) plans.push_back({l, r, {}, {}});
  }
  for (const auto& plan : plans) {
    out.vars_ = merge_vars(out.vars_, plan.l->vars_);
    out.vars_ = merge_vars(out.vars_, plan.r->vars_);
  }
  const std::size_t width = out.vars_.size();
  std::vector<std::uint64_t> max_degree(width, 0);
  bool integral = true;
  bool machine = true;
  long double bound = 0;
  for (auto& plan : plans) {
    plan.lcols = column_map(plan.l->vars_, out.vars_);
    plan.rcols = column_map(plan.r->vars_, out.vars_);
    std::vector<std::uint64_t> lmax(width, 0);
    std::vector<std::uint64_t> rmax(width, 0);
    long double lbig = 0;
    long double rbig = 0;
    auto scan = [&](const MultiPoly& p, const std::vector<std::size_t>& cols, std::vector<std::uint64_t>& mx,
                    long double& big) {
      for (const auto& t : p.terms_) {
        for (std::size_t c = 0; c < t.exps.size(); ++c) mx[cols[c]] = std::max<std::uint64_t>(mx[cols[c]], t.exps[c]);
        if (!integral) continue;
        if (!t.coeff.im().is_zero() || !t.coeff.re().is_integer()) {
          integral = false;
          continue;
        }
        const Integer n = t.coeff.re().numerator();
        if (mpz_sizeinbase(n.get_mpz_t(), 2) > 61) machine = false;
        big = std::max(big, std::fabs(static_cast<long double>(n.get_d())));
      }
    };
    scan(*plan.l, plan.lcols, lmax, lbig);
    scan(*plan.r, plan.rcols, rmax, rbig);
    for (std::size_t c = 0; c < width; ++c) max_degree[c] = std::max(max_degree[c], lmax[c] + rmax[c]);
    bound += 2 * lbig * rbig * static_cast<long double>(std::min(plan.l->terms_.size(), plan.r->terms_.size()));
  }
  if (plans.empty()) {
    out.vars_.clear();
    return out;
  }

  const auto layout = packed_layout(max_degree);
  if (!layout) {
    out.vars_.clear();
    for (const auto& plan : plans) out += multiply_unpacked(*plan.l, *plan.r);
    return out;
  }
  // The bound is a floating-point estimate; the thresholds leave ample slack.
  const SumWidth sums = machine && bound < 0x1p125L ? SumWidth::machine
                        : bound < 0x1p250L          ? SumWidth::fixed
                                                    : SumWidth::unbounded;
  out.terms_ = layout->used <= 64 ? accumulate<std::uint64_t>(plans, *layout, integral, sums)
                                  : accumulate<absl::uint128>(plans, *layout, integral, sums);
  out.drop_unused_vars();
  return out;
}

MultiPoly MultiPoly::multiply_unpacked(const MultiPoly& l, const MultiPoly& r) {
  MultiPoly out(l.field_);
  out.vars_ = merge_vars(l.vars_, r.vars_);
  const std::size_t width = out.vars_.size();
  const auto lcols = column_map(l.vars_, out.vars_);
  const auto rcols = column_map(r.vars_, out.vars_);
  std::vector<Exponents> rexps;
  rexps.reserve(r.terms_.size());
  for (const auto& t : r.terms_) rexps.push_back(remap(t.exps, rcols, width));

  std::unordered_map<Exponents, Scalar, ExponentsHash> acc;
  acc.reserve(l.terms_.size() * r.terms_.size());
  Scalar prod;
  for (const auto& lt : l.terms_) {
    const Exponents le = remap(lt.exps, lcols, width);
    for (std::size_t k = 0; k < r.terms_.size(); ++k) {
      Exponents e = le;
      for (std::size_t c = 0; c < width; ++c) e[c] += rexps[k][c];
      prod = lt.coeff;
      prod *= r.terms_[k].coeff;
      auto [it, inserted] = acc.try_emplace(std::move(e), prod);
      if (!inserted) it->second += prod;
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!c.is_zero()) out.terms_.push_back(Term{e, std::move(c)});
  out.canonicalize();
  return out;
}

MultiPoly operator*(const MultiPoly& l, const MultiPoly& r) {
  l.check_field(r);
  if (l.is_zero() || r.is_zero()) return MultiPoly(l.field_);
  if (r.is_constant()) return MultiPoly(l) *= r.terms_.front().coeff;
  if (l.is_constant()) return MultiPoly(r) *= l.terms_.front().coeff;
  return MultiPoly::sum_of_products(l.field_, {{&l, &r}});
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result = constant(Scalar(1), field_);
  MultiPoly base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(const Var& v) const {
  MultiPoly out(field_);
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return out;
  const auto k = static_cast<std::size_t>(it - vars_.begin());
  out.vars_ = vars_;
  for (const auto& t : terms_) {
    if (t.exps[k] == 0) continue;
    Term d = t;
    d.coeff *= Scalar(static_cast<long>(t.exps[k]));
    d.exps[k] -= 1;
    out.terms_.push_back(std::move(d));
  }
  out.canonicalize();
  return out;
}

Scalar MultiPoly::evaluate(const Point& point) const {
  std::vector<const Scalar*> values(vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = point.find(vars_[k]);
    if (it == point.end())
      throw Error(Errc::unbound_variable, "no value for variable '" + vars_[k].name() + "'");
    values[k] = &it->second;
  }
  Scalar sum;
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (t.exps[k] != 0) v *= boolelim::pow(*values[k], t.exps[k]);
    sum += v;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Substitution

MultiPoly substitute(const MultiPoly& p, const Point& point) {
  const auto& vars = p.vars();
  std::vector<int> bound(vars.size(), -1);
  std::vector<const Scalar*> values;
  std::vector<Var> rest;
  std::vector<std::size_t> rest_cols;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    auto it = point.find(vars[k]);
    if (it != point.end()) {
      if (p.field() == ScalarField::rational && !it->second.is_real())
        throw Error(Errc::field_mismatch,
                    "non-real value for '" + vars[k].name() + "' in a rational polynomial");
      bound[k] = static_cast<int>(values.size());
      values.push_back(&it->second);
    } else {
      rest.push_back(vars[k]);
      rest_cols.push_back(k);
    }
  }
  if (values.empty()) return p;

  // Powers are cached per bound variable.
  std::vector<std::vector<Scalar>> powers(values.size());
  auto power = [&](std::size_t slot, unsigned e) -> const Scalar& {
    auto& cache = powers[slot];
    if (cache.empty()) cache.push_back(Scalar(1));
    while (cache.size() <= e) cache.push_back(cache.back() * *values[slot]);
    return cache[e];
  };

  std::unordered_map<Exponents, Scalar, ExponentsHash> acc;
  for (const auto& t : p.terms()) {
    Scalar c = t.coeff;
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (bound[k] >= 0 && t.exps[k] != 0) c *= power(static_cast<std::size_t>(bound[k]), t.exps[k]);
    if (c.is_zero()) continue;
    Exponents e(rest.size());
    for (std::size_t k = 0; k < rest.size(); ++k) e[k] = t.exps[rest_cols[k]];
    auto [it, inserted] = acc.try_emplace(std::move(e), c);
    if (!inserted) it->second += c;
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc) terms.push_back(Term{e, std::move(c)});
  return MultiPoly::from_terms(p.field(), std::move(rest), std::move(terms));
}

MultiPoly substitute(const MultiPoly& p, const Bindings& bindings) {
  for (const auto& [v, q] : bindings)
    if (q.field() != p.field())
      throw Error(Errc::field_mismatch, "binding for '" + v.name() + "' has a different field");

  const auto& vars = p.vars();
  std::vector<const MultiPoly*> image(vars.size(), nullptr);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    auto it = bindings.find(vars[k]);
    if (it != bindings.end()) image[k] = &it->second;
  }
  std::vector<std::vector<MultiPoly>> cache(vars.size());
  auto power = [&](std::size_t k, unsigned e) -> const MultiPoly& {
    auto& c = cache[k];
    const MultiPoly base = image[k] ? *image[k] : MultiPoly::variable(vars[k], p.field());
    if (c.empty()) c.push_back(MultiPoly::constant(Scalar(1), p.field()));
    while (c.size() <= e) c.push_back(c.back() * base);
    return c[e];
  };

  std::vector<MultiPoly> parts;
  parts.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    MultiPoly term = MultiPoly::constant(t.coeff, p.field());
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (t.exps[k] != 0) term *= power(k, t.exps[k]);
    parts.push_back(std::move(term));
  }
  // Pairwise summation keeps the merge cost near-linear in the output size.
  if (parts.empty()) return MultiPoly(p.field());
  while (parts.size() > 1) {
    std::size_t w = 0;
    for (std::size_t k = 0; k + 1 < parts.size(); k += 2) parts[w++] = parts[k] + parts[k + 1];
    if (parts.size() % 2 == 1) parts[w++] = std::move(parts.back());
    parts.resize(w);
  }
  return std::move(parts.front());
}

// ---------------------------------------------------------------------------
// Univariate views

MultiPoly UniView::reassemble() const {
  if (coeffs.empty()) return MultiPoly();
  const ScalarField field = coeffs.front().field();
  MultiPoly out(field);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    out += coeffs[j] * MultiPoly::monomial(Scalar(1), {{var, static_cast<unsigned>(j)}}, field);
  return out;
}

UniView as_univariate(const MultiPoly& p, const Var& v) {
  UniView view{v, {}};
  if (p.is_zero()) return view;
  const auto& vars = p.vars();
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v) {
    view.coeffs.push_back(p);
    return view;
  }
  const auto col = static_cast<std::size_t>(it - vars.begin());
  const unsigned deg = *p.degree_in(v);
  std::vector<std::vector<Term>> buckets(deg + 1);
  for (const auto& t : p.terms()) {
    Exponents e = t.exps;
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(col));
    buckets[t.exps[col]].push_back(Term{std::move(e), t.coeff});
  }
  std::vector<Var> rest = vars;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(col));
  for (auto& bucket : buckets)
    view.coeffs.push_back(MultiPoly::from_terms(p.field(), rest, std::move(bucket)));
  return view;
}

Degree degree_in(const MultiPoly& p, const Var& v) { return p.degree_in(v); }

std::vector<Var> variables_outside(const MultiPoly& p, const std::vector<Var>& allowed) {
  std::vector<Var> out;
  for (const auto& v : p.vars())
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string monomial_text(const std::vector<Var>& vars, const Exponents& e, bool latex) {
  std::string s;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += latex ? " " : "*";
    s += vars[k].name();
    if (e[k] > 1) s += latex ? "^{" + std::to_string(e[k]) + "}" : "^" + std::to_string(e[k]);
  }
  return s;
}

std::string rational_latex(const Rational& q) {
  if (q.is_integer()) return q.str();
  return "\\frac{" + q.numerator().get_str() + "}{" + q.denominator().get_str() + "}";
}

// Sign and unsigned coefficient text; the magnitude is empty for a unit
// coefficient attached to a monomial.
std::pair<bool, std::string> coefficient_text(const Scalar& c, bool has_monomial, bool latex) {
  auto real_text = [&](const Rational& q) { return latex ? rational_latex(q) : q.str(); };
  const char* mul = latex ? " " : "*";
  const char* unit = latex ? "i" : "I";
  if (c.is_real()) {
    const bool negative = c.re().sign() < 0;
    const Rational mag = c.re().abs();
    if (has_monomial && mag.is_one()) return {negative, ""};
    return {negative, real_text(mag) + (has_monomial ? mul : "")};
  }
  if (c.re().is_zero()) {
    const bool negative = c.im().sign() < 0;
    const Rational mag = c.im().abs();
    std::string s = mag.is_one() ? std::string(unit) : real_text(mag) + mul + unit;
    return {negative, has_monomial ? s + mul : s};
  }
  std::string s = (latex ? "\\left(" : "(") + real_text(c.re()) +
                  (c.im().sign() < 0 ? " - " : " + ") +
                  (c.im().abs().is_one() ? std::string(unit) : real_text(c.im().abs()) + mul + unit) +
                  (latex ? "\\right)" : ")");
  return {false, has_monomial ? s + mul : s};
}

std::string render(const MultiPoly& p, bool latex) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const std::string mono = monomial_text(p.vars(), t.exps, latex);
    auto [negative, coeff] = coefficient_text(t.coeff, !mono.empty(), latex);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff + mono;
    first = false;
  }
  return out;
}

}  // namespace

std::string MultiPoly::str() const { return render(*this, false); }
std::string MultiPoly::latex() const { return render(*this, true); }

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

}  // namespace boolelim
