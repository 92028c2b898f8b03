#include "boolelim/univariate.hpp"

#include <algorithm>

#include "boolelim/error.hpp"

namespace boolelim {

UniPoly::UniPoly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::from_view(const UniView& view) {
  std::vector<Scalar> c;
  c.reserve(view.coeffs.size());
  for (const auto& q : view.coeffs) c.push_back(q.constant_value());
  return UniPoly(std::move(c));
}

UniPoly UniPoly::from_poly(const MultiPoly& p, const Var& v) {
  auto extra = variables_outside(p, {v});
  if (!extra.empty())
    throw Error(Errc::unexpected_variables,
                "'" + extra.front().name() + "' remains in univariate polynomial " + p.str());
  return from_view(as_univariate(p, v));
}

bool UniPoly::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_real(); });
}

Degree UniPoly::degree() const {
  if (coeffs_.empty()) return neg_inf;
  return static_cast<unsigned>(coeffs_.size() - 1);
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  UniPoly out = *this;
  const Scalar inv = leading().inverse();
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

UniPoly UniPoly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d.push_back(coeffs_[j] * Scalar(static_cast<long>(j)));
  return UniPoly(std::move(d));
}

Scalar UniPoly::evaluate(const Scalar& x) const {
  Scalar acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) coeffs_[j] += rhs.coeffs_[j];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) { return *this += -rhs; }

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

UniPoly operator*(const UniPoly& l, const UniPoly& r) {
  if (l.is_zero() || r.is_zero()) return {};
  std::vector<Scalar> c(l.coeffs_.size() + r.coeffs_.size() - 1);
  for (std::size_t i = 0; i < l.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j) c[i + j] += l.coeffs_[i] * r.coeffs_[j];
  return UniPoly(std::move(c));
}

MultiPoly UniPoly::to_poly(const Var& v, ScalarField field) const {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    if (!coeffs_[j].is_zero()) terms.push_back(Term{{static_cast<std::uint32_t>(j)}, coeffs_[j]});
  return MultiPoly::from_terms(field, {v}, std::move(terms));
}

std::string UniPoly::str(const std::string& var) const {
  return to_poly(Var(var), is_real() ? ScalarField::rational : ScalarField::gaussian).str();
}

DivMod divmod(const UniPoly& dividend, const UniPoly& divisor) {
  if (divisor.is_zero()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  std::vector<Scalar> rem = dividend.coeffs();
  const std::size_t dn = divisor.coeffs().size();
  if (rem.size() < dn) return {UniPoly(), dividend};
  std::vector<Scalar> quot(rem.size() - dn + 1);
  const Scalar inv = divisor.leading().inverse();
  for (std::size_t k = rem.size(); k-- >= dn;) {
    if (rem[k].is_zero()) continue;
    const Scalar q = rem[k] * inv;
    const std::size_t shift = k - (dn - 1);
    quot[shift] = q;
    for (std::size_t j = 0; j < dn; ++j) rem[shift + j] -= q * divisor.coeffs()[j];
  }
  rem.resize(dn - 1);
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd_univariate(const UniPoly& p, const UniPoly& q) {
  UniPoly a = p.monic();
  UniPoly b = q.monic();
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).remainder.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

namespace {

ScalarField field_of(const UniView& v) {
  return v.coeffs.empty() ? ScalarField::rational : v.coeffs.front().field();
}

UniView to_view(const UniPoly& p, const Var& v, ScalarField field) {
  UniView out{v, {}};
  for (const auto& c : p.coeffs()) out.coeffs.push_back(MultiPoly::constant(c, field));
  return out;
}

}  // namespace

UniView gcd_univariate(const UniView& p, const UniView& q) {
  ScalarField field = p.coeffs.empty() ? field_of(q) : field_of(p);
  if (!p.coeffs.empty() && !q.coeffs.empty() && field_of(p) != field_of(q))
    throw Error(Errc::field_mismatch, "gcd of polynomials over different fields");
  return to_view(gcd_univariate(UniPoly::from_view(p), UniPoly::from_view(q)), p.var, field);
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw Error(Errc::zero_polynomial, "squarefree part of the zero polynomial");
  const UniPoly g = gcd_univariate(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

UniView squarefree_part(const UniView& p) {
  return to_view(squarefree_part(UniPoly::from_view(p)), p.var, field_of(p));
}

SturmChain sturm_chain(const UniPoly& p) {
  SturmChain chain;
  if (p.is_zero()) return chain;
  chain.polys.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.polys.push_back(d);
  for (;;) {
    const auto& prev = chain.polys[chain.polys.size() - 2];
    const auto& cur = chain.polys.back();
    UniPoly r = -divmod(prev, cur).remainder;
    if (r.is_zero()) break;
    chain.polys.push_back(std::move(r));
  }
  return chain;
}

namespace {

unsigned sign_variations(const std::vector<int>& signs) {
  unsigned v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

RealRootCount count_real_roots(const UniPoly& p) {
  if (p.is_zero()) return RealRootCount::infinite();
  if (!p.is_real()) throw Error(Errc::field_mismatch, "Sturm counting needs real coefficients");
  const SturmChain chain = sturm_chain(p);
  std::vector<int> at_pos;
  std::vector<int> at_neg;
  for (const auto& q : chain.polys) {
    const int s = q.leading().re().sign();
    at_pos.push_back(s);
    at_neg.push_back((*q.degree() % 2 == 0) ? s : -s);
  }
  return RealRootCount::finite(sign_variations(at_neg) - sign_variations(at_pos));
}

RealRootCount count_real_roots(const UniView& p) { return count_real_roots(UniPoly::from_view(p)); }

}  // namespace boolelim
