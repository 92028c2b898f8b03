#pragma once

// Reference implementations used as test oracles. None of them calls into
// the code under test beyond the value types: brute-force searches, a
// grid-plus-bound real root scanner, and truth tables over opaque atoms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "boolelim/exactnum.hpp"
#include "boolelim/formula.hpp"

namespace boolelim::oracle {

/// Table of n <= limit that are sums of three integer squares, by
/// enumerating every triple with a >= b >= c >= 0.
inline std::vector<bool> three_square_table(long limit) {
  std::vector<bool> ok(static_cast<std::size_t>(limit) + 1, false);
  for (long a = 0; a * a <= limit; ++a)
    for (long b = 0; b <= a && a * a + b * b <= limit; ++b)
      for (long c = 0; c <= b && a * a + b * b + c * c <= limit; ++c)
        ok[static_cast<std::size_t>(a * a + b * b + c * c)] = true;
  return ok;
}

/// Whether m/n (m, n > 0) is a sum of three squares of rationals with
/// denominator n: searches integer triples with a^2 + b^2 + c^2 = m*n.
inline bool rational_three_squares_brute(long m, long n) {
  const long target = m * n;
  for (long a = 0; a * a <= target; ++a)
    for (long b = 0; b <= a && a * a + b * b <= target; ++b) {
      const long rest = target - a * a - b * b;
      const long c = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rest))));
      for (long cc = std::max(0L, c - 1); cc <= c + 1; ++cc)
        if (cc * cc == rest) return true;
    }
  return false;
}

/// Rational polynomial, coefficients from the constant term upwards.
using Coeffs = std::vector<mpq_class>;

inline Coeffs multiply(const Coeffs& p, const Coeffs& q) {
  Coeffs out(p.size() + q.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

/// Distinct real roots of p (nonzero, degree >= 1) found by scanning the
/// grid {k / scale} inside a Fujiwara root bound: exact zeros at grid points
/// plus sign changes between consecutive nonzero grid values. Exact whenever
/// every real root is either a grid point or alone, with odd multiplicity,
/// in its grid cell.
inline unsigned scan_real_roots(const Coeffs& p, long scale) {
  const std::size_t n = p.size() - 1;
  // Fujiwara: every root satisfies |x| <= 2 max_k |a_{n-k}/a_n|^{1/k}
  // (with a_0 halved). Doubles only size the window; a margin covers rounding.
  double bound = 0;
  const double lead = std::fabs(p[n].get_d());
  for (std::size_t k = 1; k <= n; ++k) {
    double c = std::fabs(p[n - k].get_d()) / lead;
    if (k == n) c /= 2;
    bound = std::max(bound, 2 * std::pow(c, 1.0 / static_cast<double>(k)));
  }
  const long window = static_cast<long>(std::ceil(bound)) + 1;

  // Integer form P(k) = scale^n * p(k / scale) after clearing denominators.
  mpz_class den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> ints(n + 1);
  mpz_class s_pow = 1;
  for (std::size_t i = n + 1; i-- > 0;) {
    mpq_class scaled = p[i] * den;
    ints[i] = scaled.get_num() * s_pow;  // coefficient of k^i times scale^(n-i)
    s_pow *= scale;
  }
  auto sign_at = [&](long k) {
    mpz_class acc = 0;
    const mpz_class kk = k;
    for (std::size_t i = n + 1; i-- > 0;) acc = acc * kk + ints[i];
    return sgn(acc);
  };

  unsigned roots = 0;
  int last = 0;
  for (long k = -window * scale; k <= window * scale; ++k) {
    const int s = sign_at(k);
    if (s == 0) {
      ++roots;
      last = 0;  // the crossing, if any, is this root
      continue;
    }
    if (last != 0 && s != last) ++roots;
    last = s;
  }
  return roots;
}

/// Random polynomial of degree in [1, max_degree] assembled from factors
/// whose real roots the grid scanner at scale 60 resolves exactly: rational
/// roots with denominator at most 3 (repeats allowed), at most one copy each
/// of x^2 - c (c in {2,3,5,6,7}) and x^3 -+ c (c in {2,3,4}), and root-free
/// x^2 + c. Returns the polynomial and its number of distinct real roots.
struct FactoredSample {
  Coeffs coeffs;
  unsigned distinct_real_roots = 0;
};

inline FactoredSample random_factored_polynomial(std::mt19937_64& gen, std::size_t max_degree) {
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); };
  FactoredSample out;
  out.coeffs = {mpq_class(uniform(1, 9) * (uniform(0, 1) ? 1 : -1), uniform(1, 5))};
  out.coeffs.front().canonicalize();
  std::set<mpq_class> rational_roots;
  std::vector<long> square_pool{2, 3, 5, 6, 7};
  std::vector<long> cube_pool{2, 3, 4, -2, -3, -4};
  std::size_t degree = 0;
  const auto target = static_cast<std::size_t>(uniform(1, static_cast<long>(max_degree)));
  while (degree < target) {
    const long kind = uniform(0, 9);
    const std::size_t room = target - degree;
    if (kind <= 4 || room == 1) {
      mpq_class r(uniform(-8, 8), uniform(1, 3));
      r.canonicalize();
      if (!rational_roots.empty() && uniform(0, 2) == 0) r = *rational_roots.begin();  // repeat
      rational_roots.insert(r);
      out.coeffs = multiply(out.coeffs, {-r, mpq_class(1)});
      degree += 1;
    } else if (kind <= 6 && !square_pool.empty()) {
      const auto idx = static_cast<std::size_t>(uniform(0, static_cast<long>(square_pool.size()) - 1));
      out.coeffs = multiply(out.coeffs, {mpq_class(-square_pool[idx]), 0, 1});
      square_pool.erase(square_pool.begin() + static_cast<long>(idx));
      out.distinct_real_roots += 2;
      degree += 2;
    } else if (kind <= 7 && room >= 3 && !cube_pool.empty()) {
      const auto idx = static_cast<std::size_t>(uniform(0, static_cast<long>(cube_pool.size()) - 1));
      const long c = cube_pool[idx];
      out.coeffs = multiply(out.coeffs, {mpq_class(-c), 0, 0, 1});
      // x^3 - c and x^3 + c have real roots of the same magnitude; use one.
      cube_pool.erase(std::remove_if(cube_pool.begin(), cube_pool.end(),
                                     [&](long v) { return v == c || v == -c; }),
                      cube_pool.end());
      out.distinct_real_roots += 1;
      degree += 3;
    } else {
      out.coeffs = multiply(out.coeffs, {mpq_class(uniform(1, 9), uniform(1, 3)), 0, 1});
      degree += 2;
    }
  }
  out.distinct_real_roots += static_cast<unsigned>(rational_roots.size());
  for (auto& c : out.coeffs) c.canonicalize();
  return out;
}

/// Distinct atom terms of a formula over C, in first-occurrence order.
/// t = 0 and t != 0 share the proposition "t vanishes".
inline void collect_terms(const Formula& phi, std::vector<MultiPoly>& out) {
  if (phi.kind() == Formula::Kind::atom) {
    if (std::find(out.begin(), out.end(), phi.atom().term) == out.end()) out.push_back(phi.atom().term);
    return;
  }
  for (const auto& c : phi.children()) collect_terms(c, out);
}

/// Truth value of an atom when "term i vanishes" is bit i of `mask`.
inline bool eval_propositional(const Atom& atom, const std::vector<MultiPoly>& terms, std::uint64_t mask) {
  const auto it = std::find(terms.begin(), terms.end(), atom.term);
  const bool vanishes = (mask >> static_cast<std::size_t>(it - terms.begin())) & 1U;
  return atom.rel == Rel::eq ? vanishes : !vanishes;
}

/// Evaluates phi (atoms t = 0 and t != 0 only) under the propositional
/// assignment `mask`, treating distinct terms as independent.
inline bool eval_propositional(const Formula& phi, const std::vector<MultiPoly>& terms, std::uint64_t mask) {
  using K = Formula::Kind;
  switch (phi.kind()) {
    case K::atom: return eval_propositional(phi.atom(), terms, mask);
    case K::negation: return !eval_propositional(phi.children().front(), terms, mask);
    case K::conjunction:
      return std::all_of(phi.children().begin(), phi.children().end(),
                         [&](const Formula& c) { return eval_propositional(c, terms, mask); });
    case K::disjunction:
      return std::any_of(phi.children().begin(), phi.children().end(),
                         [&](const Formula& c) { return eval_propositional(c, terms, mask); });
    case K::truth: return true;
    case K::falsity: return false;
  }
  return false;
}

/// The same for a clause matrix.
inline bool eval_propositional(const ClauseMatrix& m, const std::vector<MultiPoly>& terms, std::uint64_t mask) {
  auto clause_value = [&](const Clause& c) {
    auto lit = [&](const Atom& a) { return eval_propositional(a, terms, mask); };
    return m.kind == ClauseKind::dnf ? std::all_of(c.begin(), c.end(), lit) : std::any_of(c.begin(), c.end(), lit);
  };
  return m.kind == ClauseKind::dnf ? std::any_of(m.clauses.begin(), m.clauses.end(), clause_value)
                                   : std::all_of(m.clauses.begin(), m.clauses.end(), clause_value);
}

}  // namespace boolelim::oracle
