#include "boolelim/random.hpp"

#include <limits>

namespace boolelim {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

bool Rng::chance(double p) {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

Rational Rng::rational(std::int64_t num_bound, std::int64_t den_bound) {
  const std::int64_t p = uniform(-num_bound, num_bound);
  const std::int64_t q = uniform(1, den_bound);
  return Rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
}

Rational Rng::nonzero_rational(std::int64_t num_bound, std::int64_t den_bound) {
  for (;;) {
    Rational r = rational(num_bound, den_bound);
    if (!r.is_zero()) return r;
  }
}

Scalar random_coordinate(Rng& rng, Field field, std::int64_t bound) {
  auto part = [&]() {
    if (rng.chance(0.6)) return Rational(static_cast<long>(rng.uniform(-2, 2)));
    return rng.rational(bound, bound);
  };
  Rational re = part();
  if (field == Field::C && rng.chance(0.5)) return {re, part()};
  return Scalar(re);
}

Point random_point(Rng& rng, const std::vector<Var>& vars, Field field, std::int64_t bound) {
  Point p;
  for (const auto& v : vars) p.emplace(v, random_coordinate(rng, field, bound));
  return p;
}

}  // namespace boolelim
