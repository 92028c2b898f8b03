#pragma once

// Seeded generators for reproducible sampling. Distributions are written out
// here so that a seed gives the same stream with every standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "boolelim/formula.hpp"

namespace boolelim {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(double p);
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(items.size()) - 1))];
  }

  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(std::int64_t num_bound, std::int64_t den_bound);
  /// Like rational() but never zero.
  Rational nonzero_rational(std::int64_t num_bound, std::int64_t den_bound);

 private:
  std::mt19937_64 engine_;
};

/// A coordinate is a small integer in [-2, 2] with probability 0.6 (so that
/// atoms vanish often) and otherwise a random fraction; over C the imaginary
/// part is drawn the same way half of the time.
Scalar random_coordinate(Rng& rng, Field field, std::int64_t bound);
Point random_point(Rng& rng, const std::vector<Var>& vars, Field field, std::int64_t bound);

}  // namespace boolelim
