#include <benchmark/benchmark.h>

#include "boolelim/decide.hpp"
#include "boolelim/random.hpp"
#include "boolelim/univariate.hpp"

namespace {

using namespace boolelim;

constexpr Shape kShapes[] = {Shape::EA_C, Shape::AE_C, Shape::E_R, Shape::Ed_R,
                             Shape::AE_R, Shape::E3d_Q, Shape::AE3_Q};

RandomFormulaParams params(Shape shape, std::size_t d) {
  RandomFormulaParams p = random_params_for(shape);
  p.d = d;
  p.max_e = 4;
  p.max_f = 4;
  return p;
}

// Rational arithmetic on both sides of the inline/GMP boundary.
static void BM_RationalMulAdd(benchmark::State& state) {
  const Rational a(Integer(state.range(0)), Integer(7)), b(Integer(3), Integer(state.range(0) + 1));
  Rational acc;
  for (auto _ : state) {
    acc = a * b + acc;
    benchmark::DoNotOptimize(acc);
    if (!acc.is_zero() && acc.numerator() > Integer(1) << 200) acc = Rational();
  }
}
BENCHMARK(BM_RationalMulAdd)->Arg(5)->Arg(1L << 40);

static void BM_ThreeSquaresPair(benchmark::State& state) {
  std::int64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(three_squares_pair(Integer(static_cast<long>(n))));
    n = n % state.range(0) + 1;
  }
}
BENCHMARK(BM_ThreeSquaresPair)->Arg(10000);

static void BM_CountRealRoots(benchmark::State& state) {
  // (r^2 - 2)^k - 1 has 4 distinct real roots for every k >= 2.
  MultiPoly base = parse_polynomial("r^2 - 2");
  MultiPoly p = base.pow(static_cast<unsigned>(state.range(0))) - parse_polynomial("1");
  const UniPoly u = UniPoly::from_poly(p, Var("r"));
  for (auto _ : state) benchmark::DoNotOptimize(count_real_roots(u));
}
BENCHMARK(BM_CountRealRoots)->DenseRange(2, 8, 2);

static void BM_Eliminate(benchmark::State& state) {
  const Shape shape = kShapes[state.range(0)];
  const RandomFormulaParams p = params(shape, static_cast<std::size_t>(state.range(1)));
  const Formula phi = random_formula(1, p);
  for (auto _ : state) benchmark::DoNotOptimize(eliminate(phi, p.field, shape));
  state.SetLabel(std::string(to_string(shape)));
}
BENCHMARK(BM_Eliminate)->ArgsProduct({benchmark::CreateDenseRange(0, 6, 1), {2, 6}})->Unit(benchmark::kMicrosecond);

static void BM_Decide(benchmark::State& state) {
  const Shape shape = kShapes[state.range(0)];
  const RandomFormulaParams p = params(shape, static_cast<std::size_t>(state.range(1)));
  const Formula phi = random_formula(1, p);
  const QuantifiedEquation qe = eliminate(phi, p.field, shape);
  Rng rng(5);
  const Point x = random_point(rng, free_variables(phi), p.field, 2);
  for (auto _ : state) benchmark::DoNotOptimize(decide(qe, x));
  state.SetLabel(std::string(to_string(shape)));
}
BENCHMARK(BM_Decide)->ArgsProduct({benchmark::CreateDenseRange(0, 6, 1), {2, 6}})->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
