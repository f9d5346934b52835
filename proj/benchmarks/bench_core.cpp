#include <benchmark/benchmark.h>

#include "dercat/adic.hpp"
#include "dercat/corpus.hpp"

using namespace dercat;

namespace {

QQPolyEngine engine_xy() {
  return QQPolyEngine{QQPolyRing{RatField{}, {"x", "y"}, MonomialOrder{OrderKind::grevlex, 0}, {}}};
}

Mat<Int> random_int_matrix(SeededRng& rng, int n) {
  return Mat<Int>::build(
      n, n, [&](int, int) { return Int(rng.range(-9, 9)); }, [](const Int& v) { return v == 0; });
}

void BM_SmithNormalForm(benchmark::State& state) {
  SeededRng rng(7);
  int n = static_cast<int>(state.range(0));
  auto a = random_int_matrix(rng, n);
  IntEuclid eu;
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(eu, a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(6)->Arg(8);

void BM_GroebnerBasis(benchmark::State& state) {
  auto eng = engine_xy();
  auto& R = eng.ring;
  auto x = R.var(0);
  auto y = R.var(1);
  // (x^3 - y, x*y^2 - x - 1): a small non-monomial pair
  auto f = R.sub(R.var(0, 3), y);
  auto g = R.sub(R.sub(R.mul(x, R.var(1, 2)), x), R.one());
  for (auto _ : state) benchmark::DoNotOptimize(ideal_groebner(make_ideal(R, {f, g})));
}
BENCHMARK(BM_GroebnerBasis);

void BM_KoszulHomology(benchmark::State& state) {
  auto eng = engine_xy();
  auto& R = eng.ring;
  auto k = koszul_complex(eng, {R.var(0, 2), R.mul(R.var(0), R.var(1))});
  for (auto _ : state) {
    for (int i = 0; i <= 2; ++i) benchmark::DoNotOptimize(homology_at(k, i));
  }
}
BENCHMARK(BM_KoszulHomology);

void BM_TorPair(benchmark::State& state) {
  auto eng = engine_xy();
  auto& R = eng.ring;
  auto m = cyclic_module(eng, make_ideal(R, {R.mul(R.var(0), R.var(1))}));
  auto n = cyclic_module(eng, make_ideal(R, {R.var(0, 2), R.var(1, 2)}));
  for (auto _ : state) benchmark::DoNotOptimize(derived_tensor(eng, m, n, DegreeWindow{0, 2}));
}
BENCHMARK(BM_TorPair);

void BM_SuppMembership(benchmark::State& state) {
  auto eng = engine_xy();
  auto& R = eng.ring;
  auto p = certify_prime(make_ideal(R, {R.var(0), R.var(1)}));
  auto m = cyclic_module(eng, make_ideal(R, {R.mul(R.var(0), R.var(1))}));
  for (auto _ : state) benchmark::DoNotOptimize(supp_membership(eng, p, m));
}
BENCHMARK(BM_SuppMembership);

void BM_DvrCalculus(benchmark::State& state) {
  validate_dvr_tables();  // pay validation outside the loop
  auto a = dvr_sum(dvr_e(), dvr_t(3, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvr_rhom(dvr_tensor(a, a), a));
    benchmark::DoNotOptimize(dvr_lambda(dvr_gamma(a)));
  }
}
BENCHMARK(BM_DvrCalculus);

void BM_LocalCohomologyFiber(benchmark::State& state) {
  auto eng = engine_xy();
  auto& R = eng.ring;
  auto m = certify_prime(make_ideal(R, {R.var(0), R.var(1)}));
  auto a = make_ideal(R, {R.var(0), R.var(1)});
  auto one = one_term_complex(eng, 0, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(local_cohomology_fiber(eng, m, a, one, DegreeWindow{-3, 1}));
}
BENCHMARK(BM_LocalCohomologyFiber);

}  // namespace

BENCHMARK_MAIN();
