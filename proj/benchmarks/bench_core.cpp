#include <benchmark/benchmark.h>

#include "lielab/chevalley.hpp"
#include "lielab/families.hpp"
#include "lielab/matrix.hpp"
#include "lielab/repmod.hpp"

using namespace lielab;

namespace {

using K = ExtensionField;

void BM_Jacobi(benchmark::State& state) {
  const auto cb = structure_constants(RootSystem(Family::C, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(verify_jacobi(cb->table()));
}
BENCHMARK(BM_Jacobi)->Arg(2)->Arg(3)->Arg(4);

void BM_PbwPower(benchmark::State& state) {
  Workspace ws(Family::A, 2, K::prime(7));
  const auto a = ws.roots().diff(1, 3);
  const auto u = ws.x(a) + ws.x(-a);
  for (auto _ : state) benchmark::DoNotOptimize(ws.U().power(u, static_cast<std::uint32_t>(state.range(0))));
}
BENCHMARK(BM_PbwPower)->Arg(3)->Arg(5)->Arg(7);

void BM_DenseRank(benchmark::State& state) {
  const K f = K::prime(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix<K> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, f.from_int(static_cast<long long>((i * 31 + j * 17 + i * j) % 7)));
  for (auto _ : state) benchmark::DoNotOptimize(dense_rank(m));
}
BENCHMARK(BM_DenseRank)->Arg(49)->Arg(343);

void BM_BabyVerma(benchmark::State& state) {
  const K f = K::artin_schreier(7, 1);
  const auto chi = Character<K>::parse(structure_constants(RootSystem(Family::A, 2)), f, "h1=1,h2=1");
  const auto w = compatible_weights(chi).front();
  for (auto _ : state) benchmark::DoNotOptimize(build_baby_verma(chi, w));
}
BENCHMARK(BM_BabyVerma);

}  // namespace

BENCHMARK_MAIN();
