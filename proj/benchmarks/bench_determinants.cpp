#include <benchmark/benchmark.h>

#include "jacobidet/characters.hpp"
#include "jacobidet/detengine.hpp"
#include "jacobidet/theorems.hpp"

using namespace jacobidet;

namespace {

void BM_JacobiSum(benchmark::State& state) {
  const auto field = FiniteField::build(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_sum(field, 1, 2));
}
BENCHMARK(BM_JacobiSum)->Arg(13)->Arg(49)->Arg(256)->Arg(1024);

void BM_BuildJq1(benchmark::State& state) {
  const auto field = FiniteField::build(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_Jqk(field, 1));
}
BENCHMARK(BM_BuildJq1)->Arg(13)->Arg(27)->Arg(49);

template <DetMethod M>
void BM_DetJq1(benchmark::State& state) {
  const auto a = build_Jqk(FiniteField::build(static_cast<std::uint64_t>(state.range(0))), 1);
  for (auto _ : state) {
    if constexpr (M == DetMethod::bareiss) {
      benchmark::DoNotOptimize(det_bareiss(a));
    } else if constexpr (M == DetMethod::crt) {
      benchmark::DoNotOptimize(det_crt_integer(a));
    } else {
      benchmark::DoNotOptimize(det_float_check(a));
    }
  }
}
BENCHMARK(BM_DetJq1<DetMethod::bareiss>)->Arg(9)->Arg(17)->Arg(27)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetJq1<DetMethod::crt>)->Arg(9)->Arg(17)->Arg(27)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetJq1<DetMethod::float_check>)->Arg(9)->Arg(17)->Arg(27)->Unit(benchmark::kMillisecond);

void BM_BetaDeterminant(benchmark::State& state) {
  const auto b = beta_matrix(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(det_rational(b));
}
BENCHMARK(BM_BetaDeterminant)->Arg(8)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
