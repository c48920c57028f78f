// Serial reference against the OpenMP kernels: pair counting, full
// verification and exhaustive search with one or several workers.
#include <benchmark/benchmark.h>

#include "ipbd/coverage.hpp"
#include "ipbd/generate.hpp"
#include "ipbd/search.hpp"
#include "ipbd/verify.hpp"

namespace {

const ipbd::Design& plane() {
  static const ipbd::Design d = ipbd::projective_plane(31);  // 993 points, 993 blocks of 32
  return d;
}

void BM_count_pairs_serial(benchmark::State& state) {
  const auto& d = plane();
  for (auto _ : state) benchmark::DoNotOptimize(ipbd::count_pairs_serial(d.n_points, d.blocks));
}

void BM_count_pairs_parallel(benchmark::State& state) {
  const auto& d = plane();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ipbd::count_pairs_parallel(d.n_points, d.blocks, workers));
}

void BM_verify_serial(benchmark::State& state) {
  const auto& d = plane();
  for (auto _ : state) benchmark::DoNotOptimize(ipbd::verify_design_serial(d));
}

void BM_verify_parallel(benchmark::State& state) {
  const auto& d = plane();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ipbd::verify_design(d, workers));
}

// Nonexistence proof for IPBD((12;2), {3..12}).
void BM_search(benchmark::State& state) {
  auto p = ipbd::ipbd_problem(12, 2, ipbd::BlockSizeSet::parse("3..12"));
  p.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ipbd::search(p));
}

}  // namespace

BENCHMARK(BM_count_pairs_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_pairs_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
