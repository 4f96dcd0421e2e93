#include <random>

#include <benchmark/benchmark.h>

#include "heyting/contextuality.hpp"
#include "heyting/quantum.hpp"

using namespace heyting;

namespace {

std::vector<DensityMatrix> diagonal_states(std::size_t n, std::size_t count) {
  std::mt19937_64 rng(12345);
  std::vector<DensityMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(DensityMatrix::diagonal(ginibre_diagonal(n, 8, rng)));
  return out;
}

const std::vector<DensityMatrix>& states900() {
  static const auto s = diagonal_states(900, 4096);
  return s;
}

void BM_tau_batch(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(tau_batch(75, states900()));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(states900().size()));
}

void BM_tau_batch_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(tau_batch_serial(75, states900()));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(states900().size()));
}

SearchConfig config(int threads) {
  SearchConfig c;
  c.seed = 7;
  c.threads = threads;
  return c;
}

// range(0): modulus, range(1): thread count, 0 means the OpenMP default.
void BM_search(benchmark::State& st) {
  const auto cfg = config(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(search_violation(static_cast<std::uint64_t>(st.range(0)), cfg));
}

void BM_search_reference(benchmark::State& st) {
  const auto cfg = config(1);
  for (auto _ : st) {
    benchmark::DoNotOptimize(search_violation_reference(static_cast<std::uint64_t>(st.range(0)), cfg));
  }
}

}  // namespace

BENCHMARK(BM_tau_batch)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_tau_batch_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_search)->Args({36, 1})->Args({60, 1})->Args({360, 1})->Args({360, 0})->Args({900, 1})->Args({900, 0})
    ->Unit(benchmark::kMillisecond)->UseRealTime();
// Brute force over every grid point; n = 360 already takes minutes.
BENCHMARK(BM_search_reference)->Arg(36)->Arg(60)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  states900();  // keep state generation out of the first timing
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
