#include <benchmark/benchmark.h>

#include "tiqs/couplings.hpp"
#include "tiqs/hamiltonians.hpp"
#include "tiqs/spectra_entropy.hpp"

using namespace tiqs;

static double eq13(int r, double l) { return jtilde_eq13(r, l); }

static void BM_GroundState(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  PauliSum H = heisenberg_pauli_sum(distance_couplings(N, eq13, 0.1));
  for (auto _ : st) benchmark::DoNotOptimize(ground_state(H));
}
BENCHMARK(BM_GroundState)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_EntropyProfile(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  GroundState g = ground_state(heisenberg_pauli_sum(nearest_neighbor_couplings(N, 1.0)));
  for (auto _ : st) benchmark::DoNotOptimize(entropy_profile(g.state, N));
}
BENCHMARK(BM_EntropyProfile)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
