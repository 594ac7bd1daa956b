#include <benchmark/benchmark.h>

#include "tiqs/couplings.hpp"
#include "tiqs/ion_crystal.hpp"

using namespace tiqs;

static CrystalConfig chain(int N) {
  CrystalConfig c;
  c.N = N;
  c.omega_z = two_pi * 0.1e6;
  c.omega_x = two_pi * 5e6;
  return c;
}

static void BM_Equilibrium(benchmark::State& st) {
  CrystalConfig c = chain(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_equilibrium(c));
}
BENCHMARK(BM_Equilibrium)->Arg(10)->Arg(50)->Arg(100);

static void BM_NumericCouplings(benchmark::State& st) {
  NormalModeData m = transverse_modes(chain(static_cast<int>(st.range(0))));
  DriveSpec d;
  d.Omega_L = two_pi * 0.5e6;
  d.mu = m.omega_x + two_pi * 250e3;
  for (auto _ : st) benchmark::DoNotOptimize(coupling_matrix_numeric(m, d));
}
BENCHMARK(BM_NumericCouplings)->Arg(10)->Arg(50)->Arg(100);

static void BM_AnalyticCouplings(benchmark::State& st) {
  CouplingParams p = coupling_params_from(1.0, 0.1, 4.4e-6);
  for (auto _ : st)
    for (int r = 1; r <= 49; ++r) benchmark::DoNotOptimize(coupling_analytic(r, 50, p));
}
BENCHMARK(BM_AnalyticCouplings);
