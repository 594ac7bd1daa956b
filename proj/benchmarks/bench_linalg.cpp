#include <benchmark/benchmark.h>

#include "tiqs/evolution.hpp"
#include "tiqs/hamiltonians.hpp"
#include "tiqs/linalg.hpp"

using namespace tiqs;

static void BM_HermitianExpm(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  MatC A = MatC::Random(n, n);
  MatC H = A + A.adjoint();
  for (auto _ : st) benchmark::DoNotOptimize(hermitian_expm(H, 0.1));
}
BENCHMARK(BM_HermitianExpm)->Arg(64)->Arg(128)->Arg(256);

static void BM_KrylovStep(benchmark::State& st) {
  CrystalConfig c;
  c.N = 2;
  c.omega_z = two_pi * 1e6;
  c.omega_x = two_pi * 5e6;
  NormalModeData m = transverse_modes(c);
  DriveSpec d;
  d.Omega_L = two_pi * 0.9e6;
  d.mu = c.omega_x - two_pi * 500e3;
  d.set_phases(pi / 3);
  d.h0 = two_pi * 2.5e3;
  d.Delta = two_pi * 10e3;
  d.xi = 0.09;
  HamiltonianOptions o;
  const int cut = static_cast<int>(st.range(0));
  o.n_max = {cut, cut};
  OperatorExpr H = build_beatnote_hamiltonian(m, d, o);
  VecC psi = VecC::Random(H.dim());
  psi.normalize();
  SpC h = H.evaluate(1e-5);
  for (auto _ : st) benchmark::DoNotOptimize(expm_krylov(h, psi, 1e-7));
}
BENCHMARK(BM_KrylovStep)->Arg(4)->Arg(7)->Arg(12);

static void BM_Propagate(benchmark::State& st) {
  CrystalConfig c;
  c.N = 2;
  c.omega_z = two_pi * 1e6;
  c.omega_x = two_pi * 5e6;
  NormalModeData m = transverse_modes(c);
  DriveSpec d;
  d.Omega_L = two_pi * 0.9e6;
  d.mu = c.omega_x - two_pi * 500e3;
  d.set_phases(pi / 3);
  d.h0 = two_pi * 2.5e3;
  d.Delta = two_pi * 10e3;
  d.xi = 0.09;
  HamiltonianOptions o;
  o.n_max = {4, 4};
  OperatorExpr H = build_interaction_hamiltonian(m, d, o);
  VecC psi = VecC::Unit(H.dim(), 0);
  PropagateOptions po;
  po.store_states = false;
  for (auto _ : st) benchmark::DoNotOptimize(propagate(H, psi, {0.0, 20e-6}, po));
}
BENCHMARK(BM_Propagate)->Unit(benchmark::kMillisecond);
