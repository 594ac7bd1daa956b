// end-to-end checks, one PASS/FAIL line per criterion
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "tiqs/adiabatic.hpp"
#include "tiqs/couplings.hpp"
#include "tiqs/errors.hpp"
#include "tiqs/evolution.hpp"
#include "tiqs/fidelity.hpp"
#include "tiqs/field_theory.hpp"
#include "tiqs/hamiltonians.hpp"
#include "tiqs/ion_crystal.hpp"
#include "tiqs/linalg.hpp"
#include "tiqs/spectra_entropy.hpp"

using namespace tiqs;

namespace {

// tolerances
constexpr double kEchoXyzMax = 0.05;
constexpr double kEchoQimMin = 0.3;
constexpr double kChannelEps = 0.01;
constexpr double kRampSlow = 0.99;
constexpr double kRampGap = 0.05;
constexpr double kSpacing = 4.4e-6;
constexpr double kSpacingTol = 0.02;
constexpr double kAnalyticTol = 0.20;
constexpr double kDipolarTol = 0.15;
constexpr double kExact = 1e-12;
constexpr double kZetaTol = 1e-10;
constexpr double kCLo = 0.8, kCHi = 1.2;
constexpr double kJacobiAnger = 1e-10;
constexpr double kOracle = 1e-10;

int failures = 0;

void report(int id, const std::string& what, bool ok, double seconds) {
  std::printf("criterion %d %s: %s (%.1f s)\n", id, what.c_str(), ok ? "PASS" : "FAIL", seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void run(int id, const std::string& what, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("  error: %s\n", e.what());
  }
  report(id, what, ok, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

CrystalConfig two_ions() {
  CrystalConfig c;
  c.N = 2;
  c.omega_z = two_pi * 1e6;
  c.omega_x = two_pi * 5e6;
  return c;
}

bool echo_agreement() {
  CrystalConfig c = two_ions();
  EchoSetup s;
  s.modes = transverse_modes(c);
  DriveSpec& d = s.drive;
  d.Omega_L = two_pi * 0.9e6;
  d.mu = c.omega_x - two_pi * 500e3;
  d.set_phases(pi / 3);
  d.h0 = two_pi * 2.5e3;
  d.xi = 0.09;
  d.Delta = two_pi * 10e3;
  s.n_max = {7, 7};
  s.nbar = {0.05, 0.047};
  EchoSeries e = magnetisation_echo(s);
  double dx = 0.0, dq = 0.0;
  for (size_t k = 0; k < e.t.size(); ++k)
    for (int i = 0; i < 2; ++i) {
      dx = std::max(dx, std::abs(e.values[0][i][k] - e.values[1][i][k]));
      dq = std::max(dq, std::abs(e.values[0][i][k] - e.values[2][i][k]));
    }
  std::printf("  exchange period %.4g ms, %zu echo points to %.4g ms\n", e.exchange_period * 1e3, e.t.size(),
              e.t.back() * 1e3);
  std::printf("  max |exact - xyz| = %.4f (< %.2f), max |exact - qim| = %.4f (> %.2f)\n", dx, kEchoXyzMax, dq,
              kEchoQimMin);
  return dx < kEchoXyzMax && dq > kEchoQimMin;
}

ChannelScan channel_run(const NormalModeData& m, double h0_khz, double phi_s, double nbar) {
  ChannelScanSetup s;
  s.modes = m;
  DriveSpec& d = s.drive;
  d.Omega_L = two_pi * 0.5e6;
  d.mu = m.omega_x - two_pi * 500e3;
  d.set_phases(phi_s);
  d.h0 = two_pi * h0_khz * 1e3;
  d.Delta = 4.0 * d.h0;
  d.xi = 0.0;
  const int c = std::max(7, required_cutoff(nbar, 1e-6));
  s.n_max = {c, c};
  s.nbar = {nbar, nbar};
  s.n_points = 300;
  return channel_error_scan(s);
}

bool channel_thresholds() {
  NormalModeData m = transverse_modes(two_ions());
  bool ok = true;
  const std::vector<double> below = {1.2, 1.8};
  for (double h : below) {
    std::printf("  h0/2pi = %.1f kHz, phi_s grid:", h);
    for (int k = 0; k < 9; ++k) {
      const double e = channel_run(m, h, k * pi / 16.0, 0.05).eps_bar;
      std::printf(" %.5f", e);
      ok = ok && e < kChannelEps;
    }
    std::printf("\n  h0/2pi = %.1f kHz, nbar {0.05, 0.1, 0.3, 0.5} at phi_s = pi/3:", h);
    for (double nb : {0.05, 0.1, 0.3, 0.5}) {
      const double e = channel_run(m, h, pi / 3.0, nb).eps_bar;
      std::printf(" %.5f", e);
      ok = ok && e < kChannelEps;
    }
    std::printf("\n");
  }
  std::vector<double> hs = {1.2, 1.8, 2.4, 3.0, 3.6, 4.2, 4.8, 5.3, 5.9}, es;
  std::printf("  h0 scan at phi_s = pi/3:");
  for (double h : hs) {
    es.push_back(channel_run(m, h, pi / 3.0, 0.05).eps_bar);
    std::printf(" %.5f", es.back());
  }
  const double rho = spearman(hs, es);
  std::printf("\n  spearman %.3f (> 0), all eps below %.2f: %s\n", rho, kChannelEps, ok ? "yes" : "no");
  return ok && rho > 0.0;
}

bool adiabatic_preparation() {
  CrystalConfig c;
  c.N = 6;
  c.omega_z = two_pi * 1e6;
  c.omega_x = two_pi * 5e6;
  NormalModeData m = transverse_modes(c);
  DriveSpec d;
  d.Omega_L = two_pi * 0.9e6;
  d.mu = c.omega_x + two_pi * 500e3;
  d.set_phases(0.0);
  MatR J = coupling_matrix_sideband(m, d);
  const double h0 = 12.0 * J(0, 1);
  const std::vector<double> pf = {0.0, 0.1, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5};
  std::vector<double> phis;
  for (double p : pf) phis.push_back(p * pi);
  const std::vector<int> nper = {1, 2, 5, 10, 20, 40, 80, 160, 320, 640, 1280};
  auto g = ramp_grid(6, J, h0, nper, phis, 1);
  std::printf("  J12/2pi = %.2f Hz, h0 = 12 J12\n  periods  ", J(0, 1) / two_pi);
  for (double p : pf) std::printf(" %5.2fpi", p);
  double drift = 0.0;
  for (size_t k = 0; k < g.size(); ++k) {
    if (k % phis.size() == 0) std::printf("\n  %7d  ", g[k].n_periods);
    std::printf(" %7.4f", g[k].fidelity);
    drift = std::max(drift, g[k].parity_drift);
  }
  std::printf("\n  max parity drift %.3g\n", drift);
  const size_t slow = (nper.size() - 1) * phis.size(), fast = 0;
  bool slow_ok = true;
  double fast_low = 1.0, fast_high = 0.0;
  for (size_t b = 0; b < phis.size(); ++b) {
    if (pf[b] <= 0.25 + 1e-12) slow_ok = slow_ok && g[slow + b].fidelity >= kRampSlow;
    if (pf[b] < 0.25 - 1e-12) fast_low = std::min(fast_low, g[fast + b].fidelity);
    if (pf[b] > 0.3 + 1e-12) fast_high = std::max(fast_high, g[fast + b].fidelity);
  }
  std::printf("  slowest ramp F >= %.2f for phi_f <= 0.25pi: %s\n", kRampSlow, slow_ok ? "yes" : "no");
  std::printf("  fastest ramp: min F (phi_f < 0.25pi) = %.4f, max F (phi_f > 0.3pi) = %.4f, need gap >= %.2f\n",
              fast_low, fast_high, kRampGap);
  return slow_ok && fast_low - fast_high >= kRampGap;
}

struct CouplingCheck {
  double a0 = 0.0, worst_rel = 0.0, worst_dip = 0.0;
};

CouplingCheck chain_couplings(double omega_z) {
  CrystalConfig c;
  c.N = 50;
  c.omega_z = omega_z;
  c.omega_x = two_pi * 5e6;
  NormalModeData m = transverse_modes(c);
  CouplingCheck out;
  out.a0 = m.a0;
  const int ion = 24;
  for (double dk : {62.5, 125.0, 250.0, 500.0, 1000.0}) {
    DriveSpec d;
    d.Omega_L = two_pi * 0.5e6;
    d.mu = c.omega_x + two_pi * dk * 1e3;
    MatR J = coupling_matrix_numeric(m, d);
    CouplingParams p = coupling_params(d, m);
    double w = 0.0;
    for (int r = 1; r <= 10; ++r) w = std::max(w, std::abs(coupling_analytic(r, 50, p) / J(ion, ion + r) - 1.0));
    std::printf("    delta/2pi = %6.1f kHz lambda = %.4f xi0/a0 = %.3f max rel err %.3f\n", dk, p.lambda, p.xi0 / p.a0, w);
    out.worst_rel = std::max(out.worst_rel, w);
    if (dk == 1000.0)
      for (int r = 2; r <= 10; ++r)
        out.worst_dip = std::max(out.worst_dip, std::abs(J(ion, ion + r) * r * r * r / J(ion, ion + 1) - 1.0));
  }
  return out;
}

bool coupling_formulas() {
  std::printf("  omega_z/2pi = 0.1 MHz\n");
  CouplingCheck lit = chain_couplings(two_pi * 0.1e6);
  const bool a_ok = std::abs(lit.a0 / kSpacing - 1.0) < kSpacingTol;
  std::printf("  a0 = %.3f um (target %.1f um within %.0f%%): %s\n", lit.a0 * 1e6, kSpacing * 1e6, kSpacingTol * 100,
              a_ok ? "yes" : "no");
  std::printf("  analytic vs numeric worst %.3f (< %.2f), dipolar worst %.3f (< %.2f)\n", lit.worst_rel, kAnalyticTol,
              lit.worst_dip, kDipolarTol);
  const double wz = omega_z_for_spacing(50, kSpacing, constants::yb171_mass);
  std::printf("  informational, omega_z/2pi = %.4f MHz chosen for a0 = 4.4 um\n", wz / two_pi / 1e6);
  CouplingCheck alt = chain_couplings(wz);
  std::printf("  analytic vs numeric worst %.3f, dipolar worst %.3f\n", alt.worst_rel, alt.worst_dip);
  return a_ok && lit.worst_rel < kAnalyticTol && lit.worst_dip < kDipolarTol;
}

bool nlsm_closed_forms() {
  bool ok = true;
  const double Jt = 1.7, a = 0.9;
  for (double S : {0.5, 1.0, 1.5}) {
    NlsmParams p = nlsm_from_couplings([Jt](int r) { return r == 1 ? Jt : 0.0; }, S, a, 16);
    const bool e = std::abs(p.v - 2.0 * Jt * a * S) <= kExact * p.v && std::abs(p.g - 2.0 / S) <= kExact * p.g &&
                   std::abs(p.theta - std::fmod(two_pi * S, two_pi)) <= kExact;
    std::printf("  nearest neighbour S = %.1f: v = %.12g g = %.12g theta = %.12g %s\n", S, p.v, p.g, p.theta,
                e ? "ok" : "mismatch");
    ok = ok && e;
  }
  const double J1 = 1.3;
  NlsmParams s2 = power_law_nlsm(2.0, J1, a);
  const bool g2 = std::abs(s2.g - two_pi) <= kExact * two_pi;
  const bool v2 = std::abs(s2.v - 4.0 * pi * a * J1) <= kExact * 4.0 * pi * a * J1;
  std::printf("  s = 2: g = %.12g (2pi = %.12g) %s, v = %.12g (4 pi a J1 = %.12g) %s\n", s2.g, two_pi,
              g2 ? "ok" : "mismatch", s2.v, 4.0 * pi * a * J1, v2 ? "ok" : "mismatch");
  ok = ok && g2 && v2;
  // zeta(3) by direct summation with an integral tail estimate
  double z3 = 0.0;
  const int M = 100000;
  for (int n = M; n >= 1; --n) z3 += 1.0 / (double(n) * n * n);
  z3 += 1.0 / (2.0 * double(M) * M) - 1.0 / (2.0 * double(M) * M * M);
  double ln2 = 0.0;
  for (int k = 60; k >= 1; --k) ln2 += 1.0 / (k * std::pow(2.0, k));
  const double ref = std::sqrt(3.5 * z3) / std::sqrt(ln2);
  const double g0 = trapped_ion_g(0.0).g;
  const bool gz = std::abs(g0 - ref) < kZetaTol;
  std::printf("  trapped-ion g(0) = %.12f, independent %.12f, diff %.2e %s\n", g0, ref, std::abs(g0 - ref),
              gz ? "ok" : "mismatch");
  ok = ok && gz;
  double prev = 0.0;
  bool grows = true;
  for (double e : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    CouplingG g = two_neighbor_g(1.0, 0.25 - e);
    grows = grows && g.stable && g.g > prev;
    prev = g.g;
  }
  CouplingG at = two_neighbor_g(1.0, 0.25);
  const bool div = grows && prev > 1e5 && !at.stable && std::isinf(at.g);
  std::printf("  two-neighbour g at J2 = J1/4 - 1e-10: %.4g, at J1/4: %s %s\n", prev,
              at.stable ? "stable" : "instability", div ? "ok" : "mismatch");
  return ok && div;
}

double c_eff_for(const MatR& J, int N, std::vector<double>* S = nullptr) {
  GroundState g = ground_state(heisenberg_pauli_sum(J));
  EntropyProfile p = entropy_profile(g.state, N);
  fit_central_charge(p, even_window(4, 12));
  if (S) *S = p.S;
  return p.c_eff;
}

bool central_charge() {
  const int N = 16;
  const double nn = c_eff_for(nearest_neighbor_couplings(N, 1.0), N);
  const double lr = c_eff_for(distance_couplings(N, [](int r, double l) { return jtilde_eq13(r, l); }, 0.1), N);
  std::printf("  N = 16 even window [4, 12]: nearest neighbour c = %.4f, long range lambda = 0.1 c = %.4f\n", nn, lr);
  return nn >= kCLo && nn <= kCHi && lr > nn;
}

bool property_suites() {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double herm = 0.0, unit = 0.0, norm = 0.0, comp = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    CrystalConfig c;
    c.N = trial % 2 == 0 ? 2 : 3;
    c.omega_x = two_pi * (2e6 + 4e6 * u(rng));
    c.omega_z = c.omega_x * (0.05 + 0.2 * u(rng));
    NormalModeData m = transverse_modes(c);
    DriveSpec d;
    d.Omega_L = two_pi * (0.2e6 + 0.8e6 * u(rng));
    d.mu = c.omega_x + two_pi * (100e3 + 700e3 * u(rng));
    d.set_phases(pi * u(rng), two_pi * u(rng));
    d.h0 = two_pi * (1e3 + 4e3 * u(rng));
    d.Delta = 4.0 * d.h0;
    d.xi = 0.45 * u(rng);
    HamiltonianOptions o;
    o.n_max.assign(c.N, c.N == 2 ? 2 : 1);
    OperatorExpr Hi = build_interaction_hamiltonian(m, d, o);
    OperatorExpr Hb = build_beatnote_hamiltonian(m, d, o);
    const double t = 1e-3 * u(rng), span = 2e-6 + 3e-6 * u(rng);
    herm = std::max({herm, Hi.hermiticity_defect(t) / d.Omega_L, Hb.hermiticity_defect(t) / d.Omega_L});
    PropagateOptions po;
    po.tol = 1e-8;
    DenseResult U = dense_propagator(Hb, t, t + span, po);
    unit = std::max(unit, unitarity_defect(U.U));
    VecC psi = VecC::Random(Hi.dim());
    psi.normalize();
    norm = std::max(norm, propagate(Hi, psi, {t, t + span}, po).norm_drift);
    ThermalState th = thermal_phonon_state(std::vector<double>(c.N, 0.0), o.n_max);
    comp = std::max(comp, channel_from_evolution(U.U, Hb.space, th, 1.0).completeness_defect);
  }
  const bool inv = herm < 1e-12 && unit < 1e-9 && norm < 1e-10 && comp < 1e-7;
  std::printf("  100 configs: hermiticity %.2e unitarity %.2e norm drift %.2e channel completeness %.2e\n", herm, unit,
              norm, comp);

  double ja = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    DriveSpec d;
    d.set_phases(pi * u(rng));
    d.h0 = two_pi * (0.5e3 + 5e3 * u(rng));
    d.Delta = trial % 2 == 0 ? 4.0 * d.h0 : two_pi * (1e3 + 20e3 * u(rng));
    d.xi = 0.49 * u(rng);
    const double t = 4.0 * two_pi / d.Delta * u(rng);
    auto a = driven_pauli(t, d), b = driven_pauli_exact(t, d);
    for (int k = 0; k < 3; ++k) ja = std::max(ja, std::abs(a[k] - b[k]));
  }
  std::printf("  Jacobi-Anger vs conjugation max deviation %.2e (< %.0e)\n", ja, kJacobiAnger);

  int within = 0;
  const int trials = 12;
  for (int trial = 0; trial < trials; ++trial) {
    const int nsp = trial % 2 == 0 ? 1 : 2;
    SpinPhononSpace s{nsp, {2}};
    MatC A = MatC::Random(s.dim(), s.dim());
    MatC U = hermitian_expm(A + A.adjoint(), 0.3 + u(rng));
    ThermalState th = thermal_phonon_state({0.2 + u(rng)}, {2}, 0.9, 0.0);
    SpinChannel ch = channel_from_evolution(U, s, th, 1e-10);
    MatC B = MatC::Random(s.spin_dim(), s.spin_dim());
    MatC target = hermitian_expm(B + B.adjoint(), 0.5);
    const double exact = haar_average_fidelity(ch, target);
    SampledFidelity mc = haar_fidelity_sampled(ch, target, 20000, 5000 + trial);
    if (std::abs(mc.mean - exact) < 3.0 * mc.std_error) ++within;
  }
  std::printf("  Haar formula vs Monte Carlo within 3 sigma: %d of %d\n", within, trials);

  double orc = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    CrystalConfig c;
    c.N = 2 + trial % 2;
    c.omega_x = two_pi * (1e6 + 5e6 * u(rng));
    c.omega_z = c.omega_x * (0.05 + 0.4 * u(rng));
    VecR x = solve_equilibrium(c);
    NormalModeData m = transverse_modes(c, x);
    const double wx2 = c.omega_x * c.omega_x, wz2 = c.omega_z * c.omega_z;
    if (c.N == 2) {
      const double e = std::cbrt(0.25);
      orc = std::max({orc, std::abs(x(0) + e), std::abs(x(1) - e), std::abs(m.frequencies(1) / c.omega_x - 1.0),
                      std::abs(m.frequencies(0) / std::sqrt(wx2 - wz2) - 1.0)});
    } else {
      const double e = std::cbrt(1.25);
      orc = std::max({orc, std::abs(x(0) + e), std::abs(x(1)), std::abs(x(2) - e),
                      std::abs(m.frequencies(0) / std::sqrt(wx2 - 2.4 * wz2) - 1.0),
                      std::abs(m.frequencies(1) / std::sqrt(wx2 - wz2) - 1.0),
                      std::abs(m.frequencies(2) / c.omega_x - 1.0)});
    }
  }
  std::printf("  N = 2, 3 analytic equilibrium and mode oracles max deviation %.2e (< %.0e)\n", orc, kOracle);
  return inv && ja < kJacobiAnger && within == trials && orc < kOracle;
}

}  // namespace

int main() {
  run(7, "property suites", property_suites);
  run(5, "NLSM closed forms", nlsm_closed_forms);
  run(4, "coupling formulas, N = 50 chain", coupling_formulas);
  run(1, "two-ion effective-model agreement", echo_agreement);
  run(6, "central-charge baseline and ordering", central_charge);
  run(3, "adiabatic preparation, N = 6", adiabatic_preparation);
  run(2, "channel-error thresholds", channel_thresholds);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
