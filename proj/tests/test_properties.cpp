#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tiqs/errors.hpp"
#include "tiqs/evolution.hpp"
#include "tiqs/fidelity.hpp"
#include "tiqs/hamiltonians.hpp"
#include "tiqs/linalg.hpp"

using namespace tiqs;

namespace {

struct RandomSetup {
  NormalModeData modes;
  DriveSpec drive;
  std::vector<int> n_max;
};

RandomSetup random_setup(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomSetup s;
  CrystalConfig c;
  c.N = u(rng) < 0.5 ? 2 : 3;
  c.omega_x = two_pi * (2e6 + 4e6 * u(rng));
  c.omega_z = c.omega_x * (0.05 + 0.2 * u(rng));
  s.modes = transverse_modes(c);
  DriveSpec& d = s.drive;
  d.Omega_L = two_pi * (0.2e6 + 0.8e6 * u(rng));
  const double side = u(rng) < 0.5 ? -1.0 : 1.0;
  d.mu = side > 0 ? c.omega_x + two_pi * (100e3 + 700e3 * u(rng))
                  : s.modes.frequencies.minCoeff() - two_pi * (100e3 + 700e3 * u(rng));
  d.set_phases(pi * u(rng), two_pi * u(rng));
  d.h0 = two_pi * (1e3 + 4e3 * u(rng));
  d.Delta = 4.0 * d.h0;
  d.xi = 0.45 * u(rng);
  s.n_max.assign(c.N, c.N == 2 ? 2 : 1);
  return s;
}

}  // namespace

TEST(Invariants, RandomConfigurations) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    RandomSetup s = random_setup(rng);
    HamiltonianOptions o;
    o.n_max = s.n_max;
    OperatorExpr Hi = build_interaction_hamiltonian(s.modes, s.drive, o);
    OperatorExpr Hb = build_beatnote_hamiltonian(s.modes, s.drive, o);
    const double t = 1e-3 * u(rng);
    const double scale = s.drive.Omega_L;
    ASSERT_LT(Hi.hermiticity_defect(t), 1e-12 * scale) << trial;
    ASSERT_LT(Hb.hermiticity_defect(t), 1e-12 * scale) << trial;

    const double span = 2e-6 + 3e-6 * u(rng);
    PropagateOptions po;
    po.tol = 1e-8;
    DenseResult U = dense_propagator(Hb, t, t + span, po);
    ASSERT_LT(unitarity_defect(U.U), 1e-9) << trial;

    VecC psi = VecC::Random(Hi.dim());
    psi.normalize();
    Trajectory tr = propagate(Hi, psi, {t, t + span}, po);
    ASSERT_LT(tr.norm_drift, 1e-10) << trial;

    std::vector<double> nb(s.n_max.size(), 0.0);
    ThermalState th = thermal_phonon_state(nb, s.n_max);
    double w = 0.0;
    for (const auto& m : th.members) w += m.weight;
    ASSERT_NEAR(w, 1.0, 1e-14);
    SpinChannel ch = channel_from_evolution(U.U, Hb.space, th, 1e-7);
    ASSERT_LT(ch.completeness_defect, 1e-7) << trial;
    const double F = haar_average_fidelity(ch, MatC::Identity(Hb.space.spin_dim(), Hb.space.spin_dim()));
    ASSERT_GE(F, 0.0);
    ASSERT_LE(F, 1.0 + 1e-12);
  }
}

TEST(Invariants, JacobiAngerRandom) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    DriveSpec d;
    d.set_phases(pi * u(rng));
    d.h0 = two_pi * (0.5e3 + 5e3 * u(rng));
    d.Delta = u(rng) < 0.5 ? 4.0 * d.h0 : two_pi * (1e3 + 20e3 * u(rng));
    d.xi = 0.49 * u(rng);
    const double t = 4.0 * two_pi / d.Delta * u(rng);
    auto a = driven_pauli(t, d);
    auto b = driven_pauli_exact(t, d);
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Invariants, JacobiAngerOverOnePeriod) {
  DriveSpec d;
  d.set_phases(pi / 3);
  d.h0 = two_pi * 2.5e3;
  d.Delta = 4.0 * d.h0;
  d.xi = 0.09;
  double worst = 0.0;
  const double T = two_pi / d.Delta;
  for (int k = 0; k <= 1000; ++k) {
    auto a = driven_pauli(T * k / 1000.0, d);
    auto b = driven_pauli_exact(T * k / 1000.0, d);
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(a[c] - b[c]));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Invariants, HaarFormulaVersusMonteCarlo) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    // random system-environment unitary, environment traced against a mixed state
    const int ds = trial % 2 == 0 ? 2 : 4;
    const int nsp = ds == 2 ? 1 : 2;
    SpinPhononSpace s{nsp, {2}};
    MatC A = MatC::Random(s.dim(), s.dim());
    MatC U = hermitian_expm(A + A.adjoint(), 0.3 + u(rng));
    ThermalState th = thermal_phonon_state({0.2 + u(rng)}, {2}, 0.9, 0.0);
    SpinChannel ch = channel_from_evolution(U, s, th, 1e-10);
    MatC B = MatC::Random(ds, ds);
    MatC target = hermitian_expm(B + B.adjoint(), 0.5);
    const double exact = haar_average_fidelity(ch, target);
    SampledFidelity mc = haar_fidelity_sampled(ch, target, 20000, 1000 + trial);
    EXPECT_LT(std::abs(mc.mean - exact), 3.0 * mc.std_error) << trial << " exact " << exact << " mc " << mc.mean;
  }
}

TEST(Invariants, TwoIonOracles) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    CrystalConfig c;
    c.N = 2;
    c.omega_x = two_pi * (1e6 + 5e6 * u(rng));
    c.omega_z = c.omega_x * (0.05 + 0.5 * u(rng));
    VecR x = solve_equilibrium(c);
    const double e = std::cbrt(0.25);
    ASSERT_NEAR(x(0), -e, 1e-10);
    ASSERT_NEAR(x(1), e, 1e-10);
    NormalModeData m = transverse_modes(c, x);
    ASSERT_NEAR(m.frequencies(1) / c.omega_x, 1.0, 1e-10);
    ASSERT_NEAR(m.frequencies(0) / std::sqrt(c.omega_x * c.omega_x - c.omega_z * c.omega_z), 1.0, 1e-10);
  }
}

TEST(Invariants, ThreeIonOracles) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    CrystalConfig c;
    c.N = 3;
    c.omega_x = two_pi * (1e6 + 5e6 * u(rng));
    c.omega_z = c.omega_x * (0.05 + 0.4 * u(rng));
    VecR x = solve_equilibrium(c);
    const double e = std::cbrt(1.25);
    ASSERT_NEAR(x(0), -e, 1e-10);
    ASSERT_NEAR(x(1), 0.0, 1e-10);
    ASSERT_NEAR(x(2), e, 1e-10);
    NormalModeData m = transverse_modes(c, x);
    const double wx2 = c.omega_x * c.omega_x, wz2 = c.omega_z * c.omega_z;
    ASSERT_NEAR(m.frequencies(0) / std::sqrt(wx2 - 2.4 * wz2), 1.0, 1e-10);
    ASSERT_NEAR(m.frequencies(1) / std::sqrt(wx2 - wz2), 1.0, 1e-10);
    ASSERT_NEAR(m.frequencies(2) / c.omega_x, 1.0, 1e-10);
  }
}
