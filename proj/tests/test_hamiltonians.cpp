#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tiqs/errors.hpp"
#include "tiqs/evolution.hpp"
#include "tiqs/hamiltonians.hpp"
#include "tiqs/linalg.hpp"

using namespace tiqs;

namespace {

CrystalConfig toy_trap() {
  CrystalConfig c;
  c.N = 2;
  c.omega_x = two_pi * 200e3;
  c.omega_z = two_pi * 40e3;
  return c;
}

DriveSpec toy_drive(double wx) {
  DriveSpec d;
  d.Omega_L = two_pi * 100e3;
  d.mu = wx + two_pi * 20e3;
  d.set_phases(pi / 3);
  d.h0 = two_pi * 250.0;
  d.Delta = 4.0 * d.h0;
  d.xi = 0.09;
  return d;
}

}  // namespace

TEST(Builders, HermitianAtRandomTimes) {
  NormalModeData m = transverse_modes(fx::two_ion_trap());
  DriveSpec d = fx::echo_drive();
  HamiltonianOptions o;
  o.n_max = {3, 3};
  o.omega0 = two_pi * 1e6;
  OperatorExpr lab = build_lab_hamiltonian(m, d, o);
  o.omega0 = 0.0;
  OperatorExpr in = build_interaction_hamiltonian(m, d, o);
  OperatorExpr bn = build_beatnote_hamiltonian(m, d, o);
  EXPECT_EQ(lab.dim(), 64);
  for (double t : {0.0, 1.3e-6, 7.7e-5, 2.1e-3}) {
    EXPECT_LT(lab.hermiticity_defect(t), 1e-9);
    EXPECT_LT(in.hermiticity_defect(t), 1e-9);
    EXPECT_LT(bn.hermiticity_defect(t), 1e-9);
  }
  EXPECT_TRUE(in.time_dependent());
  EXPECT_DOUBLE_EQ(bn.max_frequency, d.Delta);
}

TEST(Builders, RejectsBadCutoffs) {
  NormalModeData m = transverse_modes(fx::two_ion_trap());
  HamiltonianOptions o;
  o.n_max = {3};
  EXPECT_THROW(build_interaction_hamiltonian(m, fx::echo_drive(), o), DimensionError);
  o.n_max = {0, 3};
  EXPECT_THROW(build_interaction_hamiltonian(m, fx::echo_drive(), o), DimensionError);
  o.n_max = {3, 3};
  o.max_dim = 32;
  EXPECT_THROW(build_interaction_hamiltonian(m, fx::echo_drive(), o), DimensionError);
}

TEST(Builders, LabMatchesInteractionPicture) {
  CrystalConfig c = toy_trap();
  NormalModeData m = transverse_modes(c);
  DriveSpec d = toy_drive(c.omega_x);
  HamiltonianOptions o;
  o.n_max = {2, 2};
  OperatorExpr lab = build_lab_hamiltonian(m, d, o);
  OperatorExpr in = build_interaction_hamiltonian(m, d, o);
  VecC psi0 = VecC::Zero(lab.dim());
  psi0(0) = 1.0;
  const double T = 50e-6;
  Trajectory a = propagate(lab, psi0, {0.0, T});
  Trajectory b = propagate(in, psi0, {0.0, T});
  FrameUnitaries f = frame_unitaries(T, d, m, lab.space, 0.0);
  VecC rotated = f.U0_diag.conjugate().cwiseProduct(a.states.back());
  EXPECT_GT(std::norm(rotated.dot(b.states.back())), 1.0 - 1e-6);
}

TEST(DrivenPauli, JacobiAngerMatchesConjugation) {
  DriveSpec d = fx::echo_drive();
  for (double xi : {0.0, 0.09, 0.3}) {
    d.xi = xi;
    for (double t : {0.0, 1e-5, 3.3e-4, 1.7e-3, 9e-3}) {
      auto a = driven_pauli(t, d);
      auto b = driven_pauli_exact(t, d);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[k], 1e-10) << xi << " " << t;
    }
  }
}

TEST(DrivenPauli, CentralTermAlone) {
  DriveSpec d = fx::echo_drive();
  auto a = driven_pauli(2e-4, d, 0);
  const double j0 = std::cyl_bessel_j(0.0, comb_bessel_argument(d));
  EXPECT_NEAR(a[1], -std::sin(d.phi_s()) * j0 * std::cos(2.0 * d.h0 * 2e-4), 1e-14);
  EXPECT_NEAR(comb_bessel_argument(d), 2.0 * d.xi * d.h0 / d.Delta, 1e-15);
}

TEST(PauliSums, IsingFromPhaseOperators) {
  MatR J = fx::random_symmetric(3, 11);
  const double phi = 0.83;
  SpC ref(8, 8);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) ref = ref + SpC(spin_phase_op(3, i, phi) * spin_phase_op(3, j, phi)) * cplx(J(i, j));
  EXPECT_LT((MatC(ref) - ising_pauli_sum(J, phi).to_dense()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PauliSums, FieldConventions) {
  MatC Y = MatC(total_spin_op(2, Pauli::Y));
  EXPECT_LT((field_pauli_sum(2, 1.0, -pi / 2).to_dense() - Y).cwiseAbs().maxCoeff(), 1e-15);
  MatC X = MatC(spin_op(2, 0, Pauli::X)) - MatC(spin_op(2, 1, Pauli::X));
  EXPECT_LT((field_pauli_sum(2, 1.0, 0.0, {1, -1}).to_dense() - X).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliSums, HeisenbergConservesSz) {
  MatR J = fx::random_symmetric(4, 12);
  MatC H = heisenberg_pauli_sum(J, 0.7).to_dense();
  MatC Z = MatC(total_spin_op(4, Pauli::Z));
  EXPECT_LT((H * Z - Z * H).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(hermiticity_defect(H), 1e-15);
}

TEST(PauliSums, BasisConvention) {
  // spin 0 is the most significant bit, bit 0 is up
  MatC Z0 = MatC(spin_op(2, 0, Pauli::Z));
  EXPECT_EQ(Z0(0, 0), cplx(1.0));
  EXPECT_EQ(Z0(2, 2), cplx(-1.0));
  EXPECT_EQ(Z0(1, 1), cplx(1.0));
}

TEST(Effective, XyzAndQimAgree) {
  MatR J = fx::random_symmetric(3, 13);
  XYZ x = xyz_couplings(J, 0.0, 0.0);
  EffectiveModelSpec a;
  a.kind = EffectiveKind::XYZ;
  a.N = 3;
  a.Jx = x.Jx;
  a.Jy = x.Jy;
  a.Jz = x.Jz;
  EffectiveModelSpec b;
  b.kind = EffectiveKind::QIM;
  b.N = 3;
  b.J = J;
  EXPECT_LT((MatC(build_effective(a).static_part) - MatC(build_effective(b).static_part)).cwiseAbs().maxCoeff(),
            1e-15);
  b.J = MatR::Zero(2, 2);
  EXPECT_THROW(build_effective(b), DimensionError);
}

TEST(Effective, ModulatedIsingReducesToXyzAverage) {
  // time average of the modulated Ising model at xi = 0 over a carrier period is the XYZ model
  DriveSpec d = fx::echo_drive();
  d.xi = 0.0;
  MatR J = fx::random_symmetric(2, 14);
  EffectiveModelSpec s;
  s.kind = EffectiveKind::MODULATED_ISING;
  s.N = 2;
  s.J = J;
  s.phi_s = d.phi_s();
  s.drive = d;
  OperatorExpr H = build_effective(s);
  const int K = 400;
  const double T = pi / d.h0;
  MatC avg = MatC::Zero(4, 4);
  for (int k = 0; k < K; ++k) avg += H.evaluate_dense((k + 0.5) * T / K) / double(K);
  XYZ x = xyz_couplings(J, d.phi_s(), 0.0);
  MatC ref = xyz_pauli_sum(x.Jx, x.Jy, x.Jz).to_dense();
  EXPECT_LT((avg - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Frames, CarrierFrameSolvesDrive) {
  DriveSpec d = fx::echo_drive();
  const double t = 3.1e-4, h = 1e-9;
  MatC U = carrier_frame(t, d, 2);
  EXPECT_LT(unitarity_defect(U), 1e-14);
  MatC dU = (carrier_frame(t + h, d, 2) - carrier_frame(t - h, d, 2)) / (2 * h);
  MatC X = MatC(total_spin_op(2, Pauli::X));
  MatC rhs = I * d.h0 * (1.0 + d.xi * std::cos(d.Delta * t)) * X * U;
  EXPECT_LT((dU - rhs).cwiseAbs().maxCoeff() / d.h0, 1e-5);
}

TEST(Frames, BeatnoteFrameIsExactTransform) {
  // beatnote frame e^{-i sum delta a^dag a t} versus interaction picture, same truncation
  NormalModeData m = transverse_modes(fx::two_ion_trap());
  DriveSpec d = fx::echo_drive();
  HamiltonianOptions o;
  o.n_max = {2, 2};
  OperatorExpr in = build_interaction_hamiltonian(m, d, o);
  OperatorExpr bn = build_beatnote_hamiltonian(m, d, o);
  VecC psi0 = VecC::Zero(in.dim());
  psi0(4) = 1.0;
  const double T = 2.0 * two_pi / d.Delta;
  Trajectory a = propagate(in, psi0, {0.0, T});
  Trajectory b = propagate(bn, psi0, {0.0, T});
  VecC ph = diagonal_phases(free_phonon_hamiltonian(in.space, mode_detunings(m, d)), T);
  VecC back = ph.conjugate().cwiseProduct(b.states.back());
  EXPECT_GT(std::norm(back.dot(a.states.back())), 1.0 - 1e-6);
}

TEST(Frames, IdentityAtZeroAndQuarterTurn) {
  DriveSpec d = fx::echo_drive();
  NormalModeData m = transverse_modes(fx::two_ion_trap());
  FrameUnitaries f = frame_unitaries(0.0, d, m, SpinPhononSpace{2, {2, 2}});
  EXPECT_LT((f.Uhat - MatC::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((f.U0_diag.array() - cplx(1.0)).abs().maxCoeff(), 1e-15);
  MatC U = carrier_frame(two_pi / d.Delta, d, 2);
  MatC ref = hermitian_expm(MatC(total_spin_op(2, Pauli::X)), -0.5 * pi);
  EXPECT_LT((U - ref).cwiseAbs().maxCoeff(), 1e-12);
  FrameUnitaries g = frame_unitaries(3.7e-4, d, m, SpinPhononSpace{2, {2, 2}}, two_pi * 1e6);
  EXPECT_LT((g.U0_diag.array().abs() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(Frames, ConjugationMatchesDrivenPauli) {
  DriveSpec d = fx::echo_drive();
  for (double t : {1e-5, 2.2e-4, 8.1e-4}) {
    MatC U = carrier_frame(t, d, 1);
    MatC sp = MatC(spin_phase_op(1, 0, d.phi_s()));
    MatC R = U * sp * U.adjoint();
    auto c = driven_pauli(t, d);
    MatC ref = c[0] * MatC(pauli_matrix(Pauli::X)) + c[1] * MatC(pauli_matrix(Pauli::Y)) + c[2] * MatC(pauli_matrix(Pauli::Z));
    EXPECT_LT((R - ref).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(DrivenPauli, ValueAtZero) {
  DriveSpec d = fx::echo_drive();
  auto c = driven_pauli(0.0, d);
  EXPECT_NEAR(c[0], std::cos(d.phi_s()), 1e-14);
  EXPECT_NEAR(c[1], -std::sin(d.phi_s()), 1e-14);
  EXPECT_NEAR(c[2], 0.0, 1e-14);
}

TEST(Builders, FreeLabHamiltonianIsDiagonal) {
  NormalModeData m = transverse_modes(fx::two_ion_trap());
  DriveSpec d;
  d.mu = two_pi * 4.5e6;
  HamiltonianOptions o;
  o.n_max = {2, 2};
  o.omega0 = two_pi * 1e6;
  OperatorExpr H = build_lab_hamiltonian(m, d, o);
  MatC h = H.evaluate_dense(1e-6);
  EXPECT_LT((h - MatC(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(std::real(h(1, 1) - h(0, 0)), m.frequencies(1), 1e-6);
}

TEST(Builders, InteractionAtTimeZero) {
  NormalModeData m = transverse_modes(fx::two_ion_trap());
  DriveSpec d = fx::echo_drive();
  d.h0 = 0.0;
  HamiltonianOptions o;
  o.n_max = {2, 2};
  OperatorExpr H = build_interaction_hamiltonian(m, d, o);
  MatC F = force_matrix(m, d);
  SpC ref(H.dim(), H.dim());
  for (int n = 0; n < 2; ++n) {
    SpC a = annihilation(H.space, n);
    SpC x = SpC(a + SpC(a.adjoint()));
    for (int i = 0; i < 2; ++i) ref = ref + SpC(embed_spin(H.space, spin_phase_op(2, i, d.phi_s())) * x) * F(i, n);
  }
  EXPECT_LT((H.evaluate_dense(0.0) - MatC(ref)).cwiseAbs().maxCoeff(), 1e-6 * F.cwiseAbs().maxCoeff());
}

TEST(Builders, CarrierConstantWithoutModulation) {
  NormalModeData m = transverse_modes(fx::two_ion_trap());
  DriveSpec d = fx::echo_drive();
  d.xi = 0.0;
  d.Omega_L = 0.0;
  HamiltonianOptions o;
  o.n_max = {1, 1};
  OperatorExpr H = build_interaction_hamiltonian(m, d, o);
  MatC ref = MatC(embed_spin(H.space, total_spin_op(2, Pauli::X))) * d.h0;
  for (double t : {0.0, 3e-5, 1e-3}) EXPECT_LT((H.evaluate_dense(t) - ref).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Effective, IsotropicPointIsSu2Symmetric) {
  MatR J = fx::random_symmetric(4, 15);
  XYZ x = xyz_couplings(J, std::acos(1.0 / std::sqrt(3.0)), 0.0);
  MatC H = xyz_pauli_sum(x.Jx, x.Jy, x.Jz).to_dense();
  for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z}) {
    MatC S = MatC(total_spin_op(4, a));
    EXPECT_LT((H * S - S * H).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Effective, TwoSpinIsingSpectrum) {
  MatR J = MatR::Zero(2, 2);
  J(0, 1) = J(1, 0) = 0.7;
  EffectiveModelSpec s;
  s.kind = EffectiveKind::QIM;
  s.N = 2;
  s.J = J;
  s.phi_s = 0.4;
  HermitianEigen e = hermitian_eigen(MatC(build_effective(s).static_part));
  EXPECT_NEAR(e.values(0), -0.7, 1e-14);
  EXPECT_NEAR(e.values(1), -0.7, 1e-14);
  EXPECT_NEAR(e.values(2), 0.7, 1e-14);
  EXPECT_NEAR(e.values(3), 0.7, 1e-14);
}
