#include "tiqs/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "tiqs/errors.hpp"

namespace tiqs {

namespace {

const double cf4_a1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double cf4_a2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;
const double gauss_c1 = 0.5 - std::sqrt(3.0) / 6.0;
const double gauss_c2 = 0.5 + std::sqrt(3.0) / 6.0;

VecC run_steps(const OperatorExpr& H, VecC psi, double t0, double t1, int n, const PropagateOptions& o) {
  const double h = (t1 - t0) / n;
  for (int s = 0; s < n; ++s) {
    const double ts = t0 + s * h;
    if (o.order == 4) {
      SpC H1 = H.evaluate(ts + gauss_c1 * h), H2 = H.evaluate(ts + gauss_c2 * h);
      psi = expm_krylov(SpC(H1 * cplx(cf4_a2) + H2 * cplx(cf4_a1)), psi, h, o.krylov);
      psi = expm_krylov(SpC(H1 * cplx(cf4_a1) + H2 * cplx(cf4_a2)), psi, h, o.krylov);
    } else {
      psi = expm_krylov(H.evaluate(ts + 0.5 * h), psi, h, o.krylov);
    }
  }
  return psi;
}

MatC run_dense(const OperatorExpr& H, double t0, double t1, int n, const PropagateOptions& o) {
  const double h = (t1 - t0) / n;
  MatC U = MatC::Identity(H.dim(), H.dim());
  for (int s = 0; s < n; ++s) {
    const double ts = t0 + s * h;
    if (o.order == 4) {
      MatC H1 = H.evaluate_dense(ts + gauss_c1 * h), H2 = H.evaluate_dense(ts + gauss_c2 * h);
      U = hermitian_expm(cf4_a2 * H1 + cf4_a1 * H2, h) * U;
      U = hermitian_expm(cf4_a1 * H1 + cf4_a2 * H2, h) * U;
    } else {
      U = hermitian_expm(H.evaluate_dense(ts + 0.5 * h), h) * U;
    }
  }
  return U;
}

int initial_steps(const OperatorExpr& H, double span, const PropagateOptions& o) {
  double n = std::ceil(std::abs(span) * H.max_frequency / o.phase_per_step);
  return std::max(o.min_steps, static_cast<int>(std::max(1.0, n)));
}

double infidelity(const VecC& a, const VecC& b) {
  double ov = std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
  return std::max(0.0, 1.0 - ov);
}

}  // namespace

Trajectory propagate(const OperatorExpr& H, const VecC& psi0, const std::vector<double>& grid,
                     const PropagateOptions& o) {
  if (psi0.size() != H.dim()) throw DimensionError("initial state does not match the Hamiltonian");
  for (size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] >= grid[k - 1])) throw DimensionError("time grid must be sorted");
  Trajectory tr;
  VecC psi = psi0;
  const double n0 = psi0.norm();
  if (grid.empty()) return tr;
  tr.t.push_back(grid[0]);
  if (o.store_states) tr.states.push_back(psi);
  for (size_t k = 1; k < grid.size(); ++k) {
    const double t0 = grid[k - 1], t1 = grid[k];
    if (t1 == t0) {
      tr.t.push_back(t1);
      if (o.store_states) tr.states.push_back(psi);
      tr.steps.push_back(0);
      tr.halving_change.push_back(0.0);
      continue;
    }
    if (!H.time_dependent()) {
      psi = expm_krylov(H.static_part, psi, t1 - t0, o.krylov);
      tr.steps.push_back(1);
      tr.halving_change.push_back(0.0);
    } else {
      int n = initial_steps(H, t1 - t0, o);
      VecC a = run_steps(H, psi, t0, t1, n, o);
      VecC b = run_steps(H, psi, t0, t1, 2 * n, o);
      double change = infidelity(a, b);
      int dbl = 0;
      while (change > o.tol) {
        if (++dbl > o.max_doublings)
          throw ConvergenceFailure("time stepping did not converge", change, (t1 - t0) / (2.0 * n));
        n *= 2;
        a = std::move(b);
        b = run_steps(H, psi, t0, t1, 2 * n, o);
        change = infidelity(a, b);
      }
      psi = std::move(b);
      tr.steps.push_back(2 * n);
      tr.halving_change.push_back(change);
    }
    tr.t.push_back(t1);
    if (o.store_states) tr.states.push_back(psi);
    tr.norm_drift = std::max(tr.norm_drift, std::abs(psi.norm() - n0));
  }
  if (!o.store_states) tr.states.push_back(psi);
  return tr;
}

DenseResult dense_propagator(const OperatorExpr& H, double t0, double t1, const PropagateOptions& o) {
  DenseResult r;
  if (!H.time_dependent()) {
    r.U = hermitian_expm(MatC(H.static_part), t1 - t0);
    r.steps = 1;
    return r;
  }
  int n = initial_steps(H, t1 - t0, o);
  MatC a = run_dense(H, t0, t1, n, o);
  MatC b = run_dense(H, t0, t1, 2 * n, o);
  double change = (a - b).cwiseAbs().maxCoeff();
  int dbl = 0;
  while (change > o.tol) {
    if (++dbl > o.max_doublings)
      throw ConvergenceFailure("propagator stepping did not converge", change, (t1 - t0) / (2.0 * n));
    n *= 2;
    a = std::move(b);
    b = run_dense(H, t0, t1, 2 * n, o);
    change = (a - b).cwiseAbs().maxCoeff();
  }
  r.U = std::move(b);
  r.steps = 2 * n;
  r.halving_change = change;
  return r;
}

int required_cutoff(double nbar, double tol) {
  if (nbar <= 0.0) return 0;
  const double q = nbar / (1.0 + nbar);
  return std::max(0, static_cast<int>(std::ceil(std::log(tol) / std::log(q))) - 1);
}

ThermalState thermal_phonon_state(const std::vector<double>& nbar, const std::vector<int>& n_max, double tail_tol,
                                  double member_cut) {
  if (nbar.size() != n_max.size()) throw DimensionError("nbar and n_max must list the same modes");
  ThermalState th;
  th.space = SpinPhononSpace{0, n_max};
  for (size_t m = 0; m < nbar.size(); ++m) {
    if (nbar[m] < 0.0) throw ValidityError("mean phonon number must be non-negative");
    const double q = nbar[m] / (1.0 + nbar[m]);
    const double tail = std::pow(q, n_max[m] + 1);
    if (tail > tail_tol) throw TruncationError("Fock cutoff loses too much thermal population", required_cutoff(nbar[m], tail_tol));
    VecR p(n_max[m] + 1);
    for (int k = 0; k <= n_max[m]; ++k) p(k) = std::pow(q, k);
    if (nbar[m] == 0.0) p.setZero(), p(0) = 1.0;
    p /= p.sum();
    th.mode_populations.push_back(p);
  }
  const Eigen::Index pd = th.space.phonon_dim();
  double kept = 0.0;
  for (Eigen::Index idx = 0; idx < pd; ++idx) {
    auto dig = th.space.fock_digits(idx);
    double w = 1.0;
    for (size_t m = 0; m < dig.size(); ++m) w *= th.mode_populations[m](dig[m]);
    if (w > member_cut) {
      th.members.push_back({idx, w});
      kept += w;
    } else {
      th.dropped_weight += w;
    }
  }
  for (auto& mb : th.members) mb.weight /= kept;
  return th;
}

MatR ThermalState::density_matrix() const {
  const Eigen::Index pd = space.phonon_dim();
  MatR rho = MatR::Zero(pd, pd);
  for (const auto& m : members) rho(m.phonon_index, m.phonon_index) = m.weight;
  return rho;
}

double expectation(const VecC& psi, const SpC& op) { return std::real(psi.dot(op * psi)) / psi.squaredNorm(); }

std::vector<double> measure(const Trajectory& traj, const SpC& O, const StateMap& frame) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const VecC& s = traj.states[k];
    out.push_back(frame ? expectation(frame(traj.t[k], s), O) : expectation(s, O));
  }
  return out;
}

MatC echo_pulse(int N) {
  MatC u = MatC::Zero(2, 2);
  u(0, 0) = I;
  u(1, 1) = -I;
  MatC U = MatC::Identity(1, 1);
  for (int i = 0; i < N; ++i) U = kron(U, u);
  return U;
}

EchoSeries magnetisation_echo(const EchoSetup& su) {
  const int N = su.modes.n_ions();
  const DriveSpec& d = su.drive;
  if (!(d.Delta > 0.0)) throw ValidityError("echo protocol needs Delta > 0");
  HamiltonianOptions ho;
  ho.n_max = su.n_max;
  OperatorExpr Hb = build_beatnote_hamiltonian(su.modes, d, ho);
  const SpinPhononSpace& sp = Hb.space;
  const double T = two_pi / d.Delta;

  MatR J = coupling_matrix_sideband(su.modes, d);
  XYZ xyz = xyz_couplings(J, d.phi_s(), d.xi);
  MatC Hx = xyz_pauli_sum(xyz.Jx, xyz.Jy, xyz.Jz).to_dense();
  MatC Hq = ising_pauli_sum(J, d.phi_s()).to_dense();
  HermitianEigen ex = hermitian_eigen(Hx), eq = hermitian_eigen(Hq);

  EchoSeries out;
  out.exchange_period = pi / std::abs(xyz.Jx(0, 1) + xyz.Jz(0, 1));
  int K = su.periods >= 0 ? su.periods : static_cast<int>(std::ceil(out.exchange_period / (2.0 * T)));

  PropagateOptions po = su.prop;
  DenseResult UT = dense_propagator(Hb, 0.0, T, po);
  out.propagator_change = UT.halving_change;

  ThermalState th = thermal_phonon_state(su.nbar, su.n_max);
  std::vector<VecC> spin1;
  for (int i = 0; i < N; ++i) spin1.push_back(y_eigenstate(i % 2 == 0 ? +1 : -1));
  VecC psi0 = product_state(spin1);
  MatC Us = echo_pulse(N);
  SpC UsFull = kron(SpC(Us.sparseView()), sparse_identity(sp.phonon_dim()));

  std::vector<SpC> sy_full, sy_spin;
  for (int i = 0; i < N; ++i) {
    sy_spin.push_back(spin_op(N, i, Pauli::Y));
    sy_full.push_back(embed_spin(sp, sy_spin.back()));
  }

  out.tags = {"exact", "xyz"};
  if (su.include_qim) out.tags.push_back("qim");
  out.values.assign(out.tags.size(), std::vector<std::vector<double>>(N, std::vector<double>(K + 1, 0.0)));

  // exact branch: U_T^k U_s U_T^k per ensemble member
  const Eigen::Index pd = sp.phonon_dim();
  for (const auto& mb : th.members) {
    VecC v0 = VecC::Zero(sp.dim());
    for (Eigen::Index s = 0; s < psi0.size(); ++s) v0(s * pd + mb.phonon_index) = psi0(s);
    std::vector<VecC> fw{v0};
    for (int k = 1; k <= K; ++k) fw.push_back(UT.U * fw.back());
    for (int k = 0; k <= K; ++k) {
      VecC w = UsFull * fw[k];
      for (int j = 0; j < k; ++j) w = UT.U * w;
      for (int i = 0; i < N; ++i) out.values[0][i][k] += mb.weight * expectation(w, sy_full[i]);
    }
  }
  for (int k = 0; k <= K; ++k) {
    const double th_ = k * T, t = 2.0 * k * T;
    out.t.push_back(t);
    MatC Uh = carrier_frame(th_, d, N), Ut = carrier_frame(t, d, N);
    VecC a = apply_expm(ex, th_, psi0);
    a = Uh.adjoint() * a;
    a = Us * a;
    a = Uh * a;
    a = apply_expm(ex, t - th_, a);
    a = Ut.adjoint() * a;
    for (int i = 0; i < N; ++i) out.values[1][i][k] = expectation(a, sy_spin[i]);
    if (su.include_qim) {
      VecC q = apply_expm(eq, th_, psi0);
      q = Us * q;
      q = apply_expm(eq, th_, q);
      for (int i = 0; i < N; ++i) out.values[2][i][k] = expectation(q, sy_spin[i]);
    }
  }
  return out;
}

}  // namespace tiqs
