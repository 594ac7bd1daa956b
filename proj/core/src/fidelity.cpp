#include "tiqs/fidelity.hpp"

#include <cmath>
#include <random>

#include "tiqs/errors.hpp"

namespace tiqs {

namespace {

// columns |s, a> of the full space for all spin states s
MatC spin_columns(const MatC& U, const SpinPhononSpace& s, Eigen::Index a) {
  const Eigen::Index d = s.spin_dim(), pd = s.phonon_dim();
  MatC Y(U.rows(), d);
  for (Eigen::Index k = 0; k < d; ++k) Y.col(k) = U.col(k * pd + a);
  return Y;
}

// sum_b |sum_{s',s} conj(Ue_{s's}) Y_{(s' b), s}|^2
double trace_overlap_sq(const MatC& Y, const MatC& Ue, Eigen::Index pd) {
  const Eigen::Index d = Ue.rows();
  MatC Z = Y * Ue.adjoint();  // Z_{(s'b), s'} summed over s'
  double tot = 0.0;
  for (Eigen::Index b = 0; b < pd; ++b) {
    cplx tr = 0.0;
    for (Eigen::Index sp = 0; sp < d; ++sp) tr += Z(sp * pd + b, sp);
    tot += std::norm(tr);
  }
  return tot;
}

}  // namespace

MatC SpinChannel::apply(const MatC& rho) const {
  MatC out = MatC::Zero(rho.rows(), rho.cols());
  for (const auto& K : kraus) out += K * rho * K.adjoint();
  return out;
}

SpinChannel channel_from_evolution(const MatC& U, const SpinPhononSpace& s, const ThermalState& th,
                                   double defect_tol) {
  if (U.rows() != s.dim() || U.cols() != s.dim()) throw DimensionError("propagator does not match the space");
  const Eigen::Index d = s.spin_dim(), pd = s.phonon_dim();
  SpinChannel ch;
  MatC sum = MatC::Zero(d, d);
  for (const auto& m : th.members) {
    if (m.phonon_index >= pd) throw DimensionError("thermal member outside the phonon space");
    MatC Y = spin_columns(U, s, m.phonon_index);
    for (Eigen::Index b = 0; b < pd; ++b) {
      MatC K(d, d);
      for (Eigen::Index sp = 0; sp < d; ++sp) K.row(sp) = std::sqrt(m.weight) * Y.row(sp * pd + b);
      sum += K.adjoint() * K;
      ch.kraus.push_back(std::move(K));
    }
  }
  ch.completeness_defect = (sum - MatC::Identity(d, d)).cwiseAbs().maxCoeff();
  if (ch.completeness_defect > defect_tol)
    throw TruncationError("channel is not trace preserving, defect " + std::to_string(ch.completeness_defect), 0);
  return ch;
}

SpinChannel unitary_channel(const MatC& U) {
  SpinChannel ch;
  ch.kraus.push_back(U);
  ch.completeness_defect = (U.adjoint() * U - MatC::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
  return ch;
}

SpinChannel depolarizing_channel(double p) {
  SpinChannel ch;
  MatC id = MatC::Identity(2, 2);
  ch.kraus.push_back(std::sqrt(1.0 - 0.75 * p) * id);
  for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z}) ch.kraus.push_back(std::sqrt(p / 4.0) * MatC(pauli_matrix(a)));
  MatC sum = MatC::Zero(2, 2);
  for (const auto& K : ch.kraus) sum += K.adjoint() * K;
  ch.completeness_defect = (sum - id).cwiseAbs().maxCoeff();
  return ch;
}

double haar_average_fidelity(const SpinChannel& ch, const MatC& Ue) {
  const double d = static_cast<double>(Ue.rows());
  if (ch.dim() != Ue.rows()) throw DimensionError("channel and target dimensions differ");
  double s = 0.0;
  for (const auto& K : ch.kraus) s += std::norm((Ue.adjoint() * K).trace());
  return (s + d) / (d * d + d);
}

SampledFidelity haar_fidelity_sampled(const SpinChannel& ch, const MatC& Ue, int samples, std::uint64_t seed) {
  if (ch.dim() != Ue.rows()) throw DimensionError("channel and target dimensions differ");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Eigen::Index d = Ue.rows();
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < samples; ++k) {
    VecC psi(d);
    for (Eigen::Index i = 0; i < d; ++i) psi(i) = cplx(g(rng), g(rng));
    psi.normalize();
    VecC target = Ue * psi;
    double f = 0.0;
    for (const auto& K : ch.kraus) f += std::norm(target.dot(K * psi));
    sum += f;
    sum2 += f * f;
  }
  SampledFidelity r;
  r.samples = samples;
  r.mean = sum / samples;
  double var = std::max(0.0, sum2 / samples - r.mean * r.mean);
  r.std_error = std::sqrt(var / std::max(1, samples - 1));
  return r;
}

double time_averaged_error(const std::vector<double>& t, const std::vector<double>& F) {
  if (t.size() != F.size() || t.size() < 2) throw DimensionError("fidelity series needs at least two points");
  std::vector<double> e(F.size());
  for (size_t k = 0; k < F.size(); ++k) e[k] = 1.0 - F[k];
  return trapezoid(t, e) / (t.back() - t.front());
}

ChannelScan channel_error_scan(const ChannelScanSetup& su) {
  const int N = su.modes.n_ions();
  const DriveSpec& d = su.drive;
  HamiltonianOptions ho;
  ho.n_max = su.n_max;
  OperatorExpr Hb = build_beatnote_hamiltonian(su.modes, d, ho);
  const SpinPhononSpace& sp = Hb.space;
  const Eigen::Index pd = sp.phonon_dim();
  ThermalState th = thermal_phonon_state(su.nbar, su.n_max);

  MatR J = coupling_matrix_sideband(su.modes, d);
  MatC Heff;
  if (su.target == EffectiveTarget::XYZ) {
    XYZ x = xyz_couplings(J, d.phi_s(), d.xi);
    Heff = xyz_pauli_sum(x.Jx, x.Jy, x.Jz).to_dense();
  } else {
    Heff = ising_pauli_sum(J, d.phi_s()).to_dense();
  }
  HermitianEigen ee = hermitian_eigen(Heff);

  ChannelScan out;
  out.J12 = J(0, 1);
  out.t_final = su.t_final > 0.0 ? su.t_final : pi / std::abs(out.J12);
  const int n = std::max(2, su.n_points);
  for (int k = 0; k < n; ++k) out.t.push_back(out.t_final * k / (n - 1));

  const bool static_route = d.xi == 0.0;
  HermitianEigen eh;
  std::vector<MatC> G;
  if (static_route) {
    eh = hermitian_eigen(MatC(Hb.static_part));
    for (const auto& m : th.members) G.push_back(spin_columns(MatC(eh.vectors.adjoint()), sp, m.phonon_index));
  }
  MatC Ufull = MatC::Identity(sp.dim(), sp.dim());
  const Eigen::Index dd = sp.spin_dim();
  for (int k = 0; k < n; ++k) {
    const double t = out.t[k];
    if (!static_route && k > 0) Ufull = dense_propagator(Hb, out.t[k - 1], t, su.prop).U * Ufull;
    MatC Ue = carrier_frame(t, d, N).adjoint() * expm_from_eigen(ee, t);
    VecC ph;
    if (static_route) ph = (cplx(0.0, -1.0) * t * eh.values.cast<cplx>()).array().exp().matrix();
    double tot = 0.0;
    MatC comp = MatC::Zero(dd, dd);
    for (size_t a = 0; a < th.members.size(); ++a) {
      const auto& m = th.members[a];
      MatC Y = static_route ? MatC(eh.vectors * (ph.asDiagonal() * G[a])) : spin_columns(Ufull, sp, m.phonon_index);
      tot += m.weight * trace_overlap_sq(Y, Ue, pd);
      comp += m.weight * Y.adjoint() * Y;
    }
    out.max_completeness_defect =
        std::max(out.max_completeness_defect, (comp - MatC::Identity(dd, dd)).cwiseAbs().maxCoeff());
    const double dsz = static_cast<double>(dd);
    out.F.push_back((tot + dsz) / (dsz * dsz + dsz));
  }
  out.eps_bar = time_averaged_error(out.t, out.F);
  return out;
}

}  // namespace tiqs
