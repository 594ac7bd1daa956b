#include "tiqs/adiabatic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "tiqs/errors.hpp"
#include "tiqs/hamiltonians.hpp"
#include "tiqs/linalg.hpp"
#include "tiqs/spin_ops.hpp"

namespace tiqs {

namespace {

struct RampOps {
  MatC XX, YY, XYs, SX, FY;
};

RampOps ramp_ops(const MatR& J, const std::vector<int>& signs) {
  const int N = static_cast<int>(J.rows());
  PauliSum xx(N), yy(N), xy(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      xx.add_pair(J(i, j), i, Pauli::X, j, Pauli::X);
      yy.add_pair(J(i, j), i, Pauli::Y, j, Pauli::Y);
      xy.add_pair(J(i, j), i, Pauli::X, j, Pauli::Y);
      xy.add_pair(J(i, j), i, Pauli::Y, j, Pauli::X);
    }
  RampOps o;
  o.XX = xx.to_dense();
  o.YY = yy.to_dense();
  o.XYs = xy.to_dense();
  o.SX = MatC(total_spin_op(N, Pauli::X));
  // phi_d = -pi/2 in cos(phi_d) X - sin(phi_d) Y
  o.FY = field_pauli_sum(N, 1.0, -0.5 * pi, signs).to_dense();
  return o;
}

int stage_steps(const RampSchedule& s, double J12) {
  const double half = 0.5 * s.t_final;
  double dt = s.step / std::abs(J12);
  return std::max(s.min_steps, static_cast<int>(std::ceil(half / dt)));
}

VecC step(const MatC& H, double dt, const VecC& psi) { return apply_expm(hermitian_eigen(H), dt, psi); }

double parity_value(const MatC& P, const VecC& psi) { return std::real(psi.dot(P * psi)); }

void check_J(const RampSchedule& s, const MatR& J) {
  if (J.rows() != s.N || J.cols() != s.N) throw DimensionError("coupling matrix must be N x N");
  if (J(0, 1) == 0.0) throw ValidityError("J_12 must be non-zero");
}

}  // namespace

RampSchedule RampSchedule::from_periods(int N, double h0, int n_periods, double phi_final) {
  RampSchedule s;
  s.N = N;
  s.h0 = h0;
  s.t_final = n_periods * two_pi / h0;
  s.phi_final = phi_final;
  return s;
}

int RampSchedule::periods() const { return static_cast<int>(std::lround(t_final * h0 / two_pi)); }

std::vector<int> RampSchedule::field_signs() const {
  std::vector<int> sg(N, 1);
  if (parity() < 0)
    for (int i = 1; i < N; i += 2) sg[i] = -1;
  return sg;
}

double RampSchedule::field(double t) const { return h0 * (1.0 - 2.0 * t / t_final); }

double RampSchedule::phase(double t) const { return 2.0 * phi_final * (t - 0.5 * t_final) / t_final; }

void RampSchedule::validate() const {
  if (N < 2 || N % 2 != 0) throw ValidityError("ramp protocol needs even N");
  if (N > 20) throw DimensionError("ramp runs on the dense 2^N space, N <= 20");
  if (!(h0 > 0.0)) throw ValidityError("h0 must be positive");
  const double k = t_final * h0 / two_pi;
  if (!(k >= 1.0 - 1e-9) || std::abs(k - std::round(k)) > 1e-9 * k)
    throw ValidityError("t_f must be an integer multiple of 2 pi / h0");
  if (phi_final < 0.0 || phi_final > 0.5 * pi + 1e-12) throw ValidityError("phi_f must lie in [0, pi/2]");
  if (!(step > 0.0)) throw ValidityError("step must be positive");
}

VecC initial_state(int N) {
  if (N < 2 || N % 2 != 0) throw ValidityError("initial state defined for even N only");
  const bool stagger = (N / 2) % 2 == 1;
  std::vector<VecC> s;
  for (int i = 0; i < N; ++i) s.push_back(y_eigenstate(stagger && i % 2 == 1 ? +1 : -1));
  return product_state(s);
}

MatC parity_operator(int N) {
  return MatC(pauli_product(N, Pauli::Y));
}

RampResult run_stage1(const RampSchedule& s, const MatR& J) {
  s.validate();
  check_J(s, J);
  RampOps o = ramp_ops(J, s.field_signs());
  MatC P = parity_operator(s.N);
  RampResult r;
  VecC psi = initial_state(s.N);
  r.parity_initial = parity_value(P, psi);
  const int n = stage_steps(s, J(0, 1));
  const double dt = 0.5 * s.t_final / n;
  for (int k = 0; k < n; ++k) psi = step(o.XX + s.field((k + 0.5) * dt) * o.FY, dt, psi);
  r.steps = n;
  r.stage1 = psi;
  r.psi = psi;
  r.parity_stage1 = parity_value(P, psi);
  r.parity_final = r.parity_stage1;
  r.norm_drift = std::abs(psi.norm() - 1.0);
  return r;
}

RampResult run_stage2(const RampSchedule& s, const MatR& J, const RampResult& in) {
  s.validate();
  check_J(s, J);
  RampOps o = ramp_ops(J, s.field_signs());
  MatC P = parity_operator(s.N);
  RampResult r = in;
  VecC psi = in.stage1;
  const int n = stage_steps(s, J(0, 1));
  const double dt = 0.5 * s.t_final / n;
  // carrier frame: H_s(phi(t)) + h0 sum X
  for (int k = 0; k < n; ++k) {
    const double ph = s.phase(0.5 * s.t_final + (k + 0.5) * dt);
    const double c = std::cos(ph), sn = std::sin(ph);
    MatC H = c * c * o.XX + sn * sn * o.YY - c * sn * o.XYs + s.h0 * o.SX;
    psi = step(H, dt, psi);
  }
  r.steps = in.steps + n;
  r.psi = psi;
  r.parity_final = parity_value(P, psi);
  r.norm_drift = std::max(r.norm_drift, std::abs(psi.norm() - 1.0));
  return r;
}

RampResult run_ramp(const RampSchedule& s, const MatR& J) { return run_stage2(s, J, run_stage1(s, J)); }

XXZGround xxz_ground_state(const MatR& J, double phi_f, int parity, double tol) {
  const int N = static_cast<int>(J.rows());
  if (N > 20) throw DimensionError("xxz_ground_state supports N <= 20");
  if (parity != 1 && parity != -1) throw ValidityError("parity must be +1 or -1");
  XYZ x = xyz_couplings(J, phi_f, 0.0);
  MatC H = xyz_pauli_sum(x.Jx, x.Jy, x.Jz).to_dense();
  MatC P = parity_operator(N);
  HermitianEigen pe = hermitian_eigen(P);
  auto sector = [&](int p) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < pe.values.size(); ++k)
      if (std::abs(pe.values(k) - p) < 0.5) cols.push_back(k);
    MatC B(P.rows(), static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) B.col(k) = pe.vectors.col(cols[k]);
    HermitianEigen e = hermitian_eigen(MatC(B.adjoint() * H * B));
    SectorGround g;
    g.parity = p;
    g.energy = e.values(0);
    g.gap = e.values.size() > 1 ? e.values(1) - e.values(0) : 0.0;
    g.state = B * e.vectors.col(0);
    return g;
  };
  XXZGround out;
  out.target = sector(parity);
  out.other = sector(-parity);
  out.degenerate_across_sectors = std::abs(out.target.energy - out.other.energy) <= tol * std::max(1.0, std::abs(out.target.energy));
  return out;
}

double adiabatic_fidelity(const VecC& psi, const VecC& gs) {
  if (psi.size() != gs.size()) throw DimensionError("state dimensions differ");
  return std::norm(gs.dot(psi)) / (psi.squaredNorm() * gs.squaredNorm());
}

std::vector<RampGridPoint> ramp_grid(int N, const MatR& J, double h0, const std::vector<int>& nper,
                                     const std::vector<double>& phis, int threads, double step_size) {
  const int p = (N / 2) % 2 == 0 ? 1 : -1;
  std::vector<XXZGround> gs;
  for (double ph : phis) gs.push_back(xxz_ground_state(J, ph, p));
  std::vector<RampGridPoint> out(nper.size() * phis.size());
  std::atomic<size_t> next{0};
  std::mutex err_m;
  std::exception_ptr err;
  auto work = [&] {
    for (size_t a = next++; a < nper.size(); a = next++) {
      try {
        RampSchedule s = RampSchedule::from_periods(N, h0, nper[a], 0.0);
        s.step = step_size;
        RampResult r1 = run_stage1(s, J);
        for (size_t b = 0; b < phis.size(); ++b) {
          s.phi_final = phis[b];
          RampResult r = run_stage2(s, J, r1);
          RampGridPoint& g = out[a * phis.size() + b];
          g.n_periods = nper[a];
          g.phi_f = phis[b];
          g.fidelity = adiabatic_fidelity(r.psi, gs[b].target.state);
          g.fidelity_other = adiabatic_fidelity(r.psi, gs[b].other.state);
          g.parity_drift = std::abs(r.parity_final - r.parity_initial);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_m);
        if (!err) err = std::current_exception();
      }
    }
  };
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(nper.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < nt; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace tiqs
