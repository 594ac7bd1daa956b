#include "tiqs/ion_crystal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tiqs/errors.hpp"

namespace tiqs {

void CrystalConfig::validate() const {
  if (N < 2) throw ValidityError("crystal needs N >= 2");
  if (!(omega_z > 0.0)) throw ValidityError("omega_z must be positive");
  if (!(omega_x > omega_z)) throw ValidityError("omega_x must exceed omega_z for a linear chain");
  if (!(mass > 0.0)) throw ValidityError("mass must be positive");
}

double length_unit(const CrystalConfig& c) {
  return std::cbrt(constants::coulomb_constant_e2 / (c.mass * c.omega_z * c.omega_z));
}

VecR equilibrium_residual(const VecR& u) {
  const Eigen::Index n = u.size();
  VecR f = u;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) continue;
      double d = u(j) - u(k);
      f(j) -= d / (std::abs(d) * d * d);
    }
  return f;
}

namespace {
MatR equilibrium_jacobian(const VecR& u) {
  const Eigen::Index n = u.size();
  MatR J = MatR::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) continue;
      double c = 2.0 / std::pow(std::abs(u(j) - u(k)), 3);
      J(j, j) += c;
      J(j, k) -= c;
    }
  return J;
}
}  // namespace

VecR solve_equilibrium(const CrystalConfig& c, const EquilibriumOptions& opts) {
  if (c.N < 2) throw ValidityError("crystal needs N >= 2");
  const int N = c.N;
  VecR u(N);
  const double s = 2.018 / std::pow(static_cast<double>(N), 0.559);
  for (int j = 0; j < N; ++j) u(j) = (j + 1 - 0.5 * (N + 1)) * s;
  double res = equilibrium_residual(u).lpNorm<Eigen::Infinity>();
  for (int it = 0; it < opts.max_iter; ++it) {
    if (res < opts.tol) break;
    VecR f = equilibrium_residual(u);
    VecR du = equilibrium_jacobian(u).ldlt().solve(-f);
    double step = 1.0;
    VecR trial = u + du;
    double r_trial = equilibrium_residual(trial).lpNorm<Eigen::Infinity>();
    for (int h = 0; h < 30 && !(r_trial < res); ++h) {
      step *= 0.5;
      trial = u + step * du;
      r_trial = equilibrium_residual(trial).lpNorm<Eigen::Infinity>();
    }
    if (!(r_trial < res)) {
      // below round-off: accept and stop
      if (res < 10 * opts.tol) break;
      throw SolverFailure("equilibrium solve stalled", res, it);
    }
    u = trial;
    res = r_trial;
  }
  // enforce the reflection symmetry exactly
  VecR sym(N);
  for (int j = 0; j < N; ++j) sym(j) = 0.5 * (u(j) - u(N - 1 - j));
  if (equilibrium_residual(sym).lpNorm<Eigen::Infinity>() <= res) u = sym;
  res = equilibrium_residual(u).lpNorm<Eigen::Infinity>();
  if (!(res < opts.tol)) throw SolverFailure("equilibrium solve did not converge", res, opts.max_iter);
  return u;
}

double cd_weight(int d, int N) { return (N % 2 == 0 && d == N / 2) ? 0.5 : 1.0; }

double cd_sum(int N) {
  double s = 0.0;
  for (int d = 1; d <= N / 2; ++d) s += cd_weight(d, N) / (static_cast<double>(d) * d * d);
  return s;
}

double stiffness(double a0, double omega_x, double mass) {
  return constants::coulomb_constant_e2 / (mass * omega_x * omega_x * a0 * a0 * a0);
}

double omega_z_for_spacing(int N, double a0, double mass) {
  CrystalConfig c{N, 1.0, 2.0, mass};
  VecR u = solve_equilibrium(c);
  double du = std::numeric_limits<double>::infinity();
  for (int j = 0; j + 1 < N; ++j) du = std::min(du, u(j + 1) - u(j));
  double lz = a0 / du;
  return std::sqrt(constants::coulomb_constant_e2 / (mass * lz * lz * lz));
}

MatR stiffness_matrix(const CrystalConfig& c, const VecR& u) {
  const int N = static_cast<int>(u.size());
  const double r = (c.omega_z / c.omega_x) * (c.omega_z / c.omega_x);
  MatR K = MatR::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    double diag = 1.0;
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      double k = r / std::pow(std::abs(u(i) - u(j)), 3);
      K(i, j) = k;
      diag -= k;
    }
    K(i, i) = diag;
  }
  return K;
}

NormalModeData transverse_modes(const CrystalConfig& c, const VecR& u) {
  c.validate();
  const int N = static_cast<int>(u.size());
  if (N != c.N) throw DimensionError("positions do not match N");
  MatR K = stiffness_matrix(c, u);
  Eigen::SelfAdjointEigenSolver<MatR> es(K);
  if (es.info() != Eigen::Success) throw Error("stiffness diagonalisation failed");
  NormalModeData m;
  m.positions = u;
  m.omega_x = c.omega_x;
  m.frequencies.resize(N);
  MatR V = es.eigenvectors();
  for (int n = 0; n < N; ++n) {
    double ev = es.eigenvalues()(n);
    if (!(ev > 0.0)) throw InstabilityError("zig-zag instability, transverse mode softened", c.omega_x / c.omega_z);
    m.frequencies(n) = c.omega_x * std::sqrt(ev);
    // deterministic sign: first significant component positive
    for (int j = 0; j < N; ++j)
      if (std::abs(V(j, n)) > 1e-8) {
        if (V(j, n) < 0) V.col(n) *= -1.0;
        break;
      }
  }
  m.displacements = V.cast<cplx>();
  double du = std::numeric_limits<double>::infinity();
  for (int j = 0; j + 1 < N; ++j) du = std::min(du, u(j + 1) - u(j));
  m.a0 = du * length_unit(c);
  m.beta_x = stiffness(m.a0, c.omega_x, c.mass);
  double rad = 1.0 - 2.0 * m.beta_x * cd_sum(N);
  m.omega_tilde_x = rad > 0 ? c.omega_x * std::sqrt(rad) : 0.0;
  return m;
}

NormalModeData transverse_modes(const CrystalConfig& c) { return transverse_modes(c, solve_equilibrium(c)); }

NormalModeData periodic_modes(int N, double a0, double beta_x, double omega_x) {
  if (N < 2 || N % 2 != 0) throw ValidityError("periodic model needs even N");
  const double S0 = cd_sum(N);
  const double rad = 1.0 - 2.0 * beta_x * S0;
  if (!(rad > 0.0)) throw InstabilityError("renormalised trap frequency is imaginary", 2.0 * beta_x * S0);
  NormalModeData m;
  m.periodic = true;
  m.a0 = a0;
  m.beta_x = beta_x;
  m.omega_x = omega_x;
  m.omega_tilde_x = omega_x * std::sqrt(rad);
  m.positions.resize(N);
  for (int j = 0; j < N; ++j) m.positions(j) = j;
  VecR w(N);
  for (int n = 0; n < N; ++n) {
    double qa = two_pi * n / N;
    double s = 0.0;
    for (int d = 1; d <= N / 2; ++d) s += cd_weight(d, N) * std::cos(qa * d) / (static_cast<double>(d) * d * d);
    double w2 = m.omega_tilde_x * m.omega_tilde_x + 2.0 * beta_x * omega_x * omega_x * s;
    if (!(w2 > 0.0)) throw InstabilityError("periodic band frequency is imaginary", w2 / (omega_x * omega_x));
    w(n) = std::sqrt(w2);
  }
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w(a) < w(b); });
  m.frequencies.resize(N);
  m.displacements.resize(N, N);
  for (int k = 0; k < N; ++k) {
    int n = order[k];
    m.frequencies(k) = w(n);
    for (int j = 0; j < N; ++j) m.displacements(j, k) = std::exp(I * (two_pi * n * (j + 1) / N)) / std::sqrt(double(N));
  }
  return m;
}

}  // namespace tiqs
