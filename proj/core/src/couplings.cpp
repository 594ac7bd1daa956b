#include "tiqs/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tiqs/errors.hpp"
#include "tiqs/special_functions.hpp"

namespace tiqs {

double DriveSpec::phi_s() const { return 0.5 * (phi_r + phi_b) + 0.5 * pi; }
double DriveSpec::phi_m() const { return 0.5 * (phi_r - phi_b); }

void DriveSpec::set_phases(double ps, double pm) {
  phi_r = ps - 0.5 * pi + pm;
  phi_b = ps - 0.5 * pi - pm;
}

void DriveSpec::validate() const {
  if (!(xi >= 0.0 && xi < 0.5)) throw ValidityError("sideband tone ratio xi must lie in [0, 1/2)");
  if (h0 < 0.0 || Delta < 0.0) throw ValidityError("h0 and Delta must be non-negative");
  if (Omega_L < 0.0) throw ValidityError("Omega_L must be non-negative");
  if (!(eta > 0.0)) throw ValidityError("Lamb-Dicke parameter must be positive");
}

VecR mode_detunings(const NormalModeData& m, const DriveSpec& d) {
  return (m.frequencies.array() - d.mu).matrix();
}

MatC force_matrix(const NormalModeData& m, const DriveSpec& d) {
  const int N = m.n_ions(), M = m.n_modes();
  MatC F(N, M);
  VecR dw = VecR::Ones(N);
  if (d.debye_waller) {
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (int n = 0; n < M; ++n) s += std::norm(m.displacements(i, n)) * d.eta * d.eta * m.omega_x / m.frequencies(n);
      dw(i) = std::exp(-0.5 * s);
    }
  }
  for (int i = 0; i < N; ++i)
    for (int n = 0; n < M; ++n)
      F(i, n) = 0.5 * d.Omega_L * d.eta * std::sqrt(m.omega_x / m.frequencies(n)) * m.displacements(i, n) * dw(i);
  return F;
}

MatR coupling_matrix_numeric(const NormalModeData& m, const DriveSpec& d) {
  const int N = m.n_ions(), M = m.n_modes();
  const double wr = d.recoil(m.omega_x);
  VecR den(M);
  for (int n = 0; n < M; ++n) {
    den(n) = d.mu * d.mu - m.frequencies(n) * m.frequencies(n);
    if (std::abs(den(n)) <= 1e-12 * d.mu * d.mu) throw ResonanceError("beatnote resonant with a transverse mode", n);
  }
  VecR dw = VecR::Ones(N);
  if (d.debye_waller) {
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (int n = 0; n < M; ++n) s += std::norm(m.displacements(i, n)) * d.eta * d.eta * m.omega_x / m.frequencies(n);
      dw(i) = std::exp(-0.5 * s);
    }
  }
  MatR J = MatR::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      double s = 0.0;
      for (int n = 0; n < M; ++n) s += std::real(m.displacements(i, n) * std::conj(m.displacements(j, n))) / den(n);
      J(i, j) = J(j, i) = d.Omega_L * d.Omega_L * wr * s * dw(i) * dw(j);
    }
  return J;
}

MatR coupling_matrix_sideband(const NormalModeData& m, const DriveSpec& d) {
  const int N = m.n_ions(), M = m.n_modes();
  MatC F = force_matrix(m, d);
  VecR dn = mode_detunings(m, d);
  for (int n = 0; n < M; ++n)
    if (dn(n) == 0.0) throw ResonanceError("zero sideband detuning", n);
  MatR J = MatR::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      double s = 0.0;
      for (int n = 0; n < M; ++n) s += std::real(F(i, n) * std::conj(F(j, n))) / dn(n);
      J(i, j) = J(j, i) = -2.0 * s;
    }
  return J;
}

CouplingParams coupling_params_from(double J0, double lambda, double a0) {
  if (!(std::abs(lambda) < 1.0)) throw ValidityError("|lambda| >= 1: force inside or too close to the phonon band");
  CouplingParams p;
  p.J0 = J0;
  p.lambda = lambda;
  p.a0 = a0;
  if (lambda == 0.0) {
    p.x = 0.0;
    p.xi0 = 0.0;
  } else {
    p.x = (1.0 - std::sqrt(1.0 - lambda * lambda)) / std::abs(lambda);
    p.xi0 = -a0 / std::log(p.x);
  }
  return p;
}

CouplingParams coupling_params(const DriveSpec& d, const NormalModeData& m) {
  const double den = d.mu * d.mu - m.omega_tilde_x * m.omega_tilde_x;
  if (den == 0.0) throw ValidityError("beatnote equals the renormalised trap frequency");
  const double J0 = d.Omega_L * d.Omega_L * d.recoil(m.omega_x) / (2.0 * den);
  const double lambda = 2.0 * m.beta_x * m.omega_x * m.omega_x / den;
  return coupling_params_from(J0, lambda, m.a0);
}

namespace {
double sgn_pow(double lambda, int k) {
  if (lambda >= 0.0) return 1.0;
  return (k % 2 == 0) ? 1.0 : -1.0;
}
}  // namespace

double coupling_analytic_exponential(int r, const CouplingParams& p) {
  r = std::abs(r);
  return 2.0 * std::abs(p.J0) * sgn_pow(p.lambda, 1 + r) * std::pow(p.x, r);
}

double coupling_analytic_dipolar(int r, int N, const CouplingParams& p) {
  r = std::abs(r);
  if (r < 2) return 0.0;
  const double l2 = 1.0 - p.lambda * p.lambda;
  const double sq = std::sqrt(l2);
  double s = 0.0;
  for (int dr = 2 - r; dr <= N / 2 - r; ++dr) {
    const int d = r + dr;
    const int adr = std::abs(dr);
    s += sgn_pow(p.lambda, 1 + adr) * cd_weight(d, N) / (static_cast<double>(d) * d * d) * (sq + adr * l2) /
         (l2 * l2) * std::pow(p.x, adr);
  }
  return std::abs(p.J0 * p.lambda) * s;
}

double coupling_analytic(int r, int N, const CouplingParams& p) {
  if (!(std::abs(p.lambda) < 1.0)) throw ValidityError("|lambda| >= 1");
  if (std::abs(r) < 1 || std::abs(r) > N / 2) throw DimensionError("analytic coupling needs 1 <= r <= N/2");
  return coupling_analytic_exponential(r, p) + coupling_analytic_dipolar(r, N, p);
}

double coupling_small_lambda(int r, const CouplingParams& p) {
  r = std::abs(r);
  double v = std::abs(p.J0 * p.lambda) / (static_cast<double>(r) * r * r);
  if (r >= 2) v += 2.0 * std::abs(p.J0) * sgn_pow(p.lambda, 1 + r) * std::pow(p.x, r);
  return v;
}

double jtilde_small_lambda(int r, const CouplingParams& p) { return 4.0 * coupling_small_lambda(r, p); }

double jtilde_eq13(int r, double lambda) { return jtilde_small_lambda(r, coupling_params_from(1.0, lambda, 1.0)); }

XYZ xyz_couplings(const MatR& J, double phi_s, double xi) {
  if (!(xi < 0.5)) throw ValidityError("xyz couplings need xi < 1/2");
  const double c2 = std::cos(phi_s) * std::cos(phi_s);
  const double s2 = std::sin(phi_s) * std::sin(phi_s);
  const double j1 = bessel_j(1, xi);
  return {J * c2, J * (0.5 * s2 * (1.0 - j1)), J * (0.5 * s2 * (1.0 + j1))};
}

CouplingSet make_coupling_set(const MatR& J, const CouplingParams& p, double phi_s, double xi) {
  XYZ x = xyz_couplings(J, phi_s, xi);
  return {J, p, x.Jx, x.Jy, x.Jz};
}

double comb_bessel_argument(const DriveSpec& d) { return d.Delta > 0.0 ? 2.0 * d.xi * d.h0 / d.Delta : 0.0; }

namespace {
struct ResidualSum {
  MatR lambda;
  std::vector<ResonanceFlag> flags;
};

ResidualSum residual_sum(const DriveSpec& d, const MatC& F, const VecR& dn, int m_max) {
  const double arg = comb_bessel_argument(d);
  const double s2 = std::sin(d.phi_s()) * std::sin(d.phi_s());
  ResidualSum out;
  out.lambda = MatR::Zero(F.rows(), F.cols());
  for (int n = 0; n < F.cols(); ++n) {
    double s = 0.0;
    for (int m = -m_max; m <= m_max; ++m) {
      double jm = bessel_j(m, arg);
      if (jm == 0.0) continue;
      double nu = m * d.Delta + 2.0 * d.h0;
      double den = dn(n) * dn(n) - nu * nu;
      if (std::abs(den) <= 1e-9 * dn(n) * dn(n)) {
        out.flags.push_back({n, m, den});
        continue;
      }
      s += jm * jm * nu / den;
    }
    for (int i = 0; i < F.rows(); ++i) out.lambda(i, n) = s2 * std::norm(F(i, n)) * s;
  }
  return out;
}
}  // namespace

ResidualCoupling residual_spin_phonon(const DriveSpec& d, const NormalModeData& m, int m_max) {
  const double arg = comb_bessel_argument(d);
  if (m_max < 0) m_max = (d.xi == 0.0) ? 0 : bessel_cutoff(arg);
  MatC F = force_matrix(m, d);
  VecR dn = mode_detunings(m, d);
  ResidualCoupling rc;
  rc.m_max = m_max;
  ResidualSum a = residual_sum(d, F, dn, m_max);
  ResidualSum b = residual_sum(d, F, dn, m_max + 4);
  rc.lambda = a.lambda;
  rc.resonances = a.flags;
  double scale = std::max(a.lambda.cwiseAbs().maxCoeff(), 1e-300);
  rc.tail_change = (b.lambda - a.lambda).cwiseAbs().maxCoeff() / scale;
  rc.converged = rc.tail_change < 1e-10 || a.lambda.cwiseAbs().maxCoeff() == 0.0;
  const double s2 = std::sin(d.phi_s()) * std::sin(d.phi_s());
  const double j0 = bessel_j(0, arg);
  rc.lambda_m0 = MatR::Zero(F.rows(), F.cols());
  for (int i = 0; i < F.rows(); ++i)
    for (int n = 0; n < F.cols(); ++n)
      rc.lambda_m0(i, n) = s2 * std::norm(F(i, n)) * j0 * j0 * 2.0 * d.h0 / (dn(n) * dn(n));
  return rc;
}

bool RegimeReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  for (const auto& c : comb)
    if (c.flagged) return false;
  return true;
}

const RegimeCheck* RegimeReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string RegimeReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << c.name << "=" << (c.pass ? "pass" : "FAIL") << "(" << c.value << "/" << c.limit << ") ";
  int flagged = 0;
  for (const auto& c : comb) flagged += c.flagged;
  os << "comb_flags=" << flagged;
  return os.str();
}

RegimeReport validate_regime(const DriveSpec& d, const NormalModeData& m, const MatR& J,
                             const std::vector<double>& nbar, double ml) {
  RegimeReport rep;
  MatC F = force_matrix(m, d);
  VecR dn = mode_detunings(m, d);
  const int M = m.n_modes();
  double min_dn = dn.cwiseAbs().minCoeff();
  double max_dn = dn.cwiseAbs().maxCoeff();

  double a12 = 0.0;
  for (int n = 0; n < M; ++n) {
    double nb = n < static_cast<int>(nbar.size()) ? nbar[n] : 0.0;
    for (int i = 0; i < F.rows(); ++i) a12 = std::max(a12, std::abs(F(i, n)) * std::sqrt(1.0 + nb) / std::abs(dn(n)));
  }
  rep.checks.push_back({"force_far_detuned", a12, ml, a12 <= ml});

  double carrier = std::max(d.h0, d.Delta);
  rep.checks.push_back({"carrier_below_detuning", carrier / min_dn, ml, carrier / min_dn <= ml});
  rep.checks.push_back({"detuning_below_trap", max_dn / m.omega_x, ml, max_dn / m.omega_x <= ml});

  double same_order = (d.h0 > 0 && d.Delta > 0) ? std::max(d.h0 / d.Delta, d.Delta / d.h0) : 0.0;
  rep.checks.push_back({"h0_same_order_as_Delta", same_order, 1.0 / ml, d.h0 > 0 && d.Delta > 0 && same_order <= 1.0 / ml});

  rep.checks.push_back({"xi_below_half", d.xi, 0.5, d.xi < 0.5});

  double xyz = d.Delta > 0 ? std::abs(d.Delta - 4.0 * d.h0) / d.Delta : 1.0;
  rep.checks.push_back({"xyz_resonance_Delta_4h0", xyz, 1e-9, xyz <= 1e-9});

  double jmax = J.cwiseAbs().maxCoeff();
  double a19 = d.h0 > 0 ? jmax / (2.0 * d.h0) : std::numeric_limits<double>::infinity();
  rep.checks.push_back({"coupling_below_2h0", a19, ml, a19 <= ml});

  // comb nu_{+-,m} = +-(2 h0 + m Delta) against each motional sideband
  if (d.Delta > 0.0) {
    const double arg = comb_bessel_argument(d);
    const double j0 = std::abs(bessel_j(0, arg));
    const double fmax = F.cwiseAbs().maxCoeff();
    for (int n = 0; n < M; ++n) {
      int mres = static_cast<int>(std::lround((m.frequencies(n) - 2.0 * d.h0) / d.Delta));
      CombResonance c;
      c.mode = n;
      c.m = mres;
      c.offset = std::abs(2.0 * d.h0 + mres * d.Delta) - m.frequencies(n);
      c.ratio = j0 > 0 ? std::abs(bessel_j(mres, arg)) / j0 : 0.0;
      c.flagged = c.ratio > 1e-3 && std::abs(c.offset) < 10.0 * std::max(fmax, jmax);
      rep.comb.push_back(c);
    }
  }
  return rep;
}

}  // namespace tiqs
