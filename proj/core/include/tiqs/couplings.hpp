#pragma once

#include <string>
#include <vector>

#include "tiqs/ion_crystal.hpp"
#include "tiqs/types.hpp"

namespace tiqs {

struct DriveSpec {
  double Omega_L = 0.0;  // rad/s
  double mu = 0.0;       // beatnote offset from the carrier, rad/s
  double phi_r = 0.0;
  double phi_b = 0.0;
  double h0 = 0.0;       // rad/s
  double Delta = 0.0;    // rad/s
  double xi = 0.0;
  double eta = 0.07;
  double omega_R = 0.0;  // rad/s, 0 means eta^2 omega_x
  bool debye_waller = false;

  double phi_s() const;
  double phi_m() const;
  // choose phi_r, phi_b for the requested spin and motional phases
  void set_phases(double phi_s, double phi_m = 0.0);
  double recoil(double omega_x) const { return omega_R > 0.0 ? omega_R : eta * eta * omega_x; }
  void validate() const;
};

struct CouplingParams {
  double J0 = 0.0;
  double lambda = 0.0;
  double xi0 = 0.0;  // m
  double x = 0.0;    // exp(-a0/xi0)
  double a0 = 0.0;
};

struct CouplingSet {
  MatR J;
  CouplingParams params;
  MatR Jx, Jy, Jz;
};

// detunings delta_n = omega_n - mu
VecR mode_detunings(const NormalModeData& m, const DriveSpec& d);
// F_in x0 = (Omega_L eta / 2) sqrt(omega_x/omega_n) M_in, optional Debye-Waller factor
MatC force_matrix(const NormalModeData& m, const DriveSpec& d);

// full beatnote mode sum including the off-resonant counter-rotating part
MatR coupling_matrix_numeric(const NormalModeData& m, const DriveSpec& d);
// resolved-sideband form J_ij = -sum_n F_in F_jn^* x0^2 / delta_n + c.c.
MatR coupling_matrix_sideband(const NormalModeData& m, const DriveSpec& d);

CouplingParams coupling_params(const DriveSpec& d, const NormalModeData& m);
CouplingParams coupling_params_from(double J0, double lambda, double a0);

double coupling_analytic(int r, int N, const CouplingParams& p);
double coupling_analytic_exponential(int r, const CouplingParams& p);
double coupling_analytic_dipolar(int r, int N, const CouplingParams& p);
// small-lambda form; Jtilde = 4 J
double coupling_small_lambda(int r, const CouplingParams& p);
double jtilde_small_lambda(int r, const CouplingParams& p);
// Jtilde_r with J0 = 1 as a function of lambda alone
double jtilde_eq13(int r, double lambda);

struct XYZ {
  MatR Jx, Jy, Jz;
};
XYZ xyz_couplings(const MatR& J, double phi_s, double xi);
CouplingSet make_coupling_set(const MatR& J, const CouplingParams& p, double phi_s, double xi);

struct ResonanceFlag {
  int mode;
  int m;
  double denominator;
};

struct ResidualCoupling {
  MatR lambda;      // (ion, mode), full m sum
  MatR lambda_m0;   // m = 0 estimate
  int m_max = 0;
  bool converged = false;
  double tail_change = 0.0;
  std::vector<ResonanceFlag> resonances;
};

// Bessel argument of the driven Pauli comb
double comb_bessel_argument(const DriveSpec& d);
ResidualCoupling residual_spin_phonon(const DriveSpec& d, const NormalModeData& m, int m_max = -1);

struct RegimeCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
  double margin() const { return limit != 0.0 ? value / limit : value; }
};

struct CombResonance {
  int mode = 0;
  int m = 0;
  double offset = 0.0;  // |2 h0 + m Delta| - omega_n, rad/s
  double ratio = 0.0;   // R_m
  bool flagged = false;
};

struct RegimeReport {
  std::vector<RegimeCheck> checks;
  std::vector<CombResonance> comb;
  bool all_pass() const;
  const RegimeCheck* find(const std::string& name) const;
  std::string summary() const;
};

// "much less than" is read as ratio <= much_less
RegimeReport validate_regime(const DriveSpec& d, const NormalModeData& m, const MatR& J,
                             const std::vector<double>& nbar = {}, double much_less = 0.1);

}  // namespace tiqs
