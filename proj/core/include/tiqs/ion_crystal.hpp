#pragma once

#include "tiqs/constants.hpp"
#include "tiqs/types.hpp"

namespace tiqs {

struct CrystalConfig {
  int N = 2;
  double omega_z = 0.0;  // rad/s
  double omega_x = 0.0;  // rad/s
  double mass = constants::yb171_mass;

  void validate() const;
};

struct NormalModeData {
  VecR positions;     // units of l_z (exact chain) or a0 (periodic model)
  VecR frequencies;   // rad/s, ascending
  MatC displacements; // M(j, n)
  bool periodic = false;
  double a0 = 0.0;    // m
  double beta_x = 0.0;
  double omega_tilde_x = 0.0;
  double omega_x = 0.0;

  int n_ions() const { return static_cast<int>(displacements.rows()); }
  int n_modes() const { return static_cast<int>(frequencies.size()); }
};

struct EquilibriumOptions {
  double tol = 1e-12;
  int max_iter = 200;
};

double length_unit(const CrystalConfig& c);
// dimensionless force residual of u_j - sum_k (u_j-u_k)/|u_j-u_k|^3
VecR equilibrium_residual(const VecR& u);
VecR solve_equilibrium(const CrystalConfig& c, const EquilibriumOptions& opts = {});
NormalModeData transverse_modes(const CrystalConfig& c, const VecR& positions);
NormalModeData transverse_modes(const CrystalConfig& c);
NormalModeData periodic_modes(int N, double a0, double beta_x, double omega_x);

// c_d = 1 except c_{N/2} = 1/2
double cd_weight(int d, int N);
// sum_{d=1}^{N/2} c_d / d^3
double cd_sum(int N);
double stiffness(double a0, double omega_x, double mass);
// axial frequency giving a target minimum spacing
double omega_z_for_spacing(int N, double a0, double mass);
// transverse mass-weighted stiffness matrix K / omega_x^2
MatR stiffness_matrix(const CrystalConfig& c, const VecR& positions);

}  // namespace tiqs
