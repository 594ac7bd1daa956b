#pragma once

#include <vector>

#include "tiqs/types.hpp"

namespace tiqs {

struct RampSchedule {
  int N = 0;
  double h0 = 0.0;         // initial field h0(0) and carrier amplitude, rad/s
  double t_final = 0.0;    // s, integer multiple of 2 pi / h0
  double phi_final = 0.0;  // stage-2 end point of phi_s
  double step = 0.05;      // max dt * |J_12|
  int min_steps = 200;     // per stage

  static RampSchedule from_periods(int N, double h0, int n_periods, double phi_final);
  int periods() const;
  int parity() const { return (N / 2) % 2 == 0 ? 1 : -1; }
  std::vector<int> field_signs() const;
  double field(double t) const;      // h0 (1 - 2t/t_f) on [0, t_f/2]
  double phase(double t) const;      // 2 phi_f (t - t_f/2)/t_f on [t_f/2, t_f]
  void validate() const;
};

// |-y -y ...> for N/2 even, |-y +y -y ...> for N/2 odd
VecC initial_state(int N);
// prod_i sigma^y_i
MatC parity_operator(int N);

struct RampResult {
  VecC stage1;           // state at t_f / 2
  VecC psi;              // carrier-frame state at t_f (equal to the rotating frame up to sign)
  double parity_initial = 0.0;
  double parity_stage1 = 0.0;
  double parity_final = 0.0;
  int steps = 0;
  double norm_drift = 0.0;
};

RampResult run_ramp(const RampSchedule& s, const MatR& J);
// continue a stage-1 result through the phi_s ramp
RampResult run_stage2(const RampSchedule& s, const MatR& J, const RampResult& stage1);
RampResult run_stage1(const RampSchedule& s, const MatR& J);

struct SectorGround {
  int parity = 0;
  double energy = 0.0;
  double gap = 0.0;  // to the next level in the sector
  VecC state;
};

struct XXZGround {
  SectorGround target;
  SectorGround other;
  bool degenerate_across_sectors = false;
};

// XXZ model at xi = 0 with phi_s = phi_f, lowest state per prod sigma^y sector
XXZGround xxz_ground_state(const MatR& J, double phi_f, int parity, double degeneracy_tol = 1e-9);

double adiabatic_fidelity(const VecC& psi, const VecC& gs);

struct RampGridPoint {
  int n_periods = 0;
  double phi_f = 0.0;
  double fidelity = 0.0;        // against the target sector
  double fidelity_other = 0.0;  // against the other sector
  double parity_drift = 0.0;
};

std::vector<RampGridPoint> ramp_grid(int N, const MatR& J, double h0, const std::vector<int>& n_periods,
                                     const std::vector<double>& phi_f, int threads = 1, double step = 0.05);

}  // namespace tiqs
