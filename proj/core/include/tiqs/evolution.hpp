#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tiqs/hamiltonians.hpp"
#include "tiqs/linalg.hpp"
#include "tiqs/types.hpp"

namespace tiqs {

struct PropagateOptions {
  double tol = 1e-8;              // infidelity change allowed when the step is halved
  double phase_per_step = 0.25;   // initial dt * max_frequency
  int min_steps = 1;
  int max_doublings = 14;
  int order = 2;                  // 2: midpoint, 4: commutator-free Gauss pair
  bool store_states = true;
  KrylovOptions krylov;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<VecC> states;
  std::vector<int> steps;         // accepted steps per interval
  std::vector<double> halving_change;
  double norm_drift = 0.0;
};

Trajectory propagate(const OperatorExpr& H, const VecC& psi0, const std::vector<double>& t_grid,
                     const PropagateOptions& opts = {});

struct DenseResult {
  MatC U;
  int steps = 0;
  double halving_change = 0.0;
};
// full propagator on [t0, t1]; exact exponential when H is time-independent
DenseResult dense_propagator(const OperatorExpr& H, double t0, double t1, const PropagateOptions& opts = {});

struct EnsembleMember {
  Eigen::Index phonon_index;
  double weight;
};

struct ThermalState {
  std::vector<VecR> mode_populations;
  std::vector<EnsembleMember> members;
  double dropped_weight = 0.0;
  SpinPhononSpace space;  // phonon part only carries meaning
  MatR density_matrix() const;
};

// geometric populations per mode, renormalised on the cutoff
ThermalState thermal_phonon_state(const std::vector<double>& nbar, const std::vector<int>& n_max,
                                  double tail_tol = 1e-6, double member_cut = 1e-12);
int required_cutoff(double nbar, double tail_tol);

using StateMap = std::function<VecC(double t, const VecC& psi)>;
std::vector<double> measure(const Trajectory& traj, const SpC& observable, const StateMap& frame = {});
double expectation(const VecC& psi, const SpC& op);

struct EchoSeries {
  std::vector<double> t;
  std::vector<std::string> tags;
  // values[tag][spin][k]
  std::vector<std::vector<std::vector<double>>> values;
  double exchange_period = 0.0;
  double propagator_change = 0.0;
};

struct EchoSetup {
  NormalModeData modes;
  DriveSpec drive;
  std::vector<int> n_max;
  std::vector<double> nbar;
  int periods = -1;     // number of echo points, -1: cover one exchange period
  bool include_qim = true;
  // max-abs change of the one-period propagator under step halving
  PropagateOptions prop = [] {
    PropagateOptions p;
    p.tol = 1e-5;
    return p;
  }();
};

// spin-echo magnetisation series at t_k = 2 k (2 pi / Delta), exact versus XYZ and h0 = 0 Ising
EchoSeries magnetisation_echo(const EchoSetup& setup);

// sum_i exp(i pi/2 sigma^z_i) on the spin register
MatC echo_pulse(int N);

}  // namespace tiqs
