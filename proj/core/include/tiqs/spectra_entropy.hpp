#pragma once

#include <vector>

#include "tiqs/linalg.hpp"
#include "tiqs/spin_ops.hpp"
#include "tiqs/types.hpp"

namespace tiqs {

struct GroundState {
  double energy = 0.0;
  VecC state;  // full 2^N space
  double residual = 0.0;
  bool used_sector = false;
  int sector_magnetization = 0;  // 2 S^z of the winning sector
  std::vector<double> ritz_values;
};

struct GroundStateOptions {
  LanczosOptions lanczos;
  double residual_tol = 1e-10;
  double commute_tol = 1e-12;
};

// basis states with the given number of up spins, ascending
std::vector<std::uint64_t> sector_basis(int N, int n_up);
SpC sector_hamiltonian(const PauliSum& H, const std::vector<std::uint64_t>& basis);
double sz_commutator_norm(const PauliSum& H);

GroundState ground_state(const PauliSum& H, const GroundStateOptions& opts = {});

// von Neumann entropy of the leftmost l spins, natural log
double block_entropy(const VecC& psi, int N, int l);

struct EntropyProfile {
  int N = 0;
  std::vector<int> l;
  std::vector<double> S;
  std::vector<double> y;
  std::vector<int> window;
  double c_eff = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the fit on the window
};

double chord_variable(int N, int l);  // log((2N/pi) sin(pi l/N))
EntropyProfile entropy_profile(const VecC& psi, int N);
// least squares S = (c/6) y + a on the listed block sizes
void fit_central_charge(EntropyProfile& p, const std::vector<int>& window);
std::vector<int> even_window(int lo, int hi);

// Jtilde_ij = f(|i - j|)
MatR distance_couplings(int N, double (*f)(int, double), double param, int r_cut = -1);
MatR nearest_neighbor_couplings(int N, double J = 1.0);

}  // namespace tiqs
