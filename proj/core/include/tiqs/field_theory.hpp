#pragma once

#include <functional>

namespace tiqs {

struct NlsmParams {
  double v = 0.0;      // units of a * Jtilde
  double g = 0.0;
  double theta = 0.0;  // 2 pi S reduced to [0, 2 pi)
  double S = 0.5;
  double a = 1.0;
  double odd_sum = 0.0;  // sum_{r odd} Jtilde_r
  double chi = 0.0;      // sum_r (-1)^{r+1} r^2 Jtilde_r
  double tail_bound = 0.0;
  bool converged = true;
  bool stable = true;  // false when the radicand is not positive, g -> infinity
};

struct CouplingG {
  double g = 0.0;
  bool stable = true;
};

// pairwise partial sums (2k-1, 2k) up to r_max; tail bound from the change between r_max/2 and r_max
NlsmParams nlsm_from_couplings(const std::function<double(int)>& Jtilde, double S, double a, int r_max,
                               double tail_tol = 1e-6);
// S = 1/2, Jtilde_r = Jtilde_1 delta_r1 + Jtilde_2 delta_r2
CouplingG two_neighbor_g(double J1, double J2);
// Jtilde_r = 4 J1 / r^s through Dirichlet lambda and eta closed forms, Abel value eta(0) = 1/2 at s = 2
NlsmParams power_law_nlsm(double s, double J1, double a, double S = 0.5);
// sqrt(7 zeta(3)/2 + 2 lambda) / sqrt(log 2 - 2 lambda)
CouplingG trapped_ion_g(double lambda);

double dirichlet_lambda(double s);  // (1 - 2^-s) zeta(s), s > 1
double dirichlet_eta(double s);     // (1 - 2^{1-s}) zeta(s), eta(0) = 1/2

}  // namespace tiqs
