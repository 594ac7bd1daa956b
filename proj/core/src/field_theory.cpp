#include "tiqs/field_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tiqs/errors.hpp"
#include "tiqs/types.hpp"

namespace tiqs {

namespace {

const double inf = std::numeric_limits<double>::infinity();

void assemble(NlsmParams& p) {
  p.theta = std::fmod(two_pi * p.S, two_pi);
  if (p.odd_sum > 0.0 && p.chi > 0.0) {
    p.v = 2.0 * p.a * p.S * std::sqrt(p.odd_sum * p.chi);
    p.g = (2.0 / p.S) * std::sqrt(p.odd_sum / p.chi);
    p.stable = true;
  } else {
    p.v = 0.0;
    p.g = inf;
    p.stable = false;
  }
}

struct Sums {
  double odd = 0.0, chi = 0.0;
};

Sums partial(const std::function<double(int)>& Jt, int r_max) {
  Sums s;
  for (int k = 1; 2 * k - 1 <= r_max; ++k) {
    const int r1 = 2 * k - 1, r2 = 2 * k;
    const double j1 = Jt(r1);
    double pair = double(r1) * r1 * j1;
    if (r2 <= r_max) pair -= double(r2) * r2 * Jt(r2);
    s.odd += j1;
    s.chi += pair;
  }
  return s;
}

}  // namespace

double dirichlet_lambda(double s) {
  if (!(s > 1.0)) throw ValidityError("Dirichlet lambda diverges for s <= 1");
  return (1.0 - std::pow(2.0, -s)) * std::riemann_zeta(s);
}

double dirichlet_eta(double s) {
  if (s == 0.0) return 0.5;
  if (s == 1.0) return std::log(2.0);
  return (1.0 - std::pow(2.0, 1.0 - s)) * std::riemann_zeta(s);
}

NlsmParams nlsm_from_couplings(const std::function<double(int)>& Jt, double S, double a, int r_max,
                               double tail_tol) {
  if (r_max < 2) throw ValidityError("r_max must be at least 2");
  if (!(S > 0.0)) throw ValidityError("spin must be positive");
  if (Jt(1) <= 0.0) throw ValidityError("nearest-neighbour coupling must be antiferromagnetic");
  NlsmParams p;
  p.S = S;
  p.a = a;
  Sums full = partial(Jt, r_max);
  Sums half = partial(Jt, r_max / 2);
  p.odd_sum = full.odd;
  p.chi = full.chi;
  const double dodd = std::abs(full.odd - half.odd) / std::max(std::abs(full.odd), 1e-300);
  const double dchi = std::abs(full.chi - half.chi) / std::max(std::abs(full.chi), 1e-300);
  p.tail_bound = std::max(dodd, dchi);
  p.converged = p.tail_bound < tail_tol;
  assemble(p);
  return p;
}

CouplingG two_neighbor_g(double J1, double J2) {
  if (!(J1 > 0.0)) throw ValidityError("J1 must be positive");
  const double rad = 1.0 - 4.0 * J2 / J1;
  if (rad <= 0.0) return {inf, false};
  return {4.0 / std::sqrt(rad), true};
}

NlsmParams power_law_nlsm(double s, double J1, double a, double S) {
  if (s < 2.0) throw ValidityError("power-law NLSM sums diverge for s < 2");
  if (!(J1 > 0.0)) throw ValidityError("J1 must be positive");
  NlsmParams p;
  p.S = S;
  p.a = a;
  const double Jt1 = 4.0 * J1;
  if (std::isinf(s)) {
    p.odd_sum = p.chi = Jt1;
  } else {
    p.odd_sum = Jt1 * dirichlet_lambda(s);
    p.chi = Jt1 * dirichlet_eta(s - 2.0);
  }
  assemble(p);
  return p;
}

CouplingG trapped_ion_g(double lambda) {
  const double num = 3.5 * std::riemann_zeta(3.0) + 2.0 * lambda;
  const double den = std::log(2.0) - 2.0 * lambda;
  if (den <= 0.0 || num <= 0.0) return {inf, false};
  return {std::sqrt(num) / std::sqrt(den), true};
}

}  // namespace tiqs
