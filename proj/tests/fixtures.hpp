#pragma once

#include "tiqs/couplings.hpp"
#include "tiqs/ion_crystal.hpp"
#include "tiqs/types.hpp"

namespace fx {

using namespace tiqs;

inline CrystalConfig two_ion_trap() {
  CrystalConfig c;
  c.N = 2;
  c.omega_z = two_pi * 1e6;
  c.omega_x = two_pi * 5e6;
  return c;
}

// two-ion drive used for the echo figure
inline DriveSpec echo_drive() {
  DriveSpec d;
  d.Omega_L = two_pi * 0.9e6;
  d.mu = two_pi * 5e6 - two_pi * 500e3;
  d.set_phases(pi / 3);
  d.h0 = two_pi * 2.5e3;
  d.xi = 0.09;
  d.Delta = two_pi * 10e3;
  return d;
}

inline MatR random_symmetric(int N, unsigned seed) {
  std::srand(seed);
  MatR J = MatR::Random(N, N);
  J = 0.5 * (J + J.transpose()).eval();
  J.diagonal().setZero();
  return J;
}

}  // namespace fx
