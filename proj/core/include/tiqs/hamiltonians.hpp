#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tiqs/couplings.hpp"
#include "tiqs/ion_crystal.hpp"
#include "tiqs/spin_ops.hpp"
#include "tiqs/types.hpp"

namespace tiqs {

using Coefficient = std::function<cplx(double)>;

struct TimeTerm {
  SpC op;
  Coefficient coeff;
  std::string label;
};

// H(t) = static_part + sum_k coeff_k(t) op_k
class OperatorExpr {
 public:
  OperatorExpr() = default;
  explicit OperatorExpr(SpinPhononSpace s);

  SpinPhononSpace space;
  SpC static_part;
  std::vector<TimeTerm> terms;
  // largest angular frequency present in the coefficients, step-size hint
  double max_frequency = 0.0;

  Eigen::Index dim() const { return space.dim(); }
  bool time_dependent() const { return !terms.empty(); }
  void add_static(const SpC& op);
  void add_term(const SpC& op, Coefficient f, std::string label = {});
  // f A + conj(f) A^dagger
  void add_hermitian_pair(const SpC& A, const Coefficient& f, const std::string& label = {});

  SpC evaluate(double t) const;
  MatC evaluate_dense(double t) const { return MatC(evaluate(t)); }
  double hermiticity_defect(double t) const;
};

struct HamiltonianOptions {
  std::vector<int> n_max;       // Fock cutoff per mode
  double omega0 = 0.0;          // qubit frequency used by the lab-frame builder, rad/s
  Eigen::Index max_dim = Eigen::Index{1} << 22;
};

SpinPhononSpace make_space(int n_spins, const HamiltonianOptions& o);

// H0 + H_MS (beatnote tones) + three-tone carrier
OperatorExpr build_lab_hamiltonian(const NormalModeData& modes, const DriveSpec& d, const HamiltonianOptions& o);
// interaction picture with respect to H0
OperatorExpr build_interaction_hamiltonian(const NormalModeData& modes, const DriveSpec& d,
                                           const HamiltonianOptions& o);
// frame co-rotating with the beatnote: sum delta_n a^dag a + static force + modulated carrier
OperatorExpr build_beatnote_hamiltonian(const NormalModeData& modes, const DriveSpec& d,
                                        const HamiltonianOptions& o);
// phonon-only part of H0 and of the beatnote frame
SpC free_phonon_hamiltonian(const SpinPhononSpace& s, const VecR& freqs);

// coefficients of (sigma^x, sigma^y, sigma^z) in U(t) sigma^{phi_s} U(t)^dagger
std::array<double, 3> driven_pauli(double t, const DriveSpec& d, int m_max = -1);
std::array<double, 3> driven_pauli_exact(double t, const DriveSpec& d);
double carrier_angle(double t, const DriveSpec& d);

enum class EffectiveKind { XYZ, QIM, MODULATED_ISING, LRHM_XXZ };

struct EffectiveModelSpec {
  EffectiveKind kind = EffectiveKind::XYZ;
  int N = 0;
  MatR J;               // Ising, modulated Ising, LRHM (as Jtilde)
  MatR Jx, Jy, Jz;      // XYZ
  double phi_s = 0.0;
  double h0 = 0.0;
  double phi_d = std::numeric_limits<double>::quiet_NaN();  // NaN: phi_s - pi/2
  std::vector<int> field_signs;                              // per-site field sign, default all +1
  std::function<double(double)> field_profile;               // QIM field h(t), default h0
  std::function<double(double)> phi_s_profile;               // modulated Ising phase phi_s(t)
  DriveSpec drive;                                           // modulated Ising carrier parameters
  double anisotropy = 1.0;                                   // LRHM_XXZ S^z S^z weight
};

OperatorExpr build_effective(const EffectiveModelSpec& spec);
// spin-only Pauli sums for time-independent models
PauliSum xyz_pauli_sum(const MatR& Jx, const MatR& Jy, const MatR& Jz);
PauliSum ising_pauli_sum(const MatR& J, double phi);
PauliSum field_pauli_sum(int N, double h, double phi_d, const std::vector<int>& signs = {});
PauliSum heisenberg_pauli_sum(const MatR& Jtilde, double anisotropy = 1.0);

struct FrameUnitaries {
  VecC U0_diag;  // e^{-i t H0} on the full spin-phonon basis
  MatC Uhat;     // carrier frame on the spin register
};

// exp(i theta sum sigma^x), theta = h0 (t + xi sin(Delta t)/Delta)
MatC carrier_frame(double t, const DriveSpec& d, int N);
FrameUnitaries frame_unitaries(double t, const DriveSpec& d, const NormalModeData& modes,
                               const SpinPhononSpace& s, double omega0 = 0.0);

// exp(-i H t) diagonal phases for a diagonal sparse H
VecC diagonal_phases(const SpC& H, double t);

}  // namespace tiqs
