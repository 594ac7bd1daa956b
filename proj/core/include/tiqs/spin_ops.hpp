#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiqs/types.hpp"

namespace tiqs {

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

// Basis conventions shared by every module:
//   spin 0 is the most significant bit of the spin index, bit value 0 is |up> (sigma^z = +1);
//   full index = spin_index * phonon_dim + phonon_index;
//   mode 0 is the most significant Fock digit, Fock index ascending.

struct PauliString {
  cplx coeff{1.0, 0.0};
  std::uint64_t x_mask = 0;  // sites carrying X or Y
  std::uint64_t z_mask = 0;  // sites carrying Z or Y
  int n_y = 0;
};

inline std::uint64_t site_bit(int n_spins, int site) { return std::uint64_t{1} << (n_spins - 1 - site); }

class PauliSum {
 public:
  explicit PauliSum(int n_spins = 0) : n_(n_spins) {}

  int n_spins() const { return n_; }
  Eigen::Index dim() const { return Eigen::Index{1} << n_; }
  const std::vector<PauliString>& terms() const { return terms_; }

  PauliSum& add(cplx c, const std::vector<std::pair<int, Pauli>>& factors);
  PauliSum& add_single(cplx c, int i, Pauli a) { return add(c, {{i, a}}); }
  PauliSum& add_pair(cplx c, int i, Pauli a, int j, Pauli b) { return add(c, {{i, a}, {j, b}}); }
  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator*=(cplx s);

  void apply(const VecC& in, VecC& out) const;
  SpC to_sparse() const;
  MatC to_dense() const { return MatC(to_sparse()); }

 private:
  int n_;
  std::vector<PauliString> terms_;
};

SpC pauli_matrix(Pauli a);

// single Pauli on an N-spin register
SpC spin_op(int n_spins, int site, Pauli a);
// sigma^theta = sigma^+ e^{i theta} + h.c. = cos(theta) X - sin(theta) Y
SpC spin_phase_op(int n_spins, int site, double theta);
SpC total_spin_op(int n_spins, Pauli a);
// tensor product of single-site Paulis
SpC pauli_product(int n_spins, Pauli a);

VecC product_state(const std::vector<VecC>& single_site);
VecC y_eigenstate(int sign);
VecC x_eigenstate(int sign);

SpC kron(const SpC& a, const SpC& b);
MatC kron(const MatC& a, const MatC& b);
SpC sparse_identity(Eigen::Index n);

struct SpinPhononSpace {
  int n_spins = 0;
  std::vector<int> n_max;  // Fock cutoff per mode, levels 0..n_max

  Eigen::Index spin_dim() const { return Eigen::Index{1} << n_spins; }
  Eigen::Index phonon_dim() const;
  Eigen::Index dim() const { return spin_dim() * phonon_dim(); }
  int n_modes() const { return static_cast<int>(n_max.size()); }
  std::vector<int> fock_digits(Eigen::Index phonon_index) const;
  Eigen::Index phonon_index(const std::vector<int>& digits) const;
};

SpC annihilation(const SpinPhononSpace& s, int mode);
SpC number_op(const SpinPhononSpace& s, int mode);
SpC embed_spin(const SpinPhononSpace& s, const SpC& spin_operator);
SpC embed_phonon(const SpinPhononSpace& s, const SpC& phonon_operator);
// single-mode operator on the full phonon register
SpC phonon_mode_op(const SpinPhononSpace& s, int mode, const SpC& single_mode);

}  // namespace tiqs
