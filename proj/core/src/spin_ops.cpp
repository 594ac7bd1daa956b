#include "tiqs/spin_ops.hpp"

#include <bit>
#include <cmath>

#include "tiqs/errors.hpp"

namespace tiqs {

namespace {
cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace

PauliSum& PauliSum::add(cplx c, const std::vector<std::pair<int, Pauli>>& factors) {
  PauliString s;
  s.coeff = c;
  for (auto [site, a] : factors) {
    if (site < 0 || site >= n_) throw DimensionError("pauli site out of range");
    std::uint64_t b = site_bit(n_, site);
    if ((s.x_mask | s.z_mask) & b) throw DimensionError("repeated site in pauli string");
    if (a == Pauli::X || a == Pauli::Y) s.x_mask |= b;
    if (a == Pauli::Z || a == Pauli::Y) s.z_mask |= b;
    if (a == Pauli::Y) ++s.n_y;
  }
  if (c != cplx(0.0)) terms_.push_back(s);
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  if (o.n_ != n_) throw DimensionError("pauli sums on different registers");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

void PauliSum::apply(const VecC& in, VecC& out) const {
  const std::uint64_t d = static_cast<std::uint64_t>(dim());
  out.setZero(in.size());
  for (const auto& t : terms_) {
    const cplx c = t.coeff * i_pow(t.n_y);
    for (std::uint64_t s = 0; s < d; ++s) {
      const double sign = (std::popcount(s & t.z_mask) & 1) ? -1.0 : 1.0;
      out(static_cast<Eigen::Index>(s ^ t.x_mask)) += c * sign * in(static_cast<Eigen::Index>(s));
    }
  }
}

SpC PauliSum::to_sparse() const {
  const std::uint64_t d = static_cast<std::uint64_t>(dim());
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(terms_.size() * d);
  for (const auto& t : terms_) {
    const cplx c = t.coeff * i_pow(t.n_y);
    for (std::uint64_t s = 0; s < d; ++s) {
      const double sign = (std::popcount(s & t.z_mask) & 1) ? -1.0 : 1.0;
      trip.emplace_back(static_cast<int>(s ^ t.x_mask), static_cast<int>(s), c * sign);
    }
  }
  SpC m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune(cplx(0.0), 0.0);
  return m;
}

SpC pauli_matrix(Pauli a) { return PauliSum(1).add_single(1.0, 0, a).to_sparse(); }

SpC spin_op(int n, int site, Pauli a) {
  if (a == Pauli::I) return sparse_identity(Eigen::Index{1} << n);
  return PauliSum(n).add_single(1.0, site, a).to_sparse();
}

SpC spin_phase_op(int n, int site, double theta) {
  PauliSum p(n);
  p.add_single(std::cos(theta), site, Pauli::X).add_single(-std::sin(theta), site, Pauli::Y);
  return p.to_sparse();
}

SpC total_spin_op(int n, Pauli a) {
  PauliSum p(n);
  for (int i = 0; i < n; ++i) p.add_single(1.0, i, a);
  return p.to_sparse();
}

SpC pauli_product(int n, Pauli a) {
  std::vector<std::pair<int, Pauli>> f;
  for (int i = 0; i < n; ++i) f.emplace_back(i, a);
  return PauliSum(n).add(1.0, f).to_sparse();
}

VecC product_state(const std::vector<VecC>& single) {
  VecC v = VecC::Ones(1);
  for (const auto& s : single) {
    VecC nv(v.size() * s.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) nv.segment(i * s.size(), s.size()) = v(i) * s;
    v = std::move(nv);
  }
  return v;
}

VecC y_eigenstate(int sign) {
  VecC v(2);
  v << 1.0, cplx(0.0, sign >= 0 ? 1.0 : -1.0);
  return v / std::sqrt(2.0);
}

VecC x_eigenstate(int sign) {
  VecC v(2);
  v << 1.0, (sign >= 0 ? 1.0 : -1.0);
  return v / std::sqrt(2.0);
}

SpC kron(const SpC& a, const SpC& b) {
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SpC::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SpC::InnerIterator ib(b, kb); ib; ++ib)
          trip.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                            static_cast<int>(ia.col() * b.cols() + ib.col()), ia.value() * ib.value());
  SpC m(a.rows() * b.rows(), a.cols() * b.cols());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

MatC kron(const MatC& a, const MatC& b) {
  MatC m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return m;
}

SpC sparse_identity(Eigen::Index n) {
  SpC m(n, n);
  m.setIdentity();
  return m;
}

Eigen::Index SpinPhononSpace::phonon_dim() const {
  Eigen::Index d = 1;
  for (int c : n_max) d *= (c + 1);
  return d;
}

std::vector<int> SpinPhononSpace::fock_digits(Eigen::Index p) const {
  std::vector<int> dig(n_max.size());
  for (int m = n_modes() - 1; m >= 0; --m) {
    dig[m] = static_cast<int>(p % (n_max[m] + 1));
    p /= (n_max[m] + 1);
  }
  return dig;
}

Eigen::Index SpinPhononSpace::phonon_index(const std::vector<int>& dig) const {
  Eigen::Index p = 0;
  for (int m = 0; m < n_modes(); ++m) p = p * (n_max[m] + 1) + dig[m];
  return p;
}

SpC phonon_mode_op(const SpinPhononSpace& s, int mode, const SpC& single) {
  SpC acc = sparse_identity(1);
  for (int m = 0; m < s.n_modes(); ++m) acc = kron(acc, m == mode ? single : sparse_identity(s.n_max[m] + 1));
  return acc;
}

SpC annihilation(const SpinPhononSpace& s, int mode) {
  const int d = s.n_max[mode] + 1;
  SpC a(d, d);
  for (int k = 1; k < d; ++k) a.insert(k - 1, k) = std::sqrt(static_cast<double>(k));
  return embed_phonon(s, phonon_mode_op(s, mode, a));
}

SpC number_op(const SpinPhononSpace& s, int mode) {
  const int d = s.n_max[mode] + 1;
  SpC nm(d, d);
  for (int k = 1; k < d; ++k) nm.insert(k, k) = static_cast<double>(k);
  return embed_phonon(s, phonon_mode_op(s, mode, nm));
}

SpC embed_spin(const SpinPhononSpace& s, const SpC& op) { return kron(op, sparse_identity(s.phonon_dim())); }

SpC embed_phonon(const SpinPhononSpace& s, const SpC& op) { return kron(sparse_identity(s.spin_dim()), op); }

}  // namespace tiqs
