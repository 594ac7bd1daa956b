#include "tiqs/spectra_entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include <Eigen/SVD>

#include "tiqs/errors.hpp"

namespace tiqs {

namespace {

const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};

cplx element(const PauliString& p, std::uint64_t s) {
  cplx c = p.coeff * ipow[((p.n_y % 4) + 4) % 4];
  return (std::popcount(s & p.z_mask) & 1) ? -c : c;
}

}  // namespace

std::vector<std::uint64_t> sector_basis(int N, int n_up) {
  std::vector<std::uint64_t> b;
  const std::uint64_t dim = std::uint64_t{1} << N;
  // bit value 0 is up
  for (std::uint64_t s = 0; s < dim; ++s)
    if (N - std::popcount(s) == n_up) b.push_back(s);
  return b;
}

SpC sector_hamiltonian(const PauliSum& H, const std::vector<std::uint64_t>& basis) {
  std::unordered_map<std::uint64_t, Eigen::Index> idx;
  idx.reserve(basis.size() * 2);
  for (size_t k = 0; k < basis.size(); ++k) idx[basis[k]] = static_cast<Eigen::Index>(k);
  std::vector<Eigen::Triplet<cplx>> tr;
  for (size_t k = 0; k < basis.size(); ++k) {
    for (const auto& p : H.terms()) {
      const std::uint64_t t = basis[k] ^ p.x_mask;
      auto it = idx.find(t);
      // out-of-sector pieces cancel between terms when [H, S^z] = 0
      if (it == idx.end()) continue;
      tr.emplace_back(it->second, static_cast<Eigen::Index>(k), element(p, basis[k]));
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  SpC M(n, n);
  M.setFromTriplets(tr.begin(), tr.end());
  return M;
}

double sz_commutator_norm(const PauliSum& H) {
  SpC h = H.to_sparse();
  SpC sz = total_spin_op(H.n_spins(), Pauli::Z);
  SpC c = h * sz - sz * h;
  double m = 0.0;
  for (int k = 0; k < c.outerSize(); ++k)
    for (SpC::InnerIterator it(c, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

GroundState ground_state(const PauliSum& H, const GroundStateOptions& o) {
  const int N = H.n_spins();
  if (N > 20) throw DimensionError("ground_state supports N <= 20");
  double scale = 0.0;
  for (const auto& p : H.terms()) scale = std::max(scale, std::abs(p.coeff));
  GroundState g;
  const bool sector = sz_commutator_norm(H) <= o.commute_tol * std::max(1.0, scale);
  auto check = [&](const LanczosResult& r) {
    if (!(r.residual < o.residual_tol * std::max(1.0, std::abs(r.energy))))
      throw ConvergenceFailure("Lanczos ground state did not converge, last Ritz value " +
                                   std::to_string(r.energy),
                               r.residual, static_cast<double>(r.iterations));
  };
  if (!sector) {
    SpC h = H.to_sparse();
    LanczosResult r = lanczos_ground(h, o.lanczos);
    check(r);
    g.energy = r.energy;
    g.state = r.vector;
    g.residual = r.residual;
    g.ritz_values = r.ritz_values;
    return g;
  }
  // lowest |2 S^z| sectors; +M and -M are related by the global flip for the symmetric models used here
  std::vector<int> ups = {N / 2};
  if (N >= 2) ups.push_back(N / 2 + 1);
  bool first = true;
  for (int nu : ups) {
    if (nu > N) continue;
    auto basis = sector_basis(N, nu);
    SpC hs = sector_hamiltonian(H, basis);
    LanczosResult r;
    if (hs.rows() <= 64) {
      HermitianEigen e = hermitian_eigen(MatC(hs));
      r.energy = e.values(0);
      r.vector = e.vectors.col(0);
      r.residual = (hs * r.vector - r.energy * r.vector).norm();
    } else {
      r = lanczos_ground(hs, o.lanczos);
    }
    check(r);
    if (first || r.energy < g.energy - 1e-12 * std::max(1.0, std::abs(r.energy))) {
      g.energy = r.energy;
      g.state = VecC::Zero(Eigen::Index{1} << N);
      for (size_t k = 0; k < basis.size(); ++k) g.state(static_cast<Eigen::Index>(basis[k])) = r.vector(k);
      g.residual = r.residual;
      g.ritz_values = r.ritz_values;
      g.sector_magnetization = 2 * nu - N;
      first = false;
    }
  }
  g.used_sector = true;
  g.state.normalize();
  return g;
}

double block_entropy(const VecC& psi, int N, int l) {
  if (l < 1 || l > N - 1) throw DimensionError("block size must lie in [1, N-1]");
  if (psi.size() != (Eigen::Index{1} << N)) throw DimensionError("state does not match N");
  const Eigen::Index rows = Eigen::Index{1} << l, cols = Eigen::Index{1} << (N - l);
  Eigen::Map<const MatC> A(psi.data(), cols, rows);  // A(j, i) = psi(i cols + j)
  Eigen::BDCSVD<MatC> svd(A);
  const VecR sv = svd.singularValues();
  const double norm = sv.squaredNorm();
  double S = 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    const double p = sv(k) * sv(k) / norm;
    if (p > 1e-300) S -= p * std::log(p);
  }
  return std::max(0.0, S);
}

double chord_variable(int N, int l) { return std::log((2.0 * N / pi) * std::sin(pi * l / N)); }

EntropyProfile entropy_profile(const VecC& psi, int N) {
  EntropyProfile p;
  p.N = N;
  for (int l = 1; l < N; ++l) {
    p.l.push_back(l);
    p.S.push_back(block_entropy(psi, N, l));
    p.y.push_back(chord_variable(N, l));
  }
  return p;
}

void fit_central_charge(EntropyProfile& p, const std::vector<int>& window) {
  if (window.size() < 4) throw ValidityError("central-charge fit needs at least 4 block sizes");
  std::vector<double> y, S;
  for (int l : window) {
    auto it = std::find(p.l.begin(), p.l.end(), l);
    if (it == p.l.end()) throw ValidityError("fit window outside the available block sizes");
    size_t k = static_cast<size_t>(it - p.l.begin());
    y.push_back(p.y[k]);
    S.push_back(p.S[k]);
  }
  const double n = static_cast<double>(y.size());
  double my = 0.0, ms = 0.0;
  for (size_t k = 0; k < y.size(); ++k) my += y[k], ms += S[k];
  my /= n;
  ms /= n;
  double syy = 0.0, sys = 0.0;
  for (size_t k = 0; k < y.size(); ++k) {
    syy += (y[k] - my) * (y[k] - my);
    sys += (y[k] - my) * (S[k] - ms);
  }
  if (syy <= 1e-14 * n) throw ValidityError("degenerate fit window, all y_l equal");
  const double slope = sys / syy;
  p.window = window;
  p.c_eff = 6.0 * slope;
  p.intercept = ms - slope * my;
  double r2 = 0.0;
  for (size_t k = 0; k < y.size(); ++k) {
    const double d = S[k] - (slope * y[k] + p.intercept);
    r2 += d * d;
  }
  p.residual = std::sqrt(r2 / n);
}

std::vector<int> even_window(int lo, int hi) {
  std::vector<int> w;
  for (int l = lo + (lo % 2); l <= hi; l += 2) w.push_back(l);
  return w;
}

MatR distance_couplings(int N, double (*f)(int, double), double param, int r_cut) {
  MatR J = MatR::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const int r = j - i;
      if (r_cut > 0 && r > r_cut) continue;
      J(i, j) = J(j, i) = f(r, param);
    }
  return J;
}

MatR nearest_neighbor_couplings(int N, double J) {
  MatR M = MatR::Zero(N, N);
  for (int i = 0; i + 1 < N; ++i) M(i, i + 1) = M(i + 1, i) = J;
  return M;
}

}  // namespace tiqs
