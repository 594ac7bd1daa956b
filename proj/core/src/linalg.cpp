#include "tiqs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tiqs/errors.hpp"

namespace tiqs {

HermitianEigen hermitian_eigen(const MatC& H) {
  Eigen::SelfAdjointEigenSolver<MatC> es(H);
  if (es.info() != Eigen::Success) throw Error("hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

MatC expm_from_eigen(const HermitianEigen& e, double dt) {
  VecC ph(e.values.size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::exp(-I * e.values(k) * dt);
  return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
}

MatC hermitian_expm(const MatC& H, double dt) { return expm_from_eigen(hermitian_eigen(H), dt); }

VecC apply_expm(const HermitianEigen& e, double dt, const VecC& v) {
  VecC c = e.vectors.adjoint() * v;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(-I * e.values(k) * dt);
  return e.vectors * c;
}

namespace {

struct KrylovStep {
  VecC out;
  double err;
};

KrylovStep krylov_once(const SpC& H, const VecC& v, double dt, int max_dim) {
  const Eigen::Index n = v.size();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(max_dim, n));
  const double beta0 = v.norm();
  if (beta0 == 0.0) return {v, 0.0};
  MatC V(n, m_max + 1);
  std::vector<double> alpha, beta;
  V.col(0) = v / beta0;
  VecC w(n);
  int m = 0;
  bool breakdown = false;
  double scale = 0.0;
  for (int j = 0; j < m_max; ++j) {
    w = H * V.col(j);
    double a = std::real(V.col(j).dot(w));
    w -= a * V.col(j);
    if (j > 0) w -= beta.back() * V.col(j - 1);
    // one pass of reorthogonalisation keeps the small basis clean
    for (int k = 0; k <= j; ++k) w -= V.col(k).dot(w) * V.col(k);
    alpha.push_back(a);
    m = j + 1;
    double b = w.norm();
    scale = std::max({scale, std::abs(a), b});
    // invariant subspace found, or the whole space is spanned
    if (b < 1e-13 * scale || m == n) {
      breakdown = true;
      beta.push_back(0.0);
      break;
    }
    beta.push_back(b);
    V.col(j + 1) = w / b;
  }
  MatR T = MatR::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    T(j, j) = alpha[j];
    if (j + 1 < m) T(j, j + 1) = T(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<MatR> es(T);
  VecC c = VecC::Zero(m);
  for (int k = 0; k < m; ++k) {
    cplx ph = std::exp(-I * es.eigenvalues()(k) * dt);
    c += es.eigenvectors().col(k).cast<cplx>() * (ph * es.eigenvectors()(0, k));
  }
  // last coefficient at rounding level counts as converged
  const double cm = std::abs(c(m - 1));
  double err = breakdown || cm < 10.0 * m * std::numeric_limits<double>::epsilon() ? 0.0 : beta0 * beta[m - 1] * cm;
  return {beta0 * (V.leftCols(m) * c), err};
}

}  // namespace

VecC expm_krylov(const SpC& H, const VecC& v, double dt, const KrylovOptions& opts) {
  VecC state = v;
  double remaining = dt;
  double step = dt;
  int splits = 0;
  while (std::abs(remaining) > 0.0) {
    if (std::abs(step) > std::abs(remaining)) step = remaining;
    KrylovStep ks = krylov_once(H, state, step, opts.max_dim);
    if (ks.err > opts.tol * std::max(1.0, state.norm())) {
      step *= 0.5;
      if (++splits > opts.max_splits) throw ConvergenceFailure("krylov exponential did not converge", ks.err, step);
      continue;
    }
    state = std::move(ks.out);
    remaining -= step;
  }
  return state;
}

LanczosResult lanczos_ground(const LinearMap& apply, Eigen::Index dim, const LanczosOptions& opts,
                             const VecC* start) {
  VecC x(dim);
  if (start) {
    x = *start;
  } else {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> nd;
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = cplx(nd(rng), nd(rng));
  }
  x.normalize();
  LanczosResult res;
  const int m_max = static_cast<int>(std::min<Eigen::Index>(opts.krylov_dim, dim));
  VecC w(dim), hx(dim);
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    MatC V(dim, m_max);
    std::vector<double> alpha, beta;
    V.col(0) = x;
    int m = 0;
    for (int j = 0; j < m_max; ++j) {
      apply(V.col(j), w);
      ++res.iterations;
      double a = std::real(V.col(j).dot(w));
      alpha.push_back(a);
      m = j + 1;
      // full reorthogonalisation, twice
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k <= j; ++k) w -= V.col(k).dot(w) * V.col(k);
      double b = w.norm();
      if (j + 1 == m_max || b < 1e-13) break;
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }
    MatR T = MatR::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < m) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<MatR> es(T);
    res.ritz_values.assign(es.eigenvalues().data(), es.eigenvalues().data() + std::min(m, 6));
    x = V.leftCols(m) * es.eigenvectors().col(0).cast<cplx>();
    x.normalize();
    apply(x, hx);
    ++res.iterations;
    res.energy = std::real(x.dot(hx));
    res.residual = (hx - res.energy * x).norm();
    res.vector = x;
    if (res.residual < opts.tol) return res;
  }
  throw SolverFailure("lanczos ground state did not converge, lowest ritz " +
                          std::to_string(res.ritz_values.empty() ? 0.0 : res.ritz_values.front()),
                      res.residual, res.iterations);
}

LanczosResult lanczos_ground(const SpC& H, const LanczosOptions& opts, const VecC* start) {
  LinearMap ap = [&H](const VecC& in, VecC& out) { out.noalias() = H * in; };
  return lanczos_ground(ap, H.rows(), opts, start);
}

double hermiticity_defect(const SpC& H) {
  SpC d = H - SpC(H.adjoint());
  double nrm = H.norm();
  return nrm == 0.0 ? d.norm() : d.norm() / nrm;
}

double hermiticity_defect(const MatC& H) {
  double nrm = H.norm();
  double d = (H - H.adjoint()).norm();
  return nrm == 0.0 ? d : d / nrm;
}

double unitarity_defect(const MatC& U) {
  return (U.adjoint() * U - MatC::Identity(U.cols(), U.cols())).cwiseAbs().maxCoeff();
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("trapezoid: size mismatch");
  double s = 0.0;
  for (size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

namespace {
std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  size_t i = 0;
  while (i < idx.size()) {
    size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}
}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DimensionError("spearman: need matching sizes >= 2");
  auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace tiqs
