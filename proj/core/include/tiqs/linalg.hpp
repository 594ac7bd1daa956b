#pragma once

#include <functional>
#include <vector>

#include "tiqs/types.hpp"

namespace tiqs {

struct HermitianEigen {
  VecR values;
  MatC vectors;
};

HermitianEigen hermitian_eigen(const MatC& H);

// exp(-i H dt)
MatC hermitian_expm(const MatC& H, double dt);
VecC apply_expm(const HermitianEigen& e, double dt, const VecC& v);
MatC expm_from_eigen(const HermitianEigen& e, double dt);

struct KrylovOptions {
  double tol = 1e-12;
  int max_dim = 40;
  int max_splits = 30;
};

// exp(-i H dt) v by Lanczos with adaptive sub-stepping
VecC expm_krylov(const SpC& H, const VecC& v, double dt, const KrylovOptions& opts = {});

using LinearMap = std::function<void(const VecC& in, VecC& out)>;

struct LanczosResult {
  double energy = 0.0;
  VecC vector;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> ritz_values;
};

struct LanczosOptions {
  double tol = 1e-10;
  int krylov_dim = 120;
  int max_restarts = 60;
  unsigned seed = 12345;
};

// lowest eigenpair with full reorthogonalisation and explicit restarts
LanczosResult lanczos_ground(const LinearMap& apply, Eigen::Index dim, const LanczosOptions& opts = {},
                             const VecC* start = nullptr);
LanczosResult lanczos_ground(const SpC& H, const LanczosOptions& opts = {}, const VecC* start = nullptr);

double hermiticity_defect(const SpC& H);
double hermiticity_defect(const MatC& H);
double unitarity_defect(const MatC& U);

double trapezoid(const std::vector<double>& x, const std::vector<double>& y);
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tiqs
