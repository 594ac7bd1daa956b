#pragma once

#include <cstdint>
#include <vector>

#include "tiqs/evolution.hpp"
#include "tiqs/types.hpp"

namespace tiqs {

struct SpinChannel {
  std::vector<MatC> kraus;
  double completeness_defect = 0.0;  // ||sum K^dag K - 1||_max
  Eigen::Index dim() const { return kraus.empty() ? 0 : kraus.front().rows(); }
  MatC apply(const MatC& rho) const;
};

// K_ab = sqrt(p_a) <b|U|a> over Fock indices a (thermal members) and b
SpinChannel channel_from_evolution(const MatC& U_full, const SpinPhononSpace& s, const ThermalState& th,
                                   double defect_tol = 1e-8);
SpinChannel unitary_channel(const MatC& U);
SpinChannel depolarizing_channel(double p = 1.0);  // single qubit

// (sum_k |Tr(U^dag K_k)|^2 + d) / (d^2 + d)
double haar_average_fidelity(const SpinChannel& ch, const MatC& U_eff);

struct SampledFidelity {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};
SampledFidelity haar_fidelity_sampled(const SpinChannel& ch, const MatC& U_eff, int samples, std::uint64_t seed);

double time_averaged_error(const std::vector<double>& t, const std::vector<double>& F);

enum class EffectiveTarget { XYZ, QIM };

struct ChannelScanSetup {
  NormalModeData modes;
  DriveSpec drive;
  std::vector<int> n_max;
  std::vector<double> nbar;
  int n_points = 300;
  double t_final = 0.0;  // 0: pi / |J_12|
  EffectiveTarget target = EffectiveTarget::XYZ;
  PropagateOptions prop;  // used only when xi != 0
};

struct ChannelScan {
  std::vector<double> t;
  std::vector<double> F;
  double eps_bar = 0.0;
  double J12 = 0.0;
  double t_final = 0.0;
  double max_completeness_defect = 0.0;
};

ChannelScan channel_error_scan(const ChannelScanSetup& setup);

}  // namespace tiqs
