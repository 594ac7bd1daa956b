#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace tiqs::cli {

struct RunOptions {
  bool strict = false;
  int threads = 1;
  std::uint64_t seed = 12345;
  std::vector<double> power_law;  // --power-law s=<value>
};

class StrictViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& scenario_names();
void run_scenario(const std::string& name, const json& config, const RunOptions& opts, ArtifactSet& out);

}  // namespace tiqs::cli
