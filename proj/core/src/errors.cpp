#include "tiqs/errors.hpp"

#include <cstdio>

namespace tiqs {

namespace {
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}
}  // namespace

SolverFailure::SolverFailure(const std::string& what, double r, int it)
    : Error(what + " (residual " + num(r) + " after " + std::to_string(it) + " iterations)"),
      residual(r),
      iterations(it) {}

InstabilityError::InstabilityError(const std::string& what, double r)
    : Error(what + " (ratio " + num(r) + ")"), ratio(r) {}

ResonanceError::ResonanceError(const std::string& what, int n)
    : Error(what + " (mode " + std::to_string(n) + ")"), mode(n) {}

ConvergenceFailure::ConvergenceFailure(const std::string& what, double e, double s)
    : Error(what + " (error " + num(e) + ", step " + num(s) + ")"),
      last_error(e),
      last_step(s) {}

TruncationError::TruncationError(const std::string& what, int n)
    : Error(what + " (required cutoff " + std::to_string(n) + ")"), required_cutoff(n) {}

}  // namespace tiqs
