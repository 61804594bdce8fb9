#include "lqnet/params.hpp"

#include <cmath>
#include <string>

#include "lqnet/errors.hpp"

namespace lqnet {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void ChainParams::validate() const {
  require(finite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  require(finite(c) && c >= 0.0, "c must be nonnegative");
  require(finite(p) && p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  require(finite(sigma) && sigma >= 0.0, "sigma must be nonnegative");
  require(finite(horizon) && horizon > 0.0, "horizon must be positive");
}

void TwoSidedParams::validate() const {
  require(finite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  require(finite(c) && c >= 0.0, "c must be nonnegative");
  require(finite(sigma) && sigma >= 0.0, "sigma must be nonnegative");
  require(finite(horizon) && horizon > 0.0, "horizon must be positive");
  require(finite(p) && p > 0.0 && p < 1.0, "p must lie in (0,1)");
  require(finite(p1) && p1 >= 0.0 && p1 <= 1.0, "p1 must lie in [0,1]");
  require(finite(q1) && q1 >= 0.0 && q1 <= 1.0, "q1 must lie in [0,1]");
  require(B() > 0.0, "p*p1 + (1-p)*q1 must be positive");
}

double TreeParams::p0() const {
  if (p >= 1.0) return 0.0;
  return std::exp(M * std::log1p(-p));
}

void TreeParams::validate() const {
  require(M >= 1, "branching M must be at least 1");
  require(finite(p) && p > 0.0 && p <= 1.0, "p must lie in (0,1]");
  require(finite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  require(finite(c) && c >= 0.0, "c must be nonnegative");
  require(finite(sigma) && sigma >= 0.0, "sigma must be nonnegative");
  require(finite(horizon) && horizon > 0.0, "horizon must be positive");
}

}  // namespace lqnet
