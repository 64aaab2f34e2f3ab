#include "cri/reputation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cri/errors.hpp"

namespace cri {

void IncentiveParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidValue("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (!(bounds.min > 0.0 && bounds.min < r0 && r0 < bounds.max &&
        bounds.max < 1.0)) {
    throw InvalidValue("reputation bounds must satisfy 0 < r_min < r0 < r_max < 1");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidValue("epsilon must be positive");
  }
}

Reputation clamp_reputation(double r, const ReputationBounds& bounds) {
  if (!std::isfinite(r)) {
    throw InvalidValue("reputation must be finite");
  }
  return std::clamp(r, bounds.min, bounds.max);
}

double quality_risk(Reputation r) {
  return (1.0 - r) / r;
}

Reputation update_reputation(Reputation r_prev, Contribution c,
                             Contribution c_expected, double alpha,
                             const ReputationBounds& bounds) {
  if (!(c_expected > 0.0)) {
    throw InvalidValue("expected contribution must be positive");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidValue("alpha must lie in [0, 1]");
  }
  const double ratio = c >= c_expected ? 1.0 : c / c_expected;
  return clamp_reputation(alpha * r_prev + (1.0 - alpha) * ratio, bounds);
}

}  // namespace cri
