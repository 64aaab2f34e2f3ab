#pragma once

#include "cri/types.hpp"

namespace cri {

/// Clamps r into [bounds.min, bounds.max]. Throws InvalidValue on NaN/inf.
Reputation clamp_reputation(double r, const ReputationBounds& bounds = {});

/// Quality risk (1 - r) / r of recruiting a user with reputation r.
double quality_risk(Reputation r);

/// Settlement-time reputation update with the contribution ratio capped at 1:
///
///   r = clamp(alpha * r_prev + (1 - alpha) * min(c / c_expected, 1))
///
/// Over-contribution earns no more than meeting the expectation. Throws
/// InvalidValue when c_expected <= 0 or alpha is outside [0, 1].
Reputation update_reputation(Reputation r_prev, Contribution c,
                             Contribution c_expected, double alpha,
                             const ReputationBounds& bounds = {});

}  // namespace cri
