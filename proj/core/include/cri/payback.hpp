#pragma once

#include <map>
#include <span>

#include "cri/types.hpp"

namespace cri {

/// Payback of an employee holding `contribution` out of `contribution_sum`
/// with task reward R:  (c / sum) R - (1 - r) / r * c.
double payoff(Contribution contribution, double contribution_sum,
              double total_reward, Reputation r);

/// R = sum_j (1 - r_j) / r_j / (|E| - 1). Throws InvalidInput if |E| < 2.
double total_reward(std::span<const Reputation> employee_reputations);

/// Which sum scales the reward share of an under-contributing employee.
/// `expected` follows the printed settlement rule (sum of expected
/// contributions); `actual` uses the sum of actual contributions instead.
enum class ShortfallDenominator { expected, actual };

struct SettlementOptions {
  double alpha{0.5};
  ReputationBounds bounds{};
  ShortfallDenominator denominator{ShortfallDenominator::expected};
};

struct Settlement {
  std::map<UserId, Payback> paybacks;
  std::map<UserId, Reputation> new_reputations;
  double total_reward{0.0};
};

/// Settles one task.
///
/// An employee with c_i >= c_exp_i is paid its expected payback, no bonus.
/// One with c_i < c_exp_i is paid (c_i / sum c_exp) R - q_i c_i. Paybacks are
/// normalized by R. Reputations follow update_reputation().
///
/// The three maps must share one key set (InvalidInput otherwise) and
/// total_reward must be positive.
Settlement settle(const std::map<UserId, Contribution>& actual,
                  const std::map<UserId, Contribution>& expected,
                  const std::map<UserId, Reputation>& reputations,
                  double total_reward, const SettlementOptions& options = {});

}  // namespace cri
