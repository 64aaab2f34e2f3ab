#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cri/types.hpp"

namespace cri {

/// One user's reply to a task announcement.
struct Application {
  UserId user;
  Reputation reputation{0.0};
};

/// How the server fixes the task's total reward R.
///
/// By default R = sum_{j in E} (1 - r_j) / r_j / (|E| - 1), which makes the
/// expected contributions of the employees sum to exactly one and lets
/// recruitment and settlement agree on R. A fixed R is kept for exercising
/// the general closed form.
struct RewardPolicy {
  std::optional<double> fixed_total;
};

struct RecruitmentResult {
  /// Employees in rank order (reputation descending, id ascending).
  std::vector<UserId> employees;
  std::map<UserId, Contribution> expected_contribution;
  std::map<UserId, Payback> expected_payback;
  double total_reward{0.0};
  /// sum_{j in E} (1 - r_j) / r_j
  double risk_sum{0.0};
  /// Applicants that were not recruited, in rank order.
  std::vector<Application> rejected;
};

/// Admission bound (|E| - 1) / (risk_sum + |E| - 1) for the next candidate.
/// Requires e_size >= 2 and risk_sum > 0 (InvalidValue otherwise).
double recruitment_threshold(double risk_sum, std::size_t e_size);

/// Reputation-driven employee recruitment.
///
/// Applications are ranked by reputation (descending, ties by id). The top
/// two are always recruited; every further candidate is admitted while its
/// reputation exceeds recruitment_threshold() of the set recruited so far.
/// The first candidate failing the bound stops the scan.
///
/// Each employee's expected contribution is the stationary point of its
/// payback with all other employees held at theirs:
///
///   c_i = ((|E|-1) R / S) * (1 - (|E|-1) q_i / S),  q_i = (1-r_i)/r_i
///
/// Throws TaskAborted for fewer than two applications and InvalidInput for
/// duplicate users.
RecruitmentResult recruit(std::span<const Application> applications,
                          const RewardPolicy& policy = {});

/// (c_i / c_sum) R - q_i c_i for an employee at its expected contribution.
Payback expected_payback(Contribution c_exp_i, double c_exp_sum,
                         double total_reward, Reputation r_i);

}  // namespace cri
