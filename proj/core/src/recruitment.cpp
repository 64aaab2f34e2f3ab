#include "cri/recruitment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cri/errors.hpp"
#include "cri/payback.hpp"
#include "cri/reputation.hpp"

namespace cri {

double recruitment_threshold(double risk_sum, std::size_t e_size) {
  if (e_size < 2) {
    throw InvalidValue("recruitment threshold needs at least two employees");
  }
  if (!(risk_sum > 0.0)) {
    throw InvalidValue("risk sum must be positive");
  }
  const double n1 = static_cast<double>(e_size - 1);
  return n1 / (risk_sum + n1);
}

Payback expected_payback(Contribution c_exp_i, double c_exp_sum,
                         double total_reward, Reputation r_i) {
  if (!(c_exp_sum > 0.0)) {
    throw InvalidValue("expected contribution sum must be positive");
  }
  if (c_exp_i == 0.0) {
    return {};
  }
  const double raw = payoff(c_exp_i, c_exp_sum, total_reward, r_i);
  return {raw, raw / total_reward};
}

RecruitmentResult recruit(std::span<const Application> applications,
                          const RewardPolicy& policy) {
  if (applications.size() < 2) {
    throw TaskAborted("recruitment needs at least two applicants");
  }
  std::set<UserId> seen;
  for (const auto& a : applications) {
    if (!std::isfinite(a.reputation) || a.reputation <= 0.0 ||
        a.reputation >= 1.0) {
      throw InvalidValue("applicant reputation must lie in (0, 1)");
    }
    if (!seen.insert(a.user).second) {
      throw InvalidInput("duplicate application from one user");
    }
  }

  std::vector<Application> ranked(applications.begin(), applications.end());
  std::sort(ranked.begin(), ranked.end(),
            [](const Application& a, const Application& b) {
              if (a.reputation != b.reputation) {
                return a.reputation > b.reputation;
              }
              return a.user < b.user;
            });
  std::size_t admitted = 2;
  double risk_sum =
      quality_risk(ranked[0].reputation) + quality_risk(ranked[1].reputation);
  while (admitted < ranked.size() &&
         ranked[admitted].reputation >
             recruitment_threshold(risk_sum, admitted)) {
    risk_sum += quality_risk(ranked[admitted].reputation);
    ++admitted;
  }

  RecruitmentResult result;
  result.risk_sum = risk_sum;
  std::vector<Reputation> employee_reps;
  employee_reps.reserve(admitted);
  for (std::size_t i = 0; i < admitted; ++i) {
    result.employees.push_back(ranked[i].user);
    employee_reps.push_back(ranked[i].reputation);
  }
  result.rejected.assign(ranked.begin() + static_cast<std::ptrdiff_t>(admitted),
                         ranked.end());
  result.total_reward =
      policy.fixed_total ? *policy.fixed_total : total_reward(employee_reps);
  if (!(result.total_reward > 0.0) || !std::isfinite(result.total_reward)) {
    throw InvalidValue("total reward must be positive");
  }

  const double n1 = static_cast<double>(admitted - 1);
  const double scale = n1 * result.total_reward / risk_sum;
  double c_sum = 0.0;
  for (std::size_t i = 0; i < admitted; ++i) {
    const double q = quality_risk(ranked[i].reputation);
    const double c = scale * (1.0 - n1 * q / risk_sum);
    result.expected_contribution[ranked[i].user] = c;
    c_sum += c;
  }
  for (std::size_t i = 0; i < admitted; ++i) {
    const UserId user = ranked[i].user;
    result.expected_payback[user] =
        expected_payback(result.expected_contribution[user], c_sum,
                         result.total_reward, ranked[i].reputation);
  }
  return result;
}

}  // namespace cri
