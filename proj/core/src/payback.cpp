#include "cri/payback.hpp"

#include <cmath>

#include "cri/errors.hpp"
#include "cri/reputation.hpp"

namespace cri {

double payoff(Contribution contribution, double contribution_sum,
              double total_reward, Reputation r) {
  if (contribution == 0.0) {
    return 0.0;
  }
  return contribution / contribution_sum * total_reward -
         quality_risk(r) * contribution;
}

double total_reward(std::span<const Reputation> employee_reputations) {
  if (employee_reputations.size() < 2) {
    throw InvalidInput("total reward needs at least two employees");
  }
  double risk_sum = 0.0;
  for (Reputation r : employee_reputations) {
    risk_sum += quality_risk(r);
  }
  return risk_sum / static_cast<double>(employee_reputations.size() - 1);
}

namespace {

template <typename A, typename B>
bool same_keys(const std::map<UserId, A>& a, const std::map<UserId, B>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      return false;
    }
  }
  return true;
}

}  // namespace

Settlement settle(const std::map<UserId, Contribution>& actual,
                  const std::map<UserId, Contribution>& expected,
                  const std::map<UserId, Reputation>& reputations,
                  double total_reward, const SettlementOptions& options) {
  if (!same_keys(actual, expected) || !same_keys(actual, reputations)) {
    throw InvalidInput("actual, expected and reputation maps must share keys");
  }
  if (!(total_reward > 0.0) || !std::isfinite(total_reward)) {
    throw InvalidValue("total reward must be positive");
  }

  double expected_sum = 0.0;
  double actual_sum = 0.0;
  for (const auto& [user, c] : expected) expected_sum += c;
  for (const auto& [user, c] : actual) actual_sum += c;
  const double shortfall_sum =
      options.denominator == ShortfallDenominator::expected ? expected_sum
                                                            : actual_sum;

  Settlement out;
  out.total_reward = total_reward;
  for (const auto& [user, c] : actual) {
    const Contribution c_exp = expected.at(user);
    const Reputation r = reputations.at(user);
    const double raw = c >= c_exp
                           ? payoff(c_exp, expected_sum, total_reward, r)
                           : payoff(c, shortfall_sum, total_reward, r);
    out.paybacks[user] = {raw, raw / total_reward};
    out.new_reputations[user] =
        update_reputation(r, c, c_exp, options.alpha, options.bounds);
  }
  return out;
}

}  // namespace cri
