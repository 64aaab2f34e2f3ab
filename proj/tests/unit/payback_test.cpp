#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cri/errors.hpp"
#include "cri/payback.hpp"
#include "cri/recruitment.hpp"
#include "oracles.hpp"

namespace cri {
namespace {

const UserId kA{0};
const UserId kB{1};

TEST(TotalReward, Examples) {
  EXPECT_NEAR(total_reward(std::vector<Reputation>{0.9, 0.8}), 0.3611, 5e-5);
  EXPECT_NEAR(total_reward(std::vector<Reputation>{0.9, 0.9, 0.9}), 0.1667, 5e-5);
  EXPECT_DOUBLE_EQ(total_reward(std::vector<Reputation>{0.5, 0.5}), 2.0);
  EXPECT_THROW(total_reward(std::vector<Reputation>{0.5}), InvalidInput);
}

struct TwoEmployees {
  std::map<UserId, Contribution> expected;
  std::map<UserId, Reputation> reps{{kA, 0.9}, {kB, 0.8}};
  double reward{0.0};

  TwoEmployees() {
    std::vector<Application> apps{{kA, 0.9}, {kB, 0.8}};
    const auto r = recruit(apps);
    expected = r.expected_contribution;
    reward = r.total_reward;
  }
};

TEST(Settle, HonestEmployeesGetExpectedPayback) {
  TwoEmployees t;
  const auto s = settle(t.expected, t.expected, t.reps, t.reward);
  EXPECT_NEAR(s.paybacks.at(kA).raw, 0.1731, 5e-5);
  EXPECT_NEAR(s.paybacks.at(kB).raw, 0.0342, 5e-5);
  EXPECT_DOUBLE_EQ(s.paybacks.at(kA).normalized, s.paybacks.at(kA).raw / t.reward);
  EXPECT_DOUBLE_EQ(s.new_reputations.at(kA), 0.95);
  EXPECT_NEAR(s.new_reputations.at(kB), 0.9, 1e-15);
  // Honest branch agrees with the grid maximum of the payback.
  const double c_a = t.expected.at(kA);
  const double best = oracle::argmax_payback(t.expected.at(kB), t.reward, 0.9);
  EXPECT_NEAR(s.paybacks.at(kA).raw,
              oracle::payback(best, t.expected.at(kB), t.reward, 0.9), 1e-9);
  EXPECT_NEAR(best, c_a, 1e-6);
}

TEST(Settle, ShortfallUsesExpectedSum) {
  TwoEmployees t;
  auto actual = t.expected;
  actual[kA] = 0.3;
  actual[kB] = 0.7;
  const auto s = settle(actual, t.expected, t.reps, t.reward);
  EXPECT_NEAR(s.paybacks.at(kA).raw, 0.0750, 5e-5);
  EXPECT_NEAR(s.paybacks.at(kA).raw, 0.3 * t.reward - (1.0 / 9.0) * 0.3, 1e-15);
  // Over-contributor is paid its expectation, nothing more.
  EXPECT_NEAR(s.paybacks.at(kB).raw, 0.0342, 5e-5);
}

TEST(Settle, ZeroContribution) {
  TwoEmployees t;
  std::map<UserId, Contribution> actual{{kA, 0.0}, {kB, 1.0}};
  const auto s = settle(actual, t.expected, t.reps, t.reward);
  EXPECT_DOUBLE_EQ(s.paybacks.at(kA).raw, 0.0);
  EXPECT_DOUBLE_EQ(s.new_reputations.at(kA), 0.5 * 0.9);
}

TEST(Settle, ActualDenominatorSwitch) {
  std::map<UserId, Contribution> expected{{kA, 1.2}, {kB, 0.8}};
  std::map<UserId, Contribution> actual{{kA, 0.6}, {kB, 0.4}};
  std::map<UserId, Reputation> reps{{kA, 0.9}, {kB, 0.8}};
  SettlementOptions options;
  options.denominator = ShortfallDenominator::actual;
  const auto printed = settle(actual, expected, reps, 1.0);
  const auto alt = settle(actual, expected, reps, 1.0, options);
  EXPECT_NEAR(printed.paybacks.at(kA).raw, 0.6 / 2.0 - 0.6 / 9.0, 1e-15);
  EXPECT_NEAR(alt.paybacks.at(kA).raw, 0.6 / 1.0 - 0.6 / 9.0, 1e-15);
}

TEST(Settle, Errors) {
  TwoEmployees t;
  std::map<UserId, Contribution> wrong{{kA, 0.5}, {UserId{9}, 0.5}};
  EXPECT_THROW(settle(wrong, t.expected, t.reps, t.reward), InvalidInput);
  EXPECT_THROW(settle(t.expected, t.expected, {{kA, 0.9}}, t.reward), InvalidInput);
  EXPECT_THROW(settle(t.expected, t.expected, t.reps, 0.0), InvalidValue);
}

TEST(Settle, DominanceAndBounds) {
  std::mt19937_64 rng{606};
  std::uniform_int_distribution<int> size{2, 12};
  std::uniform_real_distribution<double> rep{0.05, 0.95};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Application> apps;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) {
      apps.push_back({UserId{static_cast<std::uint32_t>(i)}, rep(rng)});
    }
    const auto rec = recruit(apps);
    std::map<UserId, Reputation> reps;
    for (const auto& a : apps) {
      if (rec.expected_contribution.contains(a.user)) reps[a.user] = a.reputation;
    }
    for (UserId user : rec.employees) {
      const double c_exp = rec.expected_contribution.at(user);
      const double g_exp = rec.expected_payback.at(user).raw;
      double previous = -1.0;
      for (int k = 0; k <= 1000; ++k) {
        auto actual = rec.expected_contribution;
        actual[user] = k / 1000.0;
        const auto s = settle(actual, rec.expected_contribution, reps, rec.total_reward);
        const auto& pb = s.paybacks.at(user);
        EXPECT_GE(pb.raw, 0.0);
        EXPECT_GE(pb.normalized, 0.0);
        EXPECT_LE(pb.normalized, 1.0);
        EXPECT_GE(pb.raw, previous - 1e-15);
        previous = pb.raw;
        if (actual[user] >= c_exp) {
          EXPECT_DOUBLE_EQ(pb.raw, g_exp);
          EXPECT_GE(s.new_reputations.at(user), reps.at(user));
        } else {
          EXPECT_LT(pb.raw, g_exp);
        }
      }
    }
  }
}

}  // namespace
}  // namespace cri
