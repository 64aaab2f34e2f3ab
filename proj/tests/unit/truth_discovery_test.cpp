#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cri/errors.hpp"
#include "cri/truth_discovery.hpp"
#include "oracles.hpp"

namespace cri {
namespace {

struct Instance {
  std::vector<Observation> observations;
  std::map<UserId, Reputation> reputations;
  std::vector<double> values;
  std::vector<double> reps;
};

Instance make_instance(const std::vector<double>& values,
                       const std::vector<double>& reps) {
  Instance inst;
  inst.values = values;
  inst.reps = reps;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const UserId user{static_cast<std::uint32_t>(i)};
    inst.observations.push_back({user, values[i]});
    inst.reputations[user] = reps[i];
  }
  return inst;
}

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size{2, 6};
  std::uniform_real_distribution<double> value{2.0, 24.0};
  std::uniform_real_distribution<double> rep{0.01, 0.99};
  const auto n = static_cast<std::size_t>(size(rng));
  std::vector<double> values(n);
  std::vector<double> reps(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = value(rng);
    reps[i] = rep(rng);
  }
  return make_instance(values, reps);
}

TEST(SampleStd, Examples) {
  EXPECT_DOUBLE_EQ(sample_std(std::vector<double>{10, 20}), 5.0);
  EXPECT_DOUBLE_EQ(sample_std(std::vector<double>{12, 12, 12}), 0.0);
  EXPECT_DOUBLE_EQ(sample_std(std::vector<double>{2, 24}), 11.0);
  EXPECT_THROW(sample_std(std::vector<double>{1.0}), InvalidInput);
}

TEST(Discover, SymmetricPairIsFixedAtMean) {
  const auto inst = make_instance({10, 20}, {0.5, 0.5});
  const auto result = discover(inst.observations, inst.reputations);
  EXPECT_DOUBLE_EQ(result.truth, 15.0);
  EXPECT_DOUBLE_EQ(result.contributions.at(UserId{0}), 0.5);
  EXPECT_DOUBLE_EQ(result.contributions.at(UserId{1}), 0.5);
  EXPECT_TRUE(result.converged);
}

TEST(Discover, ConstantObservationsShortCircuit) {
  const auto inst = make_instance({12, 12, 12}, {0.2, 0.5, 0.9});
  const auto result = discover(inst.observations, inst.reputations);
  EXPECT_DOUBLE_EQ(result.truth, 12.0);
  EXPECT_EQ(result.iterations, 0);
  EXPECT_TRUE(result.converged);
  for (const auto& [user, c] : result.contributions) EXPECT_DOUBLE_EQ(c, 1.0 / 3.0);
}

TEST(Discover, OutlierWithLowReputationIsDiscounted) {
  const auto inst = make_instance({10, 10, 22}, {0.9, 0.9, 0.3});
  const auto result = discover(inst.observations, inst.reputations);
  EXPECT_GE(result.truth, 10.0);
  EXPECT_LE(result.truth, 11.0);
  EXPECT_LT(result.contributions.at(UserId{2}), result.contributions.at(UserId{0}));
  EXPECT_LT(result.contributions.at(UserId{2}), result.contributions.at(UserId{1}));

  const auto tight = oracle::truth_fixed_point(inst.values, inst.reps, 1e-9, 1000);
  ASSERT_TRUE(tight.converged);
  EXPECT_GE(tight.truth, 10.0);
  EXPECT_LE(tight.truth, 11.0);
  EXPECT_LT(tight.contributions[2], tight.contributions[0]);
}

TEST(Discover, Errors) {
  const auto one = make_instance({10}, {0.5});
  EXPECT_THROW(discover(one.observations, one.reputations), InvalidInput);

  auto missing = make_instance({10, 12}, {0.5, 0.5});
  missing.reputations.erase(UserId{1});
  EXPECT_THROW(discover(missing.observations, missing.reputations), InvalidInput);

  const auto inst = make_instance({10, 12}, {0.5, 0.5});
  TruthOptions bad;
  bad.epsilon = 0.0;
  EXPECT_THROW(discover(inst.observations, inst.reputations, bad), InvalidValue);

  auto dup = inst;
  dup.observations[1].user = UserId{0};
  EXPECT_THROW(discover(dup.observations, dup.reputations), InvalidInput);
}

TEST(Discover, NonConvergenceCarriesLastIterate) {
  const auto inst = make_instance({3, 9, 20, 23}, {0.9, 0.2, 0.6, 0.4});
  TruthOptions options;
  options.epsilon = 1e-300;
  options.max_iterations = 3;
  try {
    discover(inst.observations, inst.reputations, options);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.last_iterate().iterations, 3);
    EXPECT_FALSE(e.last_iterate().converged);
    const auto expected = oracle::truth_fixed_point(inst.values, inst.reps, 1e-300, 3);
    EXPECT_NEAR(e.last_iterate().truth, expected.truth, 1e-9);
  }
}

TEST(Discover, MatchesFixedPointOracle) {
  std::mt19937_64 rng{314};
  TruthOptions options;
  options.epsilon = 1e-9;
  options.max_iterations = 10000;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = random_instance(rng);
    const auto expected =
        oracle::truth_fixed_point(inst.values, inst.reps, 1e-9, 10000);
    ASSERT_TRUE(expected.converged);
    const auto result = discover(inst.observations, inst.reputations, options);
    EXPECT_NEAR(result.truth, expected.truth, 1e-6);
    for (std::size_t i = 0; i < inst.values.size(); ++i) {
      EXPECT_NEAR(result.contributions.at(UserId{static_cast<std::uint32_t>(i)}),
                  expected.contributions[i], 1e-6);
    }
  }
}

TEST(Discover, WeightsNonNegativeAndTruthBounded) {
  std::mt19937_64 rng{8};
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = random_instance(rng);
    TruthOptions options;
    int calls = 0;
    options.on_iteration = [&](int it, std::span<const double> w, double) {
      EXPECT_EQ(it, ++calls);
      for (double x : w) EXPECT_GE(x, 0.0);
    };
    const auto result = discover(inst.observations, inst.reputations, options);
    EXPECT_EQ(calls, result.iterations);
    const auto [lo, hi] = std::minmax_element(inst.values.begin(), inst.values.end());
    EXPECT_GE(result.truth, *lo);
    EXPECT_LE(result.truth, *hi);
    double sum = 0.0;
    for (const auto& [user, c] : result.contributions) {
      EXPECT_GE(c, 0.0);
      sum += c;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Discover, PermutationInvariant) {
  std::mt19937_64 rng{21};
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = random_instance(rng);
    const auto a = discover(inst.observations, inst.reputations);
    std::shuffle(inst.observations.begin(), inst.observations.end(), rng);
    const auto b = discover(inst.observations, inst.reputations);
    EXPECT_EQ(a.truth, b.truth);
    EXPECT_EQ(a.contributions, b.contributions);
  }
}

TEST(Discover, LogBaseDoesNotMatter) {
  std::mt19937_64 rng{4};
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng);
    TruthOptions natural;
    TruthOptions decimal;
    decimal.log_base = 10.0;
    const auto a = discover(inst.observations, inst.reputations, natural);
    const auto b = discover(inst.observations, inst.reputations, decimal);
    EXPECT_NEAR(a.truth, b.truth, 1e-9);
    for (const auto& [user, c] : a.contributions) {
      EXPECT_NEAR(c, b.contributions.at(user), 1e-9);
    }
  }
}

TEST(Discover, OrderingAtFixedPoint) {
  std::mt19937_64 rng{55};
  std::uniform_real_distribution<double> value{2.0, 24.0};
  std::uniform_real_distribution<double> rep{0.01, 0.99};
  TruthOptions options;
  options.epsilon = 1e-12;
  options.max_iterations = 10000;
  for (int trial = 0; trial < 300; ++trial) {
    // Equal reputations: closer to the truth means at least as much weight.
    const double r = rep(rng);
    const auto inst = make_instance({value(rng), value(rng), value(rng), value(rng)},
                                    {r, r, r, r});
    const auto result = discover(inst.observations, inst.reputations, options);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const UserId ui{static_cast<std::uint32_t>(i)};
        const UserId uj{static_cast<std::uint32_t>(j)};
        if (std::abs(inst.values[i] - result.truth) <
            std::abs(inst.values[j] - result.truth)) {
          EXPECT_GE(result.contributions.at(ui), result.contributions.at(uj));
        }
      }
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    // Symmetric pair around the other reports: equal distance, so the more
    // reputable of the pair carries at least as much weight.
    const double centre = value(rng);
    const double offset = 0.5 + 3.0 * rep(rng);
    const double r_low = rep(rng);
    const double r_high = std::min(0.99, r_low + 0.01 + 0.5 * rep(rng));
    const auto inst = make_instance({centre - offset, centre + offset, centre},
                                    {r_low, r_high, 0.5});
    const auto result = discover(inst.observations, inst.reputations, options);
    const double d0 = std::abs(inst.values[0] - result.truth);
    const double d1 = std::abs(inst.values[1] - result.truth);
    if (d1 <= d0) {
      EXPECT_GE(result.contributions.at(UserId{1}), result.contributions.at(UserId{0}));
    }
  }
}

TEST(Discover, SeededUniformInitIsDeterministicAndBounded) {
  const auto inst = make_instance({4, 9, 11, 20}, {0.8, 0.6, 0.7, 0.2});
  TruthOptions options;
  options.init = TruthInit::seeded_uniform;
  options.init_seed = 17;
  std::vector<double> starts;
  options.on_iteration = [&](int it, std::span<const double>, double truth) {
    if (it == 1) starts.push_back(truth);
  };
  const auto a = discover(inst.observations, inst.reputations, options);
  const auto b = discover(inst.observations, inst.reputations, options);
  EXPECT_EQ(a.truth, b.truth);
  ASSERT_EQ(starts.size(), 2u);
  EXPECT_EQ(starts[0], starts[1]);
  EXPECT_GE(starts[0], 4.0);
  EXPECT_LE(starts[0], 20.0);
}

}  // namespace
}  // namespace cri
