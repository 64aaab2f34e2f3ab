#include <gtest/gtest.h>

#include "cri/adversary.hpp"
#include "cri/errors.hpp"
#include "cri/random.hpp"
#include "cri/simulation.hpp"

namespace cri {
namespace {

TEST(CheatPolicy, Validation) {
  CheatPolicy p;
  EXPECT_NO_THROW(p.validate());
  p.probability = 1.5;
  EXPECT_THROW(p.validate(), InvalidValue);
  p = {};
  p.cheat_low = 24.0;
  p.cheat_high = 2.0;
  EXPECT_THROW(p.validate(), InvalidValue);
  p = {};
  p.kind = CheatKind::targeted;
  EXPECT_THROW(p.validate(), InvalidInput);
  p.selector = TargetSelector::top_r;
  EXPECT_NO_THROW(p.validate());
}

TEST(CheatPolicy, StringForms) {
  for (auto k : {CheatKind::honest, CheatKind::general_intensity, CheatKind::targeted}) {
    EXPECT_EQ(cheat_kind_from_string(to_string(k)), k);
  }
  for (auto s : {TargetSelector::none, TargetSelector::top_r, TargetSelector::top_p,
                 TargetSelector::top_c}) {
    EXPECT_EQ(target_selector_from_string(to_string(s)), s);
  }
  EXPECT_THROW(cheat_kind_from_string("sometimes"), InvalidInput);
  EXPECT_THROW(target_selector_from_string("TopX"), InvalidInput);
}

TEST(DecideCheat, HonestNeverCheats) {
  CheatPolicy honest;
  honest.probability = 1.0;  // ignored for the honest kind
  RandomStream stream{1};
  for (std::uint32_t u = 0; u < 100; ++u) {
    EXPECT_FALSE(decide_cheat(honest, UserId{u}, stream));
  }
}

TEST(DecideCheat, ConsistentTargetAlwaysCheats) {
  CheatPolicy p;
  p.kind = CheatKind::targeted;
  p.probability = 1.0;
  p.targets = {UserId{3}};
  RandomStream stream{9};
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(decide_cheat(p, UserId{3}, stream));
    EXPECT_FALSE(decide_cheat(p, UserId{4}, stream));
  }
}

TEST(DecideCheat, FrequencyMatchesProbability) {
  CheatPolicy p;
  p.kind = CheatKind::general_intensity;
  p.probability = 0.2;
  int cheats = 0;
  for (std::uint64_t task = 0; task < 10000; ++task) {
    RandomStream stream{42, StreamPurpose::cheat_decision, 7, task};
    cheats += decide_cheat(p, UserId{7}, stream) ? 1 : 0;
  }
  EXPECT_NEAR(cheats / 10000.0, 0.2, 0.01);
}

TEST(DecideCheat, SharedUniformsAreMonotoneInProbability) {
  // Same substream at a higher p cheats whenever a lower p did.
  CheatPolicy low;
  low.kind = CheatKind::general_intensity;
  low.probability = 0.10;
  CheatPolicy high = low;
  high.probability = 0.20;
  for (std::uint64_t task = 0; task < 5000; ++task) {
    RandomStream a{1, StreamPurpose::cheat_decision, 2, task};
    RandomStream b{1, StreamPurpose::cheat_decision, 2, task};
    if (decide_cheat(low, UserId{2}, a)) {
      EXPECT_TRUE(decide_cheat(high, UserId{2}, b));
    }
  }
}

TEST(MakeReport, HonestPassThrough) {
  CheatPolicy p;
  RandomStream stream{1};
  const auto obs = make_report(UserId{5}, 14.2, false, p, stream);
  EXPECT_EQ(obs.user, UserId{5});
  EXPECT_DOUBLE_EQ(obs.value, 14.2);
}

TEST(MakeReport, CheatValuesAreUniformOverRange) {
  CheatPolicy p;
  p.kind = CheatKind::general_intensity;
  RandomStream stream{123};
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double v = make_report(UserId{0}, 14.2, true, p, stream).value;
    EXPECT_GE(v, 2.0);
    EXPECT_LE(v, 24.0);
    sum += v;
  }
  EXPECT_NEAR(sum / 10000.0, 13.0, 0.3);
}

SimResult tiny_baseline() {
  SimResult r;
  r.final_reputations = {{UserId{1}, 0.9}, {UserId{2}, 0.7}, {UserId{3}, 0.9}};
  r.totals = {{UserId{1}, {1.0, 5}}, {UserId{2}, {2.5, 5}}, {UserId{3}, {0.5, 4}}};
  return r;
}

TEST(SelectTargets, Examples) {
  SimResult two;
  two.final_reputations = {{UserId{1}, 0.9}, {UserId{2}, 0.7}};
  two.totals = {{UserId{1}, {0.1, 5}}, {UserId{2}, {0.2, 5}}};
  EXPECT_EQ(select_targets(TargetSelector::top_r, two), std::set<UserId>{UserId{1}});
  EXPECT_EQ(select_targets(TargetSelector::top_c, two), std::set<UserId>{UserId{1}});
  EXPECT_EQ(select_targets(TargetSelector::top_p, two), std::set<UserId>{UserId{2}});

  const auto base = tiny_baseline();
  EXPECT_EQ(select_targets(TargetSelector::top_r, base), std::set<UserId>{UserId{1}});
  EXPECT_EQ(select_targets(TargetSelector::top_r, base, 2),
            (std::set<UserId>{UserId{1}, UserId{3}}));
  EXPECT_EQ(select_targets(TargetSelector::top_p, base), std::set<UserId>{UserId{2}});
}

TEST(SelectTargets, Errors) {
  EXPECT_THROW(select_targets(TargetSelector::none, tiny_baseline()), InvalidInput);
  EXPECT_THROW(select_targets(TargetSelector::top_r, SimResult{}), InvalidInput);
}

TEST(SelectTargets, TopPMatchesRecomputedPaybackStream) {
  ScenarioConfig config;
  config.horizon = 6 * 3600;
  config.trace.synth.users = 40;
  const auto base = run_scenario(config);
  std::map<UserId, double> sums;
  for (const auto& o : base.outcomes) {
    for (const auto& [user, pb] : o.paybacks) sums[user] += pb.normalized;
  }
  UserId best{0};
  double best_sum = -1.0;
  for (const auto& [user, s] : sums) {
    if (s > best_sum) {
      best_sum = s;
      best = user;
    }
  }
  const auto picked = select_targets(TargetSelector::top_p, base);
  ASSERT_EQ(picked.size(), 1u);
  EXPECT_NEAR(base.totals.at(*picked.begin()).payback_sum, best_sum, 1e-12);
  EXPECT_EQ(*picked.begin(), best);
}

}  // namespace
}  // namespace cri
