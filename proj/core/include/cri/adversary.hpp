#pragma once

#include <cstddef>
#include <set>
#include <string_view>

#include "cri/random.hpp"
#include "cri/truth_discovery.hpp"
#include "cri/types.hpp"

namespace cri {

struct SimResult;

enum class CheatKind {
  honest,
  /// Every user cheats on every task with `probability`.
  general_intensity,
  /// Only `targets` cheat, each task with `probability`.
  targeted,
};

/// Baseline ranking used to pick targeted cheaters.
enum class TargetSelector {
  none,
  /// highest final reputation
  top_r,
  /// largest summed normalized payback
  top_p,
  /// most tasks accomplished
  top_c,
};

struct CheatPolicy {
  CheatKind kind{CheatKind::honest};
  double probability{0.0};
  /// Cheat reports are uniform in [cheat_low, cheat_high].
  double cheat_low{2.0};
  double cheat_high{24.0};
  TargetSelector selector{TargetSelector::none};
  std::size_t target_count{1};
  /// Resolved cheaters for `targeted`; filled from a baseline run when empty.
  std::set<UserId> targets;

  /// Throws InvalidValue on probability outside [0,1] or an empty range.
  void validate() const;
  bool governs(UserId user) const;
};

std::string_view to_string(CheatKind kind);
std::string_view to_string(TargetSelector selector);
CheatKind cheat_kind_from_string(std::string_view text);
TargetSelector target_selector_from_string(std::string_view text);

/// Bernoulli(policy.probability) for governed users, false otherwise. Pass the
/// per-user, per-task decision substream.
bool decide_cheat(const CheatPolicy& policy, UserId user, RandomStream& stream);

/// The honest value verbatim, or a uniform draw from the cheat range.
Observation make_report(UserId user, double honest_value, bool cheat,
                        const CheatPolicy& policy, RandomStream& stream);

/// The `count` best users of a completed baseline run under `selector`, ties
/// broken by ascending id. Throws InvalidInput for an empty baseline or
/// TargetSelector::none.
std::set<UserId> select_targets(TargetSelector selector,
                                const SimResult& baseline,
                                std::size_t count = 1);

}  // namespace cri
