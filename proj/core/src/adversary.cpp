#include "cri/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cri/errors.hpp"
#include "cri/simulation.hpp"

namespace cri {

void CheatPolicy::validate() const {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw InvalidValue("cheat probability must lie in [0, 1]");
  }
  if (!std::isfinite(cheat_low) || !std::isfinite(cheat_high) ||
      !(cheat_low < cheat_high)) {
    throw InvalidValue("cheat range must satisfy low < high");
  }
  if (kind == CheatKind::targeted && targets.empty() &&
      selector == TargetSelector::none) {
    throw InvalidInput("targeted policy needs targets or a selector");
  }
  if (kind == CheatKind::targeted && target_count == 0) {
    throw InvalidInput("target count must be positive");
  }
}

bool CheatPolicy::governs(UserId user) const {
  switch (kind) {
    case CheatKind::honest:
      return false;
    case CheatKind::general_intensity:
      return true;
    case CheatKind::targeted:
      return targets.contains(user);
  }
  return false;
}

std::string_view to_string(CheatKind kind) {
  switch (kind) {
    case CheatKind::honest: return "honest";
    case CheatKind::general_intensity: return "general";
    case CheatKind::targeted: return "targeted";
  }
  return "honest";
}

std::string_view to_string(TargetSelector selector) {
  switch (selector) {
    case TargetSelector::none: return "none";
    case TargetSelector::top_r: return "TopR";
    case TargetSelector::top_p: return "TopP";
    case TargetSelector::top_c: return "TopC";
  }
  return "none";
}

CheatKind cheat_kind_from_string(std::string_view text) {
  if (text == "honest") return CheatKind::honest;
  if (text == "general") return CheatKind::general_intensity;
  if (text == "targeted") return CheatKind::targeted;
  throw InvalidInput("unknown cheat kind '" + std::string(text) + "'");
}

TargetSelector target_selector_from_string(std::string_view text) {
  if (text == "none") return TargetSelector::none;
  if (text == "TopR") return TargetSelector::top_r;
  if (text == "TopP") return TargetSelector::top_p;
  if (text == "TopC") return TargetSelector::top_c;
  throw InvalidInput("unknown target selector '" + std::string(text) + "'");
}

bool decide_cheat(const CheatPolicy& policy, UserId user, RandomStream& stream) {
  if (!policy.governs(user) || policy.probability <= 0.0) {
    return false;
  }
  // Always consume one draw so the stream position does not depend on p.
  return stream.uniform() < policy.probability;
}

Observation make_report(UserId user, double honest_value, bool cheat,
                        const CheatPolicy& policy, RandomStream& stream) {
  if (!cheat) {
    return {user, honest_value};
  }
  return {user, stream.uniform(policy.cheat_low, policy.cheat_high)};
}

std::set<UserId> select_targets(TargetSelector selector,
                                const SimResult& baseline, std::size_t count) {
  if (selector == TargetSelector::none) {
    throw InvalidInput("no target selector given");
  }
  if (baseline.final_reputations.empty() || baseline.totals.empty()) {
    throw InvalidInput("baseline result has no users");
  }
  std::vector<std::pair<double, UserId>> scored;
  for (const auto& [user, totals] : baseline.totals) {
    double score = 0.0;
    switch (selector) {
      case TargetSelector::top_r:
        score = baseline.final_reputations.at(user);
        break;
      case TargetSelector::top_p:
        score = totals.payback_sum;
        break;
      case TargetSelector::top_c:
        score = static_cast<double>(totals.task_count);
        break;
      case TargetSelector::none:
        break;
    }
    scored.emplace_back(score, user);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::set<UserId> out;
  for (std::size_t i = 0; i < std::min(count, scored.size()); ++i) {
    out.insert(scored[i].second);
  }
  return out;
}

}  // namespace cri
