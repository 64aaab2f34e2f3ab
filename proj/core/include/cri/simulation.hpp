#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cri/adversary.hpp"
#include "cri/payback.hpp"
#include "cri/trace.hpp"
#include "cri/truth_discovery.hpp"
#include "cri/types.hpp"

namespace cri {

struct TaskSpec {
  int task_id{0};
  std::int64_t announce_time{0};
  std::int64_t half_window{60};

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

enum class ScheduleKind { fixed, poisson };

struct ScheduleSpec {
  ScheduleKind kind{ScheduleKind::fixed};
  /// Seconds between announcements (fixed).
  std::int64_t interval{300};
  /// Announcements per second (poisson).
  double rate{1.0 / 300.0};
};

/// Announcement times in [0, horizon), strictly increasing. Throws
/// InvalidInput for a non-positive interval/rate or negative horizon.
std::vector<TaskSpec> build_schedule(const ScheduleSpec& spec,
                                     std::int64_t horizon, std::uint64_t seed,
                                     std::int64_t half_window = 60);

struct TraceSource {
  /// Read the trace from this CSV when set; otherwise synthesize it.
  std::optional<std::filesystem::path> file;
  /// Timestamps in the file must lie in [0, file_horizon).
  std::int64_t file_horizon{kDayHorizon};
  SynthSpec synth{};
};

struct ScenarioConfig {
  std::string label{"baseline"};
  std::uint64_t seed{1};
  std::int64_t horizon{kDayHorizon};
  std::int64_t half_window{60};
  IncentiveParams params{};
  int max_iterations{100};
  ShortfallDenominator shortfall_denominator{ShortfallDenominator::expected};
  TraceSource trace{};
  ScheduleSpec schedule{};
  CheatPolicy cheat{};

  /// Throws InvalidValue / InvalidInput describing the first bad field.
  void validate() const;
};

struct TaskOutcome {
  int task_id{0};
  std::int64_t announce_time{0};
  bool skipped{false};
  std::string skip_reason;
  std::size_t applicant_count{0};
  double discovered_truth{0.0};
  double total_reward{0.0};
  int iterations{0};
  /// Rank order from recruitment.
  std::vector<UserId> employees;
  std::set<UserId> cheaters;
  // All maps below are keyed by the employees; empty when skipped.
  std::map<UserId, double> reports;
  std::map<UserId, Contribution> contributions;
  std::map<UserId, Contribution> expected_contributions;
  std::map<UserId, Payback> paybacks;
  std::map<UserId, Reputation> reputations_before;
  std::map<UserId, Reputation> reputations_after;
};

struct UserTotals {
  double payback_sum{0.0};
  std::uint32_t task_count{0};
};

struct SimResult {
  ScenarioConfig config;
  std::vector<TaskOutcome> outcomes;
  std::map<UserId, Reputation> final_reputations;
  std::map<UserId, UserTotals> totals;

  std::size_t skipped_count() const;
};

using ReputationState = std::map<UserId, Reputation>;

/// Everything a task needs besides its own spec and the mutable reputations.
struct TaskContext {
  const TraceSet& trace;
  const CheatPolicy& policy;
  IncentiveParams params{};
  int max_iterations{100};
  ShortfallDenominator shortfall_denominator{ShortfallDenominator::expected};
  std::uint64_t seed{1};
};

/// One announce / apply / recruit / report / discover / settle cycle.
///
/// Only recruited employees of a completed task have their reputation
/// written back. Fewer than two applicants, or truth discovery that does not
/// converge, yield a skipped outcome and leave `state` untouched.
TaskOutcome run_task(const TaskSpec& task, ReputationState& state,
                     const TaskContext& context);

/// Builds the trace the config describes.
TraceSet make_trace(const ScenarioConfig& config);

/// Runs the whole schedule over one reputation state initialized to r0.
/// A targeted policy without explicit targets first runs the honest baseline
/// of the same config and picks its targets from it.
SimResult run_scenario(const ScenarioConfig& config);
SimResult run_scenario(const ScenarioConfig& config, const TraceSet& trace);

/// `config` with an honest policy and the label "baseline".
ScenarioConfig baseline_of(const ScenarioConfig& config);

}  // namespace cri
