#include "cri/simulation.hpp"

#include <cmath>
#include <random>

#include "cri/errors.hpp"
#include "cri/random.hpp"
#include "cri/recruitment.hpp"
#include "cri/reputation.hpp"

namespace cri {

std::vector<TaskSpec> build_schedule(const ScheduleSpec& spec,
                                     std::int64_t horizon, std::uint64_t seed,
                                     std::int64_t half_window) {
  if (horizon < 0) {
    throw InvalidInput("horizon must be non-negative");
  }
  std::vector<TaskSpec> tasks;
  switch (spec.kind) {
    case ScheduleKind::fixed: {
      if (spec.interval <= 0) {
        throw InvalidInput("schedule interval must be positive");
      }
      for (std::int64_t t = 0; t < horizon; t += spec.interval) {
        tasks.push_back({static_cast<int>(tasks.size()), t, half_window});
      }
      break;
    }
    case ScheduleKind::poisson: {
      if (!(spec.rate > 0.0) || !std::isfinite(spec.rate)) {
        throw InvalidInput("schedule rate must be positive");
      }
      RandomStream stream{seed, StreamPurpose::schedule};
      std::exponential_distribution<double> gap{spec.rate};
      double t = gap(stream.engine());
      while (t < static_cast<double>(horizon)) {
        const auto ts = static_cast<std::int64_t>(t);
        // Integer seconds: merge arrivals that land in one second.
        if (tasks.empty() || ts > tasks.back().announce_time) {
          tasks.push_back({static_cast<int>(tasks.size()), ts, half_window});
        }
        t += gap(stream.engine());
      }
      break;
    }
  }
  return tasks;
}

void ScenarioConfig::validate() const {
  params.validate();
  cheat.validate();
  if (horizon < 0) {
    throw InvalidValue("horizon must be non-negative");
  }
  if (half_window < 0) {
    throw InvalidValue("half_window must be non-negative");
  }
  if (max_iterations < 1) {
    throw InvalidValue("max_iterations must be at least 1");
  }
  if (schedule.kind == ScheduleKind::fixed && schedule.interval <= 0) {
    throw InvalidInput("schedule interval must be positive");
  }
  if (schedule.kind == ScheduleKind::poisson && !(schedule.rate > 0.0)) {
    throw InvalidInput("schedule rate must be positive");
  }
  if (trace.file && trace.file_horizon <= 0) {
    throw InvalidValue("trace file horizon must be positive");
  }
  if (!trace.file) {
    if (trace.synth.users < 2 || trace.synth.horizon <= 0 ||
        trace.synth.mean_interval <= 0) {
      throw InvalidValue("synthetic trace needs >= 2 users, positive horizon "
                         "and mean interval");
    }
  }
}

std::size_t SimResult::skipped_count() const {
  std::size_t n = 0;
  for (const auto& o : outcomes) n += o.skipped ? 1 : 0;
  return n;
}

TaskOutcome run_task(const TaskSpec& task, ReputationState& state,
                     const TaskContext& context) {
  TaskOutcome outcome;
  outcome.task_id = task.task_id;
  outcome.announce_time = task.announce_time;

  std::vector<Application> applications;
  std::map<UserId, double> possessed;
  for (UserId user : context.trace.users()) {
    auto value = query_window(context.trace, user, task.announce_time,
                              task.half_window);
    if (!value) continue;
    auto rep = state.find(user);
    if (rep == state.end()) {
      throw InvalidInput("no reputation for user " + std::to_string(user.value));
    }
    applications.push_back({user, rep->second});
    possessed[user] = *value;
  }
  outcome.applicant_count = applications.size();
  if (applications.size() < 2) {
    outcome.skipped = true;
    outcome.skip_reason = "insufficient applicants";
    return outcome;
  }

  const RecruitmentResult recruited = recruit(applications);

  std::vector<Observation> observations;
  std::map<UserId, Reputation> employee_reps;
  std::set<UserId> cheaters;
  for (UserId user : recruited.employees) {
    RandomStream decision{context.seed, StreamPurpose::cheat_decision,
                          user.value, static_cast<std::uint64_t>(task.task_id)};
    RandomStream value{context.seed, StreamPurpose::cheat_value, user.value,
                       static_cast<std::uint64_t>(task.task_id)};
    const bool cheat = decide_cheat(context.policy, user, decision);
    if (cheat) cheaters.insert(user);
    observations.push_back(
        make_report(user, possessed.at(user), cheat, context.policy, value));
    employee_reps[user] = state.at(user);
  }

  TruthOptions truth_options;
  truth_options.epsilon = context.params.epsilon;
  truth_options.max_iterations = context.max_iterations;
  TruthResult truth;
  try {
    truth = discover(observations, employee_reps, truth_options);
  } catch (const NonConvergence&) {
    outcome.skipped = true;
    outcome.skip_reason = "no convergence";
    return outcome;
  }

  SettlementOptions settle_options;
  settle_options.alpha = context.params.alpha;
  settle_options.bounds = context.params.bounds;
  settle_options.denominator = context.shortfall_denominator;
  const Settlement settlement =
      settle(truth.contributions, recruited.expected_contribution,
             employee_reps, recruited.total_reward, settle_options);

  outcome.discovered_truth = truth.truth;
  outcome.iterations = truth.iterations;
  outcome.total_reward = recruited.total_reward;
  outcome.employees = recruited.employees;
  outcome.cheaters = std::move(cheaters);
  for (const auto& o : observations) outcome.reports[o.user] = o.value;
  outcome.contributions = truth.contributions;
  outcome.expected_contributions = recruited.expected_contribution;
  outcome.paybacks = settlement.paybacks;
  outcome.reputations_before = employee_reps;
  outcome.reputations_after = settlement.new_reputations;

  for (const auto& [user, r] : settlement.new_reputations) {
    state[user] = r;
  }
  return outcome;
}

TraceSet make_trace(const ScenarioConfig& config) {
  if (config.trace.file) {
    return load_trace(*config.trace.file, config.trace.file_horizon);
  }
  return synth_trace(config.trace.synth);
}

ScenarioConfig baseline_of(const ScenarioConfig& config) {
  ScenarioConfig base = config;
  base.label = "baseline";
  base.cheat = CheatPolicy{};
  return base;
}

SimResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  return run_scenario(config, make_trace(config));
}

SimResult run_scenario(const ScenarioConfig& config, const TraceSet& trace) {
  config.validate();
  ScenarioConfig resolved = config;
  if (resolved.cheat.kind == CheatKind::targeted &&
      resolved.cheat.targets.empty()) {
    const SimResult baseline = run_scenario(baseline_of(config), trace);
    resolved.cheat.targets = select_targets(
        resolved.cheat.selector, baseline, resolved.cheat.target_count);
  }

  SimResult result;
  result.config = resolved;
  ReputationState state;
  for (UserId user : trace.users()) {
    state[user] = clamp_reputation(resolved.params.r0, resolved.params.bounds);
    result.totals[user] = UserTotals{};
  }

  const auto schedule = build_schedule(resolved.schedule, resolved.horizon,
                                       resolved.seed, resolved.half_window);
  const TaskContext context{trace,
                            resolved.cheat,
                            resolved.params,
                            resolved.max_iterations,
                            resolved.shortfall_denominator,
                            resolved.seed};
  result.outcomes.reserve(schedule.size());
  for (const TaskSpec& task : schedule) {
    TaskOutcome outcome = run_task(task, state, context);
    for (const auto& [user, pb] : outcome.paybacks) {
      auto& totals = result.totals[user];
      totals.payback_sum += pb.normalized;
      totals.task_count += 1;
    }
    result.outcomes.push_back(std::move(outcome));
  }
  result.final_reputations = std::move(state);
  return result;
}

}  // namespace cri
