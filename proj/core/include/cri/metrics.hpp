#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cri/simulation.hpp"

namespace cri {

/// DT = discovered truth, REP = reputation, PB = normalized payback,
/// TC = task count.
enum class Metric { dt, rep, pb, tc };
enum class SeriesKind { cdf, tvf };

std::string_view to_string(Metric metric);
std::string_view to_string(SeriesKind kind);
Metric metric_from_string(std::string_view text);
SeriesKind series_kind_from_string(std::string_view text);

struct MetricSeries {
  Metric metric{Metric::dt};
  SeriesKind kind{SeriesKind::cdf};
  std::string scenario;
  std::vector<std::pair<double, double>> points;

  friend bool operator==(const MetricSeries&, const MetricSeries&) = default;
};

/// Empirical CDF: one point per distinct value, (value, #{v <= value} / N).
/// Throws InvalidInput on an empty or non-finite sample.
MetricSeries cdf(std::span<const double> values, Metric metric = Metric::dt,
                 std::string scenario = {});

/// Per-user (or population-level) values the CDF figures are drawn from.
/// DT: one value per completed task. REP/PB/TC: one value per user.
std::vector<double> metric_values(const SimResult& result, Metric metric);

/// Time series sampled at every task announcement.
///
/// DT gives the discovered truth of each completed task. With a user, REP is
/// that user's reputation after each task and PB/TC are its cumulative
/// payback and task count. Without a user, REP/PB/TC are population means.
/// Throws InvalidInput for an unknown user.
MetricSeries tvf(const SimResult& result, Metric metric,
                 std::optional<UserId> user = std::nullopt);

struct UserDelta {
  /// (variant - baseline) / baseline * 100; empty when the baseline is zero.
  std::optional<double> rep_pct;
  std::optional<double> pb_pct;
  std::optional<double> tc_pct;
};

struct DisturbanceSummary {
  std::size_t common_tasks{0};
  /// mean |DT_v - DT_b| / mean |DT_b| * 100 over common completed tasks.
  double mean_dt_disturbance_pct{0.0};
  /// mean |DT_v - DT_b| in observation units.
  double mean_dt_disturbance_abs{0.0};
  /// Population means (REP, PB, TC) and their relative deltas.
  double baseline_mean_rep{0.0};
  double variant_mean_rep{0.0};
  double baseline_mean_pb{0.0};
  double variant_mean_pb{0.0};
  double baseline_mean_tc{0.0};
  double variant_mean_tc{0.0};
  UserDelta population;
  /// Deltas for the variant's targeted cheaters.
  std::map<UserId, UserDelta> targets;
};

/// Compares a variant run with its baseline. Throws InvalidInput when the
/// runs share no completed task.
DisturbanceSummary dt_disturbance(const SimResult& baseline,
                                  const SimResult& variant);

UserDelta user_delta(const SimResult& baseline, const SimResult& variant,
                     UserId user);

/// CSV with header `metric,scenario,x,y`, values round-trip exactly. One file
/// holds one series kind, so the reader is told which kind it holds.
/// Throws InvalidInput when `series` mixes kinds.
void write_series_csv(std::ostream& out, std::span<const MetricSeries> series);
std::vector<MetricSeries> read_series_csv(std::istream& in, SeriesKind kind);

std::string to_json(const DisturbanceSummary& summary);

}  // namespace cri
