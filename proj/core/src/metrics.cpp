#include "cri/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "cri/errors.hpp"
#include "cri/reputation.hpp"

namespace cri {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::dt: return "DT";
    case Metric::rep: return "REP";
    case Metric::pb: return "PB";
    case Metric::tc: return "TC";
  }
  return "DT";
}

std::string_view to_string(SeriesKind kind) {
  return kind == SeriesKind::cdf ? "CDF" : "TVF";
}

Metric metric_from_string(std::string_view text) {
  if (text == "DT") return Metric::dt;
  if (text == "REP") return Metric::rep;
  if (text == "PB") return Metric::pb;
  if (text == "TC") return Metric::tc;
  throw InvalidInput("unknown metric '" + std::string(text) + "'");
}

SeriesKind series_kind_from_string(std::string_view text) {
  if (text == "CDF") return SeriesKind::cdf;
  if (text == "TVF") return SeriesKind::tvf;
  throw InvalidInput("unknown series kind '" + std::string(text) + "'");
}

MetricSeries cdf(std::span<const double> values, Metric metric,
                 std::string scenario) {
  if (values.empty()) {
    throw InvalidInput("CDF of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw InvalidInput("CDF of a non-finite value");
  }
  std::sort(sorted.begin(), sorted.end());
  MetricSeries out{metric, SeriesKind::cdf, std::move(scenario), {}};
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.points.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

std::vector<double> metric_values(const SimResult& result, Metric metric) {
  std::vector<double> out;
  switch (metric) {
    case Metric::dt:
      for (const auto& o : result.outcomes) {
        if (!o.skipped) out.push_back(o.discovered_truth);
      }
      break;
    case Metric::rep:
      for (const auto& [user, r] : result.final_reputations) out.push_back(r);
      break;
    case Metric::pb:
      for (const auto& [user, t] : result.totals) out.push_back(t.payback_sum);
      break;
    case Metric::tc:
      for (const auto& [user, t] : result.totals) {
        out.push_back(static_cast<double>(t.task_count));
      }
      break;
  }
  return out;
}

namespace {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::optional<double> pct_change(double baseline, double variant) {
  if (baseline == 0.0) {
    if (variant == 0.0) return 0.0;
    return std::nullopt;
  }
  return (variant - baseline) / baseline * 100.0;
}

}  // namespace

MetricSeries tvf(const SimResult& result, Metric metric,
                 std::optional<UserId> user) {
  if (user && !result.totals.contains(*user)) {
    throw InvalidInput("unknown user " + std::to_string(user->value));
  }
  MetricSeries out{metric, SeriesKind::tvf, result.config.label, {}};
  const Reputation r0 =
      clamp_reputation(result.config.params.r0, result.config.params.bounds);
  const double population = static_cast<double>(result.totals.size());
  if (!user && metric != Metric::dt && result.totals.empty()) {
    throw InvalidInput("result has no users");
  }

  std::map<UserId, Reputation> reps;
  if (metric == Metric::rep) {
    for (const auto& [u, t] : result.totals) reps[u] = r0;
  }
  double running = 0.0;
  for (const auto& o : result.outcomes) {
    const double x = static_cast<double>(o.announce_time);
    double y = 0.0;
    switch (metric) {
      case Metric::dt:
        if (!o.skipped) out.points.emplace_back(x, o.discovered_truth);
        continue;
      case Metric::rep:
        for (const auto& [u, after] : o.reputations_after) reps[u] = after;
        if (user) {
          y = reps.at(*user);
        } else {
          for (const auto& [u, r] : reps) y += r;
          y /= population;
        }
        break;
      case Metric::pb:
      case Metric::tc:
        for (const auto& [u, pb] : o.paybacks) {
          if (!user || u == *user) {
            running += metric == Metric::pb ? pb.normalized : 1.0;
          }
        }
        y = user ? running : running / population;
        break;
    }
    out.points.emplace_back(x, y);
  }
  return out;
}

UserDelta user_delta(const SimResult& baseline, const SimResult& variant,
                     UserId user) {
  auto b = baseline.totals.find(user);
  auto v = variant.totals.find(user);
  if (b == baseline.totals.end() || v == variant.totals.end()) {
    throw InvalidInput("user " + std::to_string(user.value) +
                       " missing from one of the runs");
  }
  return {pct_change(baseline.final_reputations.at(user),
                     variant.final_reputations.at(user)),
          pct_change(b->second.payback_sum, v->second.payback_sum),
          pct_change(static_cast<double>(b->second.task_count),
                     static_cast<double>(v->second.task_count))};
}

DisturbanceSummary dt_disturbance(const SimResult& baseline,
                                  const SimResult& variant) {
  std::map<int, double> base_truth;
  for (const auto& o : baseline.outcomes) {
    if (!o.skipped) base_truth[o.task_id] = o.discovered_truth;
  }
  double abs_diff = 0.0;
  double abs_base = 0.0;
  std::size_t common = 0;
  for (const auto& o : variant.outcomes) {
    if (o.skipped) continue;
    auto it = base_truth.find(o.task_id);
    if (it == base_truth.end()) continue;
    abs_diff += std::abs(o.discovered_truth - it->second);
    abs_base += std::abs(it->second);
    ++common;
  }
  if (common == 0) {
    throw InvalidInput("baseline and variant share no completed task");
  }

  DisturbanceSummary s;
  s.common_tasks = common;
  s.mean_dt_disturbance_abs = abs_diff / static_cast<double>(common);
  if (abs_base > 0.0) {
    s.mean_dt_disturbance_pct = abs_diff / abs_base * 100.0;
  } else if (abs_diff > 0.0) {
    throw InvalidValue("baseline DT is identically zero; percentage undefined");
  }

  s.baseline_mean_rep = mean_of(metric_values(baseline, Metric::rep));
  s.variant_mean_rep = mean_of(metric_values(variant, Metric::rep));
  s.baseline_mean_pb = mean_of(metric_values(baseline, Metric::pb));
  s.variant_mean_pb = mean_of(metric_values(variant, Metric::pb));
  s.baseline_mean_tc = mean_of(metric_values(baseline, Metric::tc));
  s.variant_mean_tc = mean_of(metric_values(variant, Metric::tc));
  s.population = {pct_change(s.baseline_mean_rep, s.variant_mean_rep),
                  pct_change(s.baseline_mean_pb, s.variant_mean_pb),
                  pct_change(s.baseline_mean_tc, s.variant_mean_tc)};
  for (UserId u : variant.config.cheat.targets) {
    s.targets[u] = user_delta(baseline, variant, u);
  }
  return s;
}

namespace {

void write_double(std::ostream& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
}

double read_double(std::string_view text, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "bad number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

void write_series_csv(std::ostream& out, std::span<const MetricSeries> series) {
  for (const auto& s : series) {
    if (s.kind != series.front().kind) {
      throw InvalidInput("one series file holds one series kind");
    }
    if (s.scenario.find_first_of(",\n\r") != std::string::npos) {
      throw InvalidInput("scenario label may not contain ',' or newlines");
    }
  }
  out << "metric,scenario,x,y\n";
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      out << to_string(s.metric) << ',' << s.scenario << ',';
      write_double(out, x);
      out << ',';
      write_double(out, y);
      out << '\n';
    }
  }
}

std::vector<MetricSeries> read_series_csv(std::istream& in, SeriesKind kind) {
  std::vector<MetricSeries> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "metric,scenario,x,y") continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      f.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    f.push_back(rest);
    if (f.size() != 4) {
      throw ParseError(line_no, "expected metric,scenario,x,y");
    }
    Metric metric{};
    try {
      metric = metric_from_string(f[0]);
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
    const std::string scenario{f[1]};
    if (out.empty() || out.back().metric != metric ||
        out.back().scenario != scenario) {
      out.push_back({metric, kind, scenario, {}});
    }
    out.back().points.emplace_back(read_double(f[2], line_no),
                                   read_double(f[3], line_no));
  }
  return out;
}

std::string to_json(const DisturbanceSummary& s) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) -> json {
    return v ? json(*v) : json(nullptr);
  };
  auto delta = [&](const UserDelta& d) {
    return json{{"rep_pct", opt(d.rep_pct)},
                {"pb_pct", opt(d.pb_pct)},
                {"tc_pct", opt(d.tc_pct)}};
  };
  json targets = json::array();
  for (const auto& [user, d] : s.targets) {
    json t = delta(d);
    t["user"] = user.value;
    targets.push_back(t);
  }
  json j{{"common_tasks", s.common_tasks},
         {"mean_dt_disturbance_pct", s.mean_dt_disturbance_pct},
         {"mean_dt_disturbance_abs", s.mean_dt_disturbance_abs},
         {"baseline", {{"mean_rep", s.baseline_mean_rep},
                       {"mean_pb", s.baseline_mean_pb},
                       {"mean_tc", s.baseline_mean_tc}}},
         {"variant", {{"mean_rep", s.variant_mean_rep},
                      {"mean_pb", s.variant_mean_pb},
                      {"mean_tc", s.variant_mean_tc}}},
         {"population", delta(s.population)},
         {"targets", targets}};
  return j.dump(2);
}

}  // namespace cri
