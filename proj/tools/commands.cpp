#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cri/errors.hpp"
#include "cri/metrics.hpp"
#include "cri/serialization.hpp"
#include "cri/simulation.hpp"
#include "cri/trace.hpp"

namespace cri::cli {

namespace {

namespace fs = std::filesystem;

constexpr Metric kMetrics[] = {Metric::dt, Metric::rep, Metric::pb, Metric::tc};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw InvalidInput("cannot create output directory " + dir.string());
  }
}

void write_series(const fs::path& path, const std::vector<MetricSeries>& series) {
  std::ostringstream buf;
  write_series_csv(buf, series);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << buf.str();
}

std::vector<MetricSeries> cdfs_of(const SimResult& result) {
  std::vector<MetricSeries> out;
  for (Metric m : kMetrics) {
    const auto values = metric_values(result, m);
    if (!values.empty()) out.push_back(cdf(values, m, result.config.label));
  }
  return out;
}

/// Population TVFs, plus per-user TVFs for each of `users`.
std::vector<MetricSeries> tvfs_of(const SimResult& result,
                                  const std::set<UserId>& users) {
  std::vector<MetricSeries> out;
  if (result.outcomes.empty()) return out;
  for (Metric m : kMetrics) out.push_back(tvf(result, m));
  for (UserId u : users) {
    for (Metric m : {Metric::rep, Metric::pb, Metric::tc}) {
      auto s = tvf(result, m, u);
      s.scenario += "/u" + std::to_string(u.value);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::string pct(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream s;
  s << std::showpos << std::fixed << std::setprecision(2) << *v << '%';
  return s.str();
}

void print_summary(std::ostream& log, const std::string& label,
                   const DisturbanceSummary& s) {
  log << label << ": DT disturbance " << std::fixed << std::setprecision(2)
      << s.mean_dt_disturbance_pct << "% (" << std::setprecision(3)
      << s.mean_dt_disturbance_abs << " C) over " << s.common_tasks
      << " tasks, REP " << pct(s.population.rep_pct) << ", PB "
      << pct(s.population.pb_pct) << ", TC " << pct(s.population.tc_pct) << '\n';
  for (const auto& [user, d] : s.targets) {
    log << "  target u" << user.value << ": REP " << pct(d.rep_pct) << ", PB "
        << pct(d.pb_pct) << ", TC " << pct(d.tc_pct) << '\n';
  }
  log.unsetf(std::ios::floatfield);
}

std::string intensity_label(double p) {
  std::ostringstream s;
  s << "general-" << std::lround(p * 100.0);
  return s.str();
}

}  // namespace

void run_command(const RunOptions& options, std::ostream& log) {
  ScenarioConfig config = load_config(options.config);
  if (options.seed) config.seed = *options.seed;
  const SimResult result = run_scenario(config);

  ensure_dir(options.out);
  save_result(options.out / "result.json", result);
  write_file(options.out / "config.json", to_json(result.config));
  write_series(options.out / "cdf.csv", cdfs_of(result));
  write_series(options.out / "tvf.csv", tvfs_of(result, result.config.cheat.targets));

  log << result.config.label << ": " << result.outcomes.size() << " tasks, "
      << result.skipped_count() << " skipped, " << result.final_reputations.size()
      << " users -> " << options.out.string() << '\n';
}

void synth_trace_command(const SynthOptions& options, std::ostream& log) {
  SynthSpec spec;
  spec.users = options.users;
  spec.horizon = options.horizon;
  spec.seed = options.seed;
  spec.mean_interval = options.mean_interval;
  const TraceSet trace = synth_trace(spec);
  if (options.out.has_parent_path()) ensure_dir(options.out.parent_path());
  save_trace(options.out, trace);
  log << trace.user_count() << " users, " << trace.sample_count() << " samples -> "
      << options.out.string() << '\n';
}

void report_command(const ReportOptions& options, std::ostream& log) {
  const SimResult baseline = load_result(options.baseline);
  const SimResult variant = load_result(options.variant);
  if (baseline.config.label == variant.config.label) {
    throw InvalidInput("baseline and variant share the label '" +
                       variant.config.label + "'");
  }
  const DisturbanceSummary summary = dt_disturbance(baseline, variant);

  std::set<UserId> targets = variant.config.cheat.targets;
  for (UserId u : targets) {
    if (!baseline.totals.contains(u)) {
      throw InvalidInput("target u" + std::to_string(u.value) +
                         " missing from the baseline");
    }
  }
  auto cdfs = cdfs_of(baseline);
  auto more = cdfs_of(variant);
  cdfs.insert(cdfs.end(), more.begin(), more.end());
  auto tvfs = tvfs_of(baseline, targets);
  more = tvfs_of(variant, targets);
  tvfs.insert(tvfs.end(), more.begin(), more.end());

  ensure_dir(options.out);
  write_file(options.out / "summary.json", to_json(summary));
  write_series(options.out / "cdf.csv", cdfs);
  write_series(options.out / "tvf.csv", tvfs);
  print_summary(log, variant.config.label + " vs " + baseline.config.label, summary);
}

void sweep_command(const SweepOptions& options, std::ostream& log) {
  if (options.intensities.empty()) {
    throw InvalidInput("no intensities given");
  }
  for (double p : options.intensities) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidValue("intensity must lie in [0, 1]");
    }
  }
  const ScenarioConfig config = load_config(options.config);
  const TraceSet trace = make_trace(config);
  const ScenarioConfig base_config = baseline_of(config);
  const SimResult baseline = run_scenario(base_config, trace);
  if (options.out) {
    ensure_dir(*options.out);
    save_result(*options.out / "baseline.json", baseline);
  }

  nlohmann::json rows = nlohmann::json::array();
  for (double p : options.intensities) {
    ScenarioConfig variant_config = base_config;
    variant_config.label = intensity_label(p);
    variant_config.cheat.kind = CheatKind::general_intensity;
    variant_config.cheat.probability = p;
    const SimResult variant = run_scenario(variant_config, trace);
    const DisturbanceSummary summary = dt_disturbance(baseline, variant);
    print_summary(log, variant_config.label, summary);
    if (options.out) {
      save_result(*options.out / (variant_config.label + ".json"), variant);
      auto row = nlohmann::json::parse(to_json(summary));
      row["intensity"] = p;
      row["label"] = variant_config.label;
      rows.push_back(std::move(row));
    }
  }
  if (options.out) write_file(*options.out / "sweep.json", rows.dump(2));
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Cheating-resilient incentive simulator"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  run_cmd->add_option("--config", run.config, "Scenario config (JSON)")->required();
  run_cmd->add_option("--seed", run.seed, "Override the config seed");
  run_cmd->add_option("--out", run.out, "Output directory")->required();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth-trace", "Write a synthetic trace CSV");
  synth_cmd->add_option("--users", synth.users, "Number of users");
  synth_cmd->add_option("--horizon", synth.horizon, "Horizon in seconds");
  synth_cmd->add_option("--seed", synth.seed, "Trace seed");
  synth_cmd->add_option("--mean-interval", synth.mean_interval,
                        "Mean gap between a user's samples (s)");
  synth_cmd->add_option("--out", synth.out, "Output CSV path")->required();

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Compare a variant with its baseline");
  report_cmd->add_option("--baseline", report.baseline, "Baseline result.json")
      ->required();
  report_cmd->add_option("--variant", report.variant, "Variant result.json")->required();
  report_cmd->add_option("--out", report.out, "Output directory")->required();

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "General-intensity sweep against baseline");
  sweep_cmd->add_option("--config", sweep.config, "Scenario config (JSON)")->required();
  sweep_cmd->add_option("--intensities", sweep.intensities, "Comma-separated probabilities")
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "Optional output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*run_cmd) run_command(run, out);
    if (*synth_cmd) synth_trace_command(synth, out);
    if (*report_cmd) report_command(report, out);
    if (*sweep_cmd) sweep_command(sweep, out);
  } catch (const std::exception& e) {
    std::string message = e.what();
    for (char& c : message) {
      if (c == '\n') c = ' ';
    }
    err << "error: " << message << '\n';
    return 1;
  }
  return 0;
}

}  // namespace cri::cli
