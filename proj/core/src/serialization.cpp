#include "cri/serialization.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cri/errors.hpp"

namespace cri {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                std::string_view where) {
  if (!j.is_object()) {
    throw InvalidInput(std::string(where) + " must be an object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto k : allowed) known = known || item.key() == k;
    if (!known) {
      throw InvalidInput("unknown key '" + item.key() + "' in " +
                         std::string(where));
    }
  }
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("bad value for '") + key + "': " + e.what());
    }
  }
}

std::string_view to_string(ShortfallDenominator d) {
  return d == ShortfallDenominator::expected ? "expected" : "actual";
}

ShortfallDenominator denominator_from_string(std::string_view s) {
  if (s == "expected") return ShortfallDenominator::expected;
  if (s == "actual") return ShortfallDenominator::actual;
  throw InvalidInput("unknown shortfall_denominator '" + std::string(s) + "'");
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["label"] = c.label;
  j["seed"] = c.seed;
  j["horizon"] = c.horizon;
  j["half_window"] = c.half_window;
  j["max_iterations"] = c.max_iterations;
  j["shortfall_denominator"] = std::string(to_string(c.shortfall_denominator));
  j["params"] = {{"alpha", c.params.alpha},
                 {"r0", c.params.r0},
                 {"epsilon", c.params.epsilon},
                 {"r_min", c.params.bounds.min},
                 {"r_max", c.params.bounds.max}};
  json trace;
  if (c.trace.file) {
    trace["file"] = c.trace.file->generic_string();
    trace["file_horizon"] = c.trace.file_horizon;
  } else {
    const auto& s = c.trace.synth;
    trace["synth"] = {{"users", s.users},
                      {"horizon", s.horizon},
                      {"mean_interval", s.mean_interval},
                      {"seed", s.seed},
                      {"offset", s.offset},
                      {"amplitude", s.amplitude},
                      {"phase", s.phase},
                      {"noise_sigma", s.noise_sigma},
                      {"low", s.low},
                      {"high", s.high}};
  }
  j["trace"] = trace;
  if (c.schedule.kind == ScheduleKind::fixed) {
    j["schedule"] = {{"kind", "fixed"}, {"interval", c.schedule.interval}};
  } else {
    j["schedule"] = {{"kind", "poisson"}, {"rate", c.schedule.rate}};
  }
  json targets = json::array();
  for (UserId u : c.cheat.targets) targets.push_back(u.value);
  j["cheat"] = {{"kind", std::string(to_string(c.cheat.kind))},
                {"probability", c.cheat.probability},
                {"low", c.cheat.cheat_low},
                {"high", c.cheat.cheat_high},
                {"selector", std::string(to_string(c.cheat.selector))},
                {"count", c.cheat.target_count},
                {"targets", targets}};
  return j;
}

ScenarioConfig config_from_json(const json& j,
                                const std::filesystem::path& base_dir) {
  check_keys(j,
             {"label", "seed", "horizon", "half_window", "max_iterations",
              "shortfall_denominator", "params", "trace", "schedule", "cheat"},
             "config");
  ScenarioConfig c;
  read_opt(j, "label", c.label);
  read_opt(j, "seed", c.seed);
  read_opt(j, "horizon", c.horizon);
  read_opt(j, "half_window", c.half_window);
  read_opt(j, "max_iterations", c.max_iterations);
  if (j.contains("shortfall_denominator")) {
    c.shortfall_denominator = denominator_from_string(
        j.at("shortfall_denominator").get<std::string>());
  }
  if (auto it = j.find("params"); it != j.end()) {
    check_keys(*it, {"alpha", "r0", "epsilon", "r_min", "r_max"}, "params");
    read_opt(*it, "alpha", c.params.alpha);
    read_opt(*it, "r0", c.params.r0);
    read_opt(*it, "epsilon", c.params.epsilon);
    read_opt(*it, "r_min", c.params.bounds.min);
    read_opt(*it, "r_max", c.params.bounds.max);
  }
  if (auto it = j.find("trace"); it != j.end()) {
    check_keys(*it, {"file", "file_horizon", "synth"}, "trace");
    if (it->contains("file") && it->contains("synth")) {
      throw InvalidInput("trace takes either 'file' or 'synth', not both");
    }
    if (auto f = it->find("file"); f != it->end()) {
      std::filesystem::path p = f->get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      c.trace.file = p;
      read_opt(*it, "file_horizon", c.trace.file_horizon);
    }
    if (auto s = it->find("synth"); s != it->end()) {
      check_keys(*s,
                 {"users", "horizon", "mean_interval", "seed", "offset",
                  "amplitude", "phase", "noise_sigma", "low", "high"},
                 "trace.synth");
      auto& sp = c.trace.synth;
      read_opt(*s, "users", sp.users);
      read_opt(*s, "horizon", sp.horizon);
      read_opt(*s, "mean_interval", sp.mean_interval);
      read_opt(*s, "seed", sp.seed);
      read_opt(*s, "offset", sp.offset);
      read_opt(*s, "amplitude", sp.amplitude);
      read_opt(*s, "phase", sp.phase);
      read_opt(*s, "noise_sigma", sp.noise_sigma);
      read_opt(*s, "low", sp.low);
      read_opt(*s, "high", sp.high);
    }
  }
  if (auto it = j.find("schedule"); it != j.end()) {
    check_keys(*it, {"kind", "interval", "rate"}, "schedule");
    std::string kind = "fixed";
    read_opt(*it, "kind", kind);
    if (kind == "fixed") {
      c.schedule.kind = ScheduleKind::fixed;
    } else if (kind == "poisson") {
      c.schedule.kind = ScheduleKind::poisson;
    } else {
      throw InvalidInput("unknown schedule kind '" + kind + "'");
    }
    read_opt(*it, "interval", c.schedule.interval);
    read_opt(*it, "rate", c.schedule.rate);
  }
  if (auto it = j.find("cheat"); it != j.end()) {
    check_keys(*it,
               {"kind", "probability", "low", "high", "selector", "count",
                "targets"},
               "cheat");
    std::string kind = "honest";
    std::string selector = "none";
    read_opt(*it, "kind", kind);
    read_opt(*it, "selector", selector);
    c.cheat.kind = cheat_kind_from_string(kind);
    c.cheat.selector = target_selector_from_string(selector);
    read_opt(*it, "probability", c.cheat.probability);
    read_opt(*it, "low", c.cheat.cheat_low);
    read_opt(*it, "high", c.cheat.cheat_high);
    read_opt(*it, "count", c.cheat.target_count);
    if (auto t = it->find("targets"); t != it->end()) {
      for (const auto& v : *t) c.cheat.targets.insert(UserId{v.get<std::uint32_t>()});
    }
  }
  c.validate();
  return c;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text,
                            const std::filesystem::path& base_dir) {
  try {
    return config_from_json(parse_json(json_text), base_dir);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad config: ") + e.what());
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

std::string to_json(const ScenarioConfig& config) {
  return config_to_json(config).dump(2);
}

std::string to_json(const SimResult& result) {
  json j;
  j["config"] = config_to_json(result.config);
  json users = json::array();
  for (const auto& [user, totals] : result.totals) {
    users.push_back({{"user", user.value},
                     {"final_reputation", result.final_reputations.at(user)},
                     {"payback_sum", totals.payback_sum},
                     {"task_count", totals.task_count}});
  }
  j["users"] = users;
  json outcomes = json::array();
  for (const auto& o : result.outcomes) {
    json employees = json::array();
    for (UserId u : o.employees) {
      employees.push_back({{"user", u.value},
                           {"cheated", o.cheaters.contains(u)},
                           {"report", o.reports.at(u)},
                           {"contribution", o.contributions.at(u)},
                           {"expected_contribution",
                            o.expected_contributions.at(u)},
                           {"payback", o.paybacks.at(u).raw},
                           {"payback_normalized", o.paybacks.at(u).normalized},
                           {"reputation_before", o.reputations_before.at(u)},
                           {"reputation_after", o.reputations_after.at(u)}});
    }
    outcomes.push_back({{"task_id", o.task_id},
                        {"announce_time", o.announce_time},
                        {"skipped", o.skipped},
                        {"skip_reason", o.skip_reason},
                        {"applicants", o.applicant_count},
                        {"discovered_truth", o.discovered_truth},
                        {"total_reward", o.total_reward},
                        {"iterations", o.iterations},
                        {"employees", employees}});
  }
  j["outcomes"] = outcomes;
  return j.dump(1);
}

SimResult parse_result(std::string_view json_text) {
  const json j = parse_json(json_text);
  try {
    SimResult r;
    r.config = config_from_json(j.at("config"), {});
    for (const auto& u : j.at("users")) {
      const UserId id{u.at("user").get<std::uint32_t>()};
      r.final_reputations[id] = u.at("final_reputation").get<double>();
      r.totals[id] = {u.at("payback_sum").get<double>(),
                      u.at("task_count").get<std::uint32_t>()};
    }
    for (const auto& oj : j.at("outcomes")) {
      TaskOutcome o;
      o.task_id = oj.at("task_id").get<int>();
      o.announce_time = oj.at("announce_time").get<std::int64_t>();
      o.skipped = oj.at("skipped").get<bool>();
      o.skip_reason = oj.at("skip_reason").get<std::string>();
      o.applicant_count = oj.at("applicants").get<std::size_t>();
      o.discovered_truth = oj.at("discovered_truth").get<double>();
      o.total_reward = oj.at("total_reward").get<double>();
      o.iterations = oj.at("iterations").get<int>();
      for (const auto& e : oj.at("employees")) {
        const UserId u{e.at("user").get<std::uint32_t>()};
        o.employees.push_back(u);
        if (e.at("cheated").get<bool>()) o.cheaters.insert(u);
        o.reports[u] = e.at("report").get<double>();
        o.contributions[u] = e.at("contribution").get<double>();
        o.expected_contributions[u] = e.at("expected_contribution").get<double>();
        o.paybacks[u] = {e.at("payback").get<double>(),
                         e.at("payback_normalized").get<double>()};
        o.reputations_before[u] = e.at("reputation_before").get<double>();
        o.reputations_after[u] = e.at("reputation_after").get<double>();
      }
      r.outcomes.push_back(std::move(o));
    }
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad result document: ") + e.what());
  }
}

SimResult load_result(const std::filesystem::path& path) {
  return parse_result(read_file(path));
}

void save_result(const std::filesystem::path& path, const SimResult& result) {
  write_file(path, to_json(result));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw InvalidInput("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out{path, std::ios::binary};
  if (!out) {
    throw InvalidInput("cannot write " + path.string());
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.put('\n');
}

}  // namespace cri
