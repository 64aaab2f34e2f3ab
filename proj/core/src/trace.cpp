#include "cri/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

#include "cri/errors.hpp"
#include "cri/random.hpp"

namespace cri {

TraceSet::TraceSet(std::vector<TraceSample> samples, std::int64_t horizon,
                   const std::vector<UserId>& extra_users)
    : horizon_{horizon} {
  for (UserId u : extra_users) {
    per_user_[u];
  }
  for (auto& s : samples) {
    per_user_[s.user].push_back(s);
  }
  for (auto& [user, list] : per_user_) {
    std::stable_sort(list.begin(), list.end(),
                     [](const TraceSample& a, const TraceSample& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
}

std::size_t TraceSet::sample_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [user, list] : per_user_) n += list.size();
  return n;
}

std::vector<UserId> TraceSet::users() const {
  std::vector<UserId> out;
  out.reserve(per_user_.size());
  for (const auto& [user, list] : per_user_) out.push_back(user);
  return out;
}

const std::vector<TraceSample>& TraceSet::samples(UserId user) const {
  auto it = per_user_.find(user);
  if (it == per_user_.end()) {
    throw InvalidInput("unknown user " + std::to_string(user.value));
  }
  return it->second;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

void write_double(std::ostream& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
}

}  // namespace

TraceSet read_trace(std::istream& in, std::int64_t horizon) {
  if (horizon <= 0) {
    throw InvalidValue("trace horizon must be positive");
  }
  std::vector<TraceSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_csv(view);
    std::uint32_t user = 0;
    if (line_no == 1 && !fields.empty() && !parse_number(fields[0], user)) {
      continue;  // header
    }
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 fields user_id,timestamp_s,temp_c");
    }
    std::int64_t ts = 0;
    double value = 0.0;
    if (!parse_number(fields[0], user)) {
      throw ParseError(line_no, "bad user id '" + std::string(fields[0]) + "'");
    }
    if (!parse_number(fields[1], ts)) {
      throw ParseError(line_no, "bad timestamp '" + std::string(fields[1]) + "'");
    }
    if (!parse_number(fields[2], value) || !std::isfinite(value)) {
      throw ParseError(line_no, "bad value '" + std::string(fields[2]) + "'");
    }
    if (ts < 0 || ts >= horizon) {
      throw ParseError(line_no, "timestamp outside [0, horizon)");
    }
    samples.push_back({UserId{user}, ts, value});
  }
  if (samples.empty()) {
    throw InvalidInput("trace has no samples");
  }
  TraceSet trace{std::move(samples), horizon};
  if (trace.user_count() < 2) {
    throw InvalidInput("trace needs at least two users");
  }
  return trace;
}

TraceSet load_trace(const std::filesystem::path& path, std::int64_t horizon) {
  std::ifstream in{path};
  if (!in) {
    throw InvalidInput("cannot open trace file " + path.string());
  }
  return read_trace(in, horizon);
}

void write_trace(std::ostream& out, const TraceSet& trace) {
  out << "user_id,timestamp_s,temp_c\n";
  for (UserId user : trace.users()) {
    for (const auto& s : trace.samples(user)) {
      out << s.user.value << ',' << s.timestamp << ',';
      write_double(out, s.value);
      out << '\n';
    }
  }
}

void save_trace(const std::filesystem::path& path, const TraceSet& trace) {
  std::ofstream out{path};
  if (!out) {
    throw InvalidInput("cannot write trace file " + path.string());
  }
  write_trace(out, trace);
}

TraceSet synth_trace(const SynthSpec& spec) {
  if (spec.users < 2) {
    throw InvalidValue("synthetic trace needs at least two users");
  }
  if (spec.horizon <= 0 || spec.mean_interval <= 0) {
    throw InvalidValue("horizon and mean interval must be positive");
  }
  if (!(spec.low < spec.high) || spec.noise_sigma < 0.0) {
    throw InvalidValue("bad synthetic value range or noise");
  }
  std::vector<TraceSample> samples;
  std::vector<UserId> users;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::uint32_t u = 0; u < spec.users; ++u) {
    users.emplace_back(u);
    RandomStream stream{spec.seed, StreamPurpose::trace, u};
    std::exponential_distribution<double> gap{
        1.0 / static_cast<double>(spec.mean_interval)};
    std::normal_distribution<double> noise{0.0, spec.noise_sigma};
    // Start each user at a uniform offset so the process is stationary.
    double t = stream.uniform(0.0, static_cast<double>(spec.mean_interval));
    while (true) {
      const auto ts = static_cast<std::int64_t>(t);
      if (ts >= spec.horizon) break;
      const double phase =
          two_pi * static_cast<double>(ts - spec.phase) / 86400.0;
      const double base = std::clamp(
          spec.offset + spec.amplitude * std::sin(phase), spec.low, spec.high);
      const double jitter =
          spec.noise_sigma > 0.0 ? noise(stream.engine()) : 0.0;
      samples.push_back({UserId{u}, ts,
                         std::clamp(base + jitter, spec.low, spec.high)});
      t += gap(stream.engine());
    }
  }
  return TraceSet{std::move(samples), spec.horizon, users};
}

std::optional<double> query_window(const TraceSet& trace, UserId user,
                                   std::int64_t t, std::int64_t half_window) {
  if (half_window < 0) {
    throw InvalidInput("half window must be non-negative");
  }
  const auto& list = trace.samples(user);
  auto it = std::lower_bound(
      list.begin(), list.end(), t - half_window,
      [](const TraceSample& s, std::int64_t v) { return s.timestamp < v; });
  std::optional<double> best;
  std::int64_t best_gap = 0;
  for (; it != list.end() && it->timestamp <= t + half_window; ++it) {
    const std::int64_t gap = std::abs(it->timestamp - t);
    // Strict comparison keeps the earlier sample on equal gaps.
    if (!best || gap < best_gap) {
      best = it->value;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace cri
