#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "cri/types.hpp"

namespace cri {

inline constexpr std::int64_t kDayHorizon = 86400;

struct TraceSample {
  UserId user;
  std::int64_t timestamp{0};
  double value{0.0};

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

/// Per-user sensing samples over [0, horizon). Immutable once built.
class TraceSet {
 public:
  TraceSet() = default;
  /// Groups and time-sorts `samples` (stable, so equal timestamps keep file
  /// order). `extra_users` registers users that may have no samples at all.
  TraceSet(std::vector<TraceSample> samples, std::int64_t horizon,
           const std::vector<UserId>& extra_users = {});

  std::int64_t horizon() const noexcept { return horizon_; }
  std::size_t user_count() const noexcept { return per_user_.size(); }
  std::size_t sample_count() const noexcept;
  std::vector<UserId> users() const;
  bool contains(UserId user) const { return per_user_.contains(user); }

  /// Throws InvalidInput for unknown users.
  const std::vector<TraceSample>& samples(UserId user) const;

  friend bool operator==(const TraceSet&, const TraceSet&) = default;

 private:
  std::map<UserId, std::vector<TraceSample>> per_user_;
  std::int64_t horizon_{kDayHorizon};
};

/// Reads `user_id,timestamp_s,temp_c` rows. A non-numeric first line is
/// taken as a header. Timestamps must lie in [0, horizon).
TraceSet read_trace(std::istream& in, std::int64_t horizon = kDayHorizon);
TraceSet load_trace(const std::filesystem::path& path,
                    std::int64_t horizon = kDayHorizon);

/// Writes rows in user then time order with round-trip exact values.
void write_trace(std::ostream& out, const TraceSet& trace);
void save_trace(const std::filesystem::path& path, const TraceSet& trace);

struct SynthSpec {
  std::uint32_t users{366};
  std::int64_t horizon{kDayHorizon};
  /// Mean gap between a user's samples (exponential renewal process).
  std::int64_t mean_interval{600};
  std::uint64_t seed{1};
  /// T(t) = offset + amplitude * sin(2 pi (t - phase) / 86400) + noise,
  /// clipped to [low, high].
  double offset{13.0};
  double amplitude{11.0};
  std::int64_t phase{32400};
  double noise_sigma{0.5};
  double low{2.0};
  double high{24.0};
};

/// Deterministic synthetic trace; one independent substream per user.
TraceSet synth_trace(const SynthSpec& spec);

/// Value of the sample nearest to t within [t - half_window, t + half_window];
/// equidistant samples resolve to the earlier one. Empty when nothing
/// qualifies. Throws InvalidInput for unknown users or a negative window.
std::optional<double> query_window(const TraceSet& trace, UserId user,
                                   std::int64_t t, std::int64_t half_window);

}  // namespace cri
