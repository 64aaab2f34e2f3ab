#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace cri::cli {

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
};

struct SynthOptions {
  std::uint32_t users{366};
  std::int64_t horizon{86400};
  std::uint64_t seed{1};
  std::int64_t mean_interval{600};
  std::filesystem::path out;
};

struct ReportOptions {
  std::filesystem::path baseline;
  std::filesystem::path variant;
  std::filesystem::path out;
};

struct SweepOptions {
  std::filesystem::path config;
  std::vector<double> intensities{0.10, 0.15, 0.20};
  std::optional<std::filesystem::path> out;
};

// Each command writes its files and a short human summary to `log`.
// Failures surface as cri::Error (or std::exception from the filesystem).
void run_command(const RunOptions& options, std::ostream& log);
void synth_trace_command(const SynthOptions& options, std::ostream& log);
void report_command(const ReportOptions& options, std::ostream& log);
void sweep_command(const SweepOptions& options, std::ostream& log);

/// Parses argv and dispatches. Returns the process exit code; errors are
/// reported as a single line on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace cri::cli
