#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cri/simulation.hpp"

namespace cri {

// Scenario configs and results are JSON documents with sorted keys and
// shortest round-trip number formatting, so equal values serialize to equal
// bytes.

/// Missing keys take their defaults. Unknown keys are rejected. A relative
/// trace file path is resolved against `base_dir`.
ScenarioConfig parse_config(std::string_view json_text,
                            const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);
std::string to_json(const ScenarioConfig& config);

std::string to_json(const SimResult& result);
SimResult parse_result(std::string_view json_text);
SimResult load_result(const std::filesystem::path& path);
void save_result(const std::filesystem::path& path, const SimResult& result);

/// Reads a whole file; throws InvalidInput when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace cri
