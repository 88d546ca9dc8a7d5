#pragma once

// Reading and writing point configurations.
//
// JSON:  {"name": "segre", "points": [[0,0],[1,0],[0,1],[1,1]]}
//        Integers may be JSON numbers or decimal strings (for values that do
//        not fit in 53 bits).  Unknown keys are ignored.
// Text:  one point per line, whitespace separated integers, '#' starts a
//        comment, blank lines ignored.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dualdefect/config.hpp"

namespace dualdefect {

struct LoadedConfig {
  PointConfig config;
  std::optional<long> expected_delta;  // corpus metadata, if present
};

LoadedConfig parse_config_json(std::string_view text, std::string fallback_name = {});
PointConfig parse_config_text(std::string_view text, std::string name = {});
// Dispatches on the extension (.json, anything else is text).
LoadedConfig load_config(const std::filesystem::path& path);

std::string config_to_json(const PointConfig& a, std::optional<long> expected_delta = std::nullopt);
std::string config_to_text(const PointConfig& a);

}  // namespace dualdefect
