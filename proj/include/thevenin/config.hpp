#pragma once

#include <filesystem>
#include <string_view>

#include "thevenin/simulation.hpp"
#include "thevenin/summary.hpp"

namespace thevenin {

/// Everything a JSON run configuration describes.
struct RunConfig {
  Scenario scenario;
  SummaryOptions output;
};

/// Parses a JSON document with sections scenario, esc, rwls, kalman, noise
/// and output. Every tunable is optional; only scenario.segments is
/// required. Unknown keys, wrong types and invariant violations raise
/// ConfigError carrying the dotted key path. The returned scenario has been
/// validated.
[[nodiscard]] RunConfig parse_config(std::string_view json_text);

/// Reads and parses a file. I/O failures raise std::runtime_error.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Parses "esc,rwls,kalman" style lists. Throws ConfigError on unknown names.
[[nodiscard]] EstimatorSet parse_estimator_list(std::string_view csv_list);

}  // namespace thevenin
