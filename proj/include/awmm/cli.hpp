#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "awmm/topology.hpp"

namespace awmm {

inline constexpr const char* kToolVersion = "awmm 1.0.0";

// Flat key/value scenario file: one `key = value` pair per line, `#` comments,
// keys named exactly like the ScenarioConfig fields (obstacle_center takes
// two numbers). Missing keys keep their defaults. Throws ConfigError naming
// the key on unknown keys, bad values, or violated invariants.
ScenarioConfig parse_scenario(const std::string& path);

struct RunOptions {
  std::string scenario_path;
  std::string out_dir;
  std::string algo = "both";  // dvhop | awminmax | both
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sweep;  // "axis:v1,v2,..."
};

// Runs the campaign and writes trials.csv, summary.csv, cdf.csv and
// manifest.json into out_dir. Returns 0 on success, 1 on configuration
// errors, 2 on I/O errors; partially written outputs are removed on failure.
int run_command(const RunOptions& opts);

}  // namespace awmm
