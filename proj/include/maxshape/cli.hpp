#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxshape::cli {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool quiet = false;
};

// Executes the pipeline named by the config's "command" field
// (solve | evaluate | audit | properties | fixtures).
// Returns 0 on success, 2 on constraint-violation detection, 1 on error.
int run(const std::string& config_path, const Overrides& overrides = {});

// Structural diagnostics without execution: unknown keys, missing fields,
// infeasible values. Empty result means the config is clean.
std::vector<std::string> validate_config(const std::string& config_path);

}  // namespace maxshape::cli
