#include <CLI11.hpp>
#include <iostream>

#include "maxshape/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"maxshape: maxitive set functional minimization over curve networks"};
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool have_seed = false, quiet = false, validate_only = false;

  app.add_option("--config", config_path, "path to the run config JSON")->required();
  app.add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    have_seed = true;
  });
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_flag("--quiet", quiet, "suppress progress output");
  app.add_flag("--validate", validate_only, "check the config and print diagnostics only");
  CLI11_PARSE(app, argc, argv);

  if (validate_only) {
    const auto diags = maxshape::cli::validate_config(config_path);
    for (const auto& d : diags) std::cout << d << "\n";
    std::cout << (diags.empty() ? "config ok" : "diagnostics: " + std::to_string(diags.size()))
              << "\n";
    return diags.empty() ? 0 : 1;
  }

  maxshape::cli::Overrides ov;
  if (have_seed) ov.seed = seed;
  if (!out_dir.empty()) ov.out_dir = out_dir;
  ov.quiet = quiet;
  return maxshape::cli::run(config_path, ov);
}
