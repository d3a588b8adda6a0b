#include <cstdint>
#include <string>

#include "CLI11.hpp"

#include "awmm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Range-free localization simulator: hop-count baseline and "
               "adaptive weighted min-max localization"};
  awmm::RunOptions opts;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string sweep;

  app.add_option("--scenario", opts.scenario_path, "Scenario file (key = value lines)")
      ->required();
  app.add_option("--out", opts.out_dir, "Output directory for CSVs and the run manifest")
      ->required();
  app.add_option("--algo", opts.algo, "Algorithm selection")
      ->check(CLI::IsMember({"dvhop", "awminmax", "both"}))
      ->capture_default_str();
  auto* trials_opt = app.add_option("--trials", trials, "Override the trial count");
  auto* seed_opt = app.add_option("--seed", seed, "Override the base seed");
  auto* sweep_opt =
      app.add_option("--sweep", sweep,
                     "Sweep spec axis:v1,v2,... with axis one of anchor_count, "
                     "node_density, avg_hop_distance_bins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad flags are configuration errors
  }

  if (*trials_opt) opts.trials = trials;
  if (*seed_opt) opts.seed = seed;
  if (*sweep_opt) opts.sweep = sweep;
  return awmm::run_command(opts);
}
