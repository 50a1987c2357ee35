// mtnav: experiment runner for the moving-target navigation simulator.
//
//   mtnav run --task forward --trials 20 --seed 1 --out results/
//   mtnav stats --in results/results.csv
//   mtnav spread --in results/trajectory_0.csv
//
// Exit codes: 0 ok, 1 runtime error, 2 config/usage error, 3 a trial failed
// under --strict.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtnav/mtnav.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTrialFailed = 3;

struct RunArgs {
  std::string task;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string config;
  std::string out = "mtnav_out";
  bool dump_frames = false;
  bool literal_eq3 = false;
  bool strict = false;
};

int cmd_run(const RunArgs& args) {
  const auto kind = mtnav::parse_mission_kind(args.task);
  if (!kind) {
    std::cerr << "unknown task '" << args.task << "'\n";
    return kExitConfig;
  }

  mtnav::Campaign campaign;
  try {
    campaign = args.config.empty() ? mtnav::default_campaign(*kind)
                                   : mtnav::load_campaign(args.config, *kind);
    if (args.trials) campaign.trials = *args.trials;
    if (args.seed) campaign.base_seed = *args.seed;
    if (args.threads) campaign.threads = *args.threads;
    if (args.literal_eq3) campaign.config.gains.axes = mtnav::AxisConvention::LiteralEquations;
    if (args.dump_frames) campaign.frame_dir = std::filesystem::path(args.out);
    campaign.validate();
  } catch (const mtnav::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const mtnav::CampaignStats stats = mtnav::run_campaign(campaign);
  mtnav::write_campaign_outputs(args.out, stats);
  mtnav::write_summary(std::cout, stats);

  if (args.strict && stats.success_count < static_cast<int>(stats.trials.size())) {
    return kExitTrialFailed;
  }
  return 0;
}

int cmd_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << '\n';
    return kExitRuntime;
  }
  const auto rows = mtnav::read_results_csv(in);
  std::vector<double> times;
  for (const auto& r : rows) {
    if (r.outcome == "success") times.push_back(r.elapsed);
  }
  std::cout << "trials: " << rows.size() << '\n' << "success_count: " << times.size() << '\n';
  std::cout << "mean_s: ";
  if (times.empty()) {
    std::cout << "n/a\n";
  } else {
    std::cout << mtnav::sample_mean(times) << '\n';
  }
  std::cout << "std_dev_s: ";
  if (times.size() < 2) {
    std::cout << "n/a\n";
  } else {
    std::cout << mtnav::sample_stats(times).std_dev << '\n';
  }
  return 0;
}

int cmd_spread(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << '\n';
    return kExitRuntime;
  }
  const auto rows = mtnav::read_trajectory_csv(in);
  std::printf("path_spread_m: %.9g\n", mtnav::path_spread(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vision-based moving-target navigation simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run an N-trial campaign for one task");
  run->add_option("--task", run_args.task, "track | forward | return | coordination")
      ->required()
      ->check(CLI::IsMember({"track", "forward", "return", "coordination"}));
  run->add_option("--trials", run_args.trials, "Number of trials (default 20)")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", run_args.seed, "Base seed; trial i uses seed + i");
  run->add_option("--config", run_args.config, "JSON scenario file")->check(CLI::ExistingFile);
  run->add_option("--out", run_args.out, "Output directory")->capture_default_str();
  run->add_option("--threads", run_args.threads, "Worker threads (0 = all cores)");
  run->add_flag("--dump-frames", run_args.dump_frames, "Write every camera frame as PPM");
  run->add_flag("--literal-eq3", run_args.literal_eq3,
                "Use forward = +k*error_y (verbatim proportional law)");
  run->add_flag("--strict", run_args.strict, "Exit 3 if any trial fails");

  std::string stats_in;
  auto* stats = app.add_subcommand("stats", "Recompute aggregates from results.csv");
  stats->add_option("--in", stats_in, "results.csv")->required()->check(CLI::ExistingFile);

  std::string spread_in;
  auto* spread = app.add_subcommand("spread", "Return-leg path spread of a trajectory CSV");
  spread->add_option("--in", spread_in, "trajectory CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*stats) return cmd_stats(stats_in);
    if (*spread) return cmd_spread(spread_in);
  } catch (const mtnav::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
