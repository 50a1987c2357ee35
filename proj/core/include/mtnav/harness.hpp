#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mtnav/mission.hpp"
#include "mtnav/sim.hpp"

namespace mtnav {

/// N seeded trials of one mission. Trial i uses seed base_seed + i.
struct Campaign {
  MissionSpec spec;
  WorldSetup world;
  SimConfig config;
  int trials = 20;
  std::uint64_t base_seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  std::optional<std::filesystem::path> frame_dir;  // per-trial subdirectories

  void validate() const;
};

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  MissionResult result;
};

/// Time statistics over successful trials only. mean needs one success,
/// std_dev two.
struct CampaignStats {
  std::optional<double> mean;
  std::optional<double> std_dev;
  int success_count = 0;
  std::vector<TrialResult> trials;  // trial-index order
};

CampaignStats run_campaign(const Campaign& campaign);

struct SampleStats {
  double mean = 0.0;
  double std_dev = 0.0;  // n - 1 denominator
};

/// Throws InsufficientData on an empty input.
double sample_mean(std::span<const double> values);

/// Mean and sample standard deviation. Throws InsufficientData below 2 values.
SampleStats sample_stats(std::span<const double> values);

/// Largest perpendicular distance of the return leg (rows from the first
/// Reversing state on) from the line through the start and turnaround points.
/// Throws MalformedLog if the log never reverses.
double path_spread(std::span<const TrajectoryRow> rows);

// CSV surfaces.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows);
/// Throws MalformedLog on missing columns or unparsable fields.
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in);

void write_results_csv(std::ostream& out, std::span<const TrialResult> trials);

struct ResultRow {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string outcome;
  double elapsed = 0.0;
  std::int64_t ticks = 0;
  double final_x = 0.0;
  double final_y = 0.0;
};
std::vector<ResultRow> read_results_csv(std::istream& in);

void write_summary(std::ostream& out, const CampaignStats& stats);

/// Writes results.csv, trajectory_{trial}.csv and summary.txt into dir.
void write_campaign_outputs(const std::filesystem::path& dir, const CampaignStats& stats);

}  // namespace mtnav
