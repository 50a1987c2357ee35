#include "mtnav/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>

#include "mtnav/error.hpp"

namespace mtnav {

void Campaign::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  spec.validate();
  config.validate();
  for (const Marker& m : world.markers) m.validate();
}

namespace {

// Welford's running update; numerically stable in one pass.
struct Accumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
};

Accumulator accumulate(std::span<const double> values) {
  Accumulator acc;
  for (double v : values) acc.add(v);
  return acc;
}

}  // namespace

double sample_mean(std::span<const double> values) {
  if (values.empty()) throw InsufficientData("mean needs at least one value");
  return accumulate(values).mean;
}

SampleStats sample_stats(std::span<const double> values) {
  if (values.size() < 2) {
    throw InsufficientData("standard deviation needs at least two values, got " +
                           std::to_string(values.size()));
  }
  const Accumulator acc = accumulate(values);
  return {acc.mean, std::sqrt(std::max(0.0, acc.m2 / static_cast<double>(acc.n - 1)))};
}

CampaignStats run_campaign(const Campaign& campaign) {
  campaign.validate();
  const auto n = static_cast<std::size_t>(campaign.trials);

  CampaignStats stats;
  stats.trials.resize(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const std::uint64_t seed = campaign.base_seed + i;
        RunOptions options;
        if (campaign.frame_dir) {
          options.frame_dir = *campaign.frame_dir / ("frames_" + std::to_string(i));
        }
        WorldState world = make_world(campaign.world, campaign.config, seed);
        stats.trials[i] = {static_cast<int>(i), seed,
                           run(campaign.spec, std::move(world), campaign.config, options)};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  unsigned threads = campaign.threads != 0 ? campaign.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  // Merged in trial-index order regardless of scheduling.
  std::vector<double> times;
  for (const TrialResult& t : stats.trials) {
    if (t.result.outcome == Outcome::Success) times.push_back(t.result.elapsed);
  }
  stats.success_count = static_cast<int>(times.size());
  if (!times.empty()) stats.mean = sample_mean(times);
  if (times.size() >= 2) stats.std_dev = sample_stats(times).std_dev;
  return stats;
}

double path_spread(std::span<const TrajectoryRow> rows) {
  const auto turn = std::find_if(rows.begin(), rows.end(), [](const TrajectoryRow& r) {
    const auto s = FsmState::parse(r.fsm_state);
    return s && s->phase == Phase::Reversing;
  });
  if (turn == rows.end()) throw MalformedLog("trajectory has no return leg (no Reversing state)");

  const double sx = rows.front().drone.x;
  const double sy = rows.front().drone.y;
  const double dx = turn->drone.x - sx;
  const double dy = turn->drone.y - sy;
  const double len = std::hypot(dx, dy);

  double spread = 0.0;
  for (auto it = turn; it != rows.end(); ++it) {
    const double px = it->drone.x - sx;
    const double py = it->drone.y - sy;
    const double d = len > 0.0 ? std::abs(dx * py - dy * px) / len : std::hypot(px, py);
    spread = std::max(spread, d);
  }
  return spread;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kTrajectoryHeader =
    "step,time_s,drone_x,drone_y,drone_z,vel_fwd,vel_right,fsm_state,detected_color,err_px";
constexpr std::string_view kResultsHeader = "trial,seed,outcome,elapsed_s,ticks,final_x,final_y";

// Shortest round-trip representation; identical inputs give identical text.
void put(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    out.push_back(line.substr(begin, comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return out;
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view field, std::string_view column, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw MalformedLog("line " + std::to_string(line) + ": bad value '" + std::string(field) +
                       "' in column " + std::string(column));
  }
  return value;
}

class CsvTable {
 public:
  CsvTable(std::istream& in, std::string_view required_header) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedLog("empty CSV");
    const auto names = split(trim_cr(line));
    for (std::size_t i = 0; i < names.size(); ++i) columns_[std::string(names[i])] = i;
    width_ = names.size();
    for (std::string_view name : split(required_header)) {
      if (!columns_.contains(std::string(name))) {
        throw MalformedLog("missing column '" + std::string(name) + "'");
      }
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim_cr(line).empty()) continue;
      rows_.push_back(line);
      lines_.push_back(line_no);
    }
  }

  std::size_t size() const { return rows_.size(); }
  std::size_t line(std::size_t r) const { return lines_[r]; }

  std::vector<std::string_view> fields(std::size_t r) const {
    auto f = split(trim_cr(rows_[r]));
    if (f.size() != width_) {
      throw MalformedLog("line " + std::to_string(lines_[r]) + ": expected " +
                         std::to_string(width_) + " fields, got " + std::to_string(f.size()));
    }
    return f;
  }

  std::size_t col(std::string_view name) const { return columns_.at(std::string(name)); }

 private:
  std::unordered_map<std::string, std::size_t> columns_;
  std::size_t width_ = 0;
  std::vector<std::string> rows_;
  std::vector<std::size_t> lines_;
};

}  // namespace

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows) {
  out << kTrajectoryHeader << '\n';
  for (const TrajectoryRow& r : rows) {
    out << r.step << ',';
    put(out, r.time);
    out << ',';
    put(out, r.drone.x);
    out << ',';
    put(out, r.drone.y);
    out << ',';
    put(out, r.drone.z);
    out << ',';
    put(out, r.vel_forward);
    out << ',';
    put(out, r.vel_right);
    out << ',' << r.fsm_state << ',' << (r.detected ? to_string(*r.detected) : "none") << ',';
    if (!std::isnan(r.error_px)) put(out, r.error_px);
    out << '\n';
  }
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
  const CsvTable table(in, kTrajectoryHeader);
  const auto c_step = table.col("step");
  const auto c_time = table.col("time_s");
  const auto c_x = table.col("drone_x");
  const auto c_y = table.col("drone_y");
  const auto c_z = table.col("drone_z");
  const auto c_vf = table.col("vel_fwd");
  const auto c_vr = table.col("vel_right");
  const auto c_fsm = table.col("fsm_state");
  const auto c_det = table.col("detected_color");
  const auto c_err = table.col("err_px");

  std::vector<TrajectoryRow> rows;
  rows.reserve(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto f = table.fields(r);
    const std::size_t ln = table.line(r);
    TrajectoryRow row;
    row.step = parse_number<std::int64_t>(f[c_step], "step", ln);
    row.time = parse_number<double>(f[c_time], "time_s", ln);
    row.drone.x = parse_number<double>(f[c_x], "drone_x", ln);
    row.drone.y = parse_number<double>(f[c_y], "drone_y", ln);
    row.drone.z = parse_number<double>(f[c_z], "drone_z", ln);
    row.vel_forward = parse_number<double>(f[c_vf], "vel_fwd", ln);
    row.vel_right = parse_number<double>(f[c_vr], "vel_right", ln);
    row.fsm_state = std::string(f[c_fsm]);
    if (!FsmState::parse(row.fsm_state)) {
      throw MalformedLog("line " + std::to_string(ln) + ": unknown fsm_state '" + row.fsm_state +
                         "'");
    }
    if (f[c_det] != "none") {
      row.detected = parse_color(f[c_det]);
      if (!row.detected) {
        throw MalformedLog("line " + std::to_string(ln) + ": unknown color '" +
                           std::string(f[c_det]) + "'");
      }
    }
    row.error_px = f[c_err].empty() ? std::nan("") : parse_number<double>(f[c_err], "err_px", ln);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_results_csv(std::ostream& out, std::span<const TrialResult> trials) {
  out << kResultsHeader << '\n';
  for (const TrialResult& t : trials) {
    const MissionResult& r = t.result;
    out << t.trial << ',' << t.seed << ',';
    if (r.outcome == Outcome::Success) {
      out << "success";
    } else {
      out << "failed:" << (r.failure ? to_string(*r.failure) : "incomplete");
    }
    out << ',';
    put(out, r.elapsed);
    out << ',' << r.ticks << ',';
    put(out, r.final_pose.x);
    out << ',';
    put(out, r.final_pose.y);
    out << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  const CsvTable table(in, kResultsHeader);
  std::vector<ResultRow> rows;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto f = table.fields(r);
    const std::size_t ln = table.line(r);
    ResultRow row;
    row.trial = parse_number<int>(f[table.col("trial")], "trial", ln);
    row.seed = parse_number<std::uint64_t>(f[table.col("seed")], "seed", ln);
    row.outcome = std::string(f[table.col("outcome")]);
    row.elapsed = parse_number<double>(f[table.col("elapsed_s")], "elapsed_s", ln);
    row.ticks = parse_number<std::int64_t>(f[table.col("ticks")], "ticks", ln);
    row.final_x = parse_number<double>(f[table.col("final_x")], "final_x", ln);
    row.final_y = parse_number<double>(f[table.col("final_y")], "final_y", ln);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary(std::ostream& out, const CampaignStats& stats) {
  out << "trials: " << stats.trials.size() << '\n';
  out << "success_count: " << stats.success_count << '\n';
  out << "mean_s: ";
  if (stats.mean) {
    put(out, *stats.mean);
  } else {
    out << "n/a";
  }
  out << "\nstd_dev_s: ";
  if (stats.std_dev) {
    put(out, *stats.std_dev);
  } else {
    out << "n/a";
  }
  out << '\n';
}

void write_campaign_outputs(const std::filesystem::path& dir, const CampaignStats& stats) {
  std::filesystem::create_directories(dir);
  const auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot open " + p.string() + " for writing");
    return f;
  };
  {
    auto f = open(dir / "results.csv");
    write_results_csv(f, stats.trials);
  }
  for (const TrialResult& t : stats.trials) {
    auto f = open(dir / ("trajectory_" + std::to_string(t.trial) + ".csv"));
    write_trajectory_csv(f, t.result.trajectory);
  }
  auto f = open(dir / "summary.txt");
  write_summary(f, stats);
}

}  // namespace mtnav
