#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtnav/control.hpp"
#include "mtnav/imagination.hpp"
#include "mtnav/perception.hpp"
#include "mtnav/sim.hpp"

namespace mtnav {

enum class MissionKind {
  TrackVisible,         // servo onto a marker already in view and hover
  ForwardSearchHover,   // search along the imagined trajectory, then hover
  SearchReturnLand,     // search, hover, reverse home, land on the home marker
  CarrierCoordination,  // ride the carrier, take off, then SearchReturnLand
};

std::string_view to_string(MissionKind kind);
std::optional<MissionKind> parse_mission_kind(std::string_view name);

enum class FailureReason {
  Timeout,
  TargetLost,
  SearchExhausted,
  HomeNotFound,
  HomeLost,
};

std::string_view to_string(FailureReason reason);

enum class Phase {
  OnCarrier,
  TakingOff,
  Searching,
  Servoing,
  HoveringOnTarget,
  Reversing,
  ServoingHome,
  Landing,
  Landed,
  Failed,
};

std::string_view to_string(Phase phase);

/// FSM state. `segment` is meaningful for Searching and Reversing, `color`
/// for Servoing, `reason` for Failed.
struct FsmState {
  Phase phase = Phase::OnCarrier;
  std::size_t segment = 0;
  Color color = Color::Pink;
  FailureReason reason = FailureReason::Timeout;

  static FsmState of(Phase p) { return {p}; }
  static FsmState searching(std::size_t i) { return {Phase::Searching, i}; }
  static FsmState reversing(std::size_t i) { return {Phase::Reversing, i}; }
  static FsmState servoing(Color c) { return {Phase::Servoing, 0, c}; }
  static FsmState failed(FailureReason r) { return {Phase::Failed, 0, Color::Pink, r}; }

  bool absorbing() const { return phase == Phase::Landed || phase == Phase::Failed; }

  /// "Searching:0", "Servoing:pink", "Failed:timeout", "Landed", ...
  std::string label() const;
  static std::optional<FsmState> parse(std::string_view label);

  friend bool operator==(const FsmState&, const FsmState&) = default;
};

/// Documented edge set of the mission FSM (self-loops included).
bool is_legal_transition(const FsmState& from, const FsmState& to);

struct MissionParams {
  double hover_dwell = 1.0;       // s held in HoveringOnTarget
  double land_threshold = 20.0;   // px, centering tolerance over home
  int land_dwell = 5;             // consecutive centered ticks before Landing
  double descent_rate = 0.3;      // m/s
  double climb_rate = 0.5;        // m/s
  int lost_patience = 10;         // ticks without detection before fallback
};

struct MissionSpec {
  MissionKind kind = MissionKind::ForwardSearchHover;
  Color search_color = Color::Pink;
  std::optional<Color> home_color;
  ImaginedTrajectory trajectory;
  double timeout = 120.0;  // s of simulated time
  MissionParams params;

  bool returns_home() const {
    return kind == MissionKind::SearchReturnLand || kind == MissionKind::CarrierCoordination;
  }
  void validate() const;
};

/// Default forward search: one segment toward the forward imagined marker,
/// abandoned after `max_distance` meters of dead-reckoned travel.
ImaginedTrajectory forward_search(const FrameSpec& frame, double max_distance = 5.0);

struct MissionState {
  FsmState fsm;
  MotionLog log;
  ImaginedTrajectory homing;  // filled on entry to Reversing
  std::int64_t ticks = 0;
  double elapsed = 0.0;  // ticks * dt
  bool complete = false; // hover-only kinds: dwell satisfied

  // Per-state counters.
  long long segment_ticks = 0;
  double segment_distance = 0.0;
  int lost_ticks = 0;
  long long dwell_ticks = 0;
  int centered_ticks = 0;
  std::size_t resume_segment = 0;
};

/// Initial state: OnCarrier for CarrierCoordination, Servoing for
/// TrackVisible, Searching(0) otherwise.
MissionState start(const MissionSpec& spec);

struct TickResult {
  MissionState state;
  VelocityCommand command;
  std::optional<Color> detected;  // color seen this tick, if any
  double error_px = 0.0;          // norm of the active pixel error, NaN if none
};

/// One FSM evaluation against the current world: observe, pick a target,
/// compute a command, fire at most one transition. Throws AbsorbingState when
/// called on Landed or Failed.
TickResult tick(MissionState state, const MissionSpec& spec, const WorldState& world,
                const SimConfig& cfg);

/// One row of the per-step trajectory log.
struct TrajectoryRow {
  std::int64_t step = 0;
  double time = 0.0;
  Pose drone;
  double vel_forward = 0.0;
  double vel_right = 0.0;
  std::string fsm_state;
  std::optional<Color> detected;
  double error_px = 0.0;  // NaN when no target was active
};

enum class Outcome { Success, Failed };

struct MissionResult {
  Outcome outcome = Outcome::Failed;
  std::optional<FailureReason> failure;
  FsmState final_state;
  double elapsed = 0.0;
  std::int64_t ticks = 0;
  Pose final_pose;
  std::vector<TrajectoryRow> trajectory;
};

struct RunOptions {
  /// When set, every captured frame is written as frame_{step:06}.ppm here.
  std::optional<std::filesystem::path> frame_dir;
};

/// Ticks and steps until Landed, Failed or (hover-only kinds) completion.
MissionResult run(const MissionSpec& spec, WorldState world, const SimConfig& cfg,
                  const RunOptions& options = {});

/// Open-loop execution of Duration-terminated segments, logging each tick the
/// same way the mission does. Used for reversal checks and tooling.
struct FollowResult {
  WorldState world;
  MotionLog log;
};
FollowResult follow(const ImaginedTrajectory& trajectory, WorldState world, const SimConfig& cfg);

}  // namespace mtnav
