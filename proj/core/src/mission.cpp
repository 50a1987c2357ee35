#include "mtnav/mission.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "mtnav/error.hpp"

namespace mtnav {

std::string_view to_string(MissionKind kind) {
  switch (kind) {
    case MissionKind::TrackVisible: return "track";
    case MissionKind::ForwardSearchHover: return "forward";
    case MissionKind::SearchReturnLand: return "return";
    case MissionKind::CarrierCoordination: return "coordination";
  }
  return "unknown";
}

std::optional<MissionKind> parse_mission_kind(std::string_view name) {
  for (MissionKind k : {MissionKind::TrackVisible, MissionKind::ForwardSearchHover,
                        MissionKind::SearchReturnLand, MissionKind::CarrierCoordination}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::Timeout: return "timeout";
    case FailureReason::TargetLost: return "target_lost";
    case FailureReason::SearchExhausted: return "search_exhausted";
    case FailureReason::HomeNotFound: return "home_not_found";
    case FailureReason::HomeLost: return "home_lost";
  }
  return "unknown";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::OnCarrier: return "OnCarrier";
    case Phase::TakingOff: return "TakingOff";
    case Phase::Searching: return "Searching";
    case Phase::Servoing: return "Servoing";
    case Phase::HoveringOnTarget: return "HoveringOnTarget";
    case Phase::Reversing: return "Reversing";
    case Phase::ServoingHome: return "ServoingHome";
    case Phase::Landing: return "Landing";
    case Phase::Landed: return "Landed";
    case Phase::Failed: return "Failed";
  }
  return "Unknown";
}

std::string FsmState::label() const {
  std::string out(to_string(phase));
  switch (phase) {
    case Phase::Searching:
    case Phase::Reversing:
      out += ':' + std::to_string(segment);
      break;
    case Phase::Servoing:
      out += ':';
      out += to_string(color);
      break;
    case Phase::Failed:
      out += ':';
      out += to_string(reason);
      break;
    default:
      break;
  }
  return out;
}

std::optional<FsmState> FsmState::parse(std::string_view label) {
  const auto colon = label.find(':');
  const std::string_view head = label.substr(0, colon);
  const std::string_view tail =
      colon == std::string_view::npos ? std::string_view{} : label.substr(colon + 1);

  for (int p = 0; p <= static_cast<int>(Phase::Failed); ++p) {
    const auto phase = static_cast<Phase>(p);
    if (to_string(phase) != head) continue;
    switch (phase) {
      case Phase::Searching:
      case Phase::Reversing: {
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), index);
        if (tail.empty() || ec != std::errc{} || ptr != tail.data() + tail.size()) {
          return std::nullopt;
        }
        return phase == Phase::Searching ? searching(index) : reversing(index);
      }
      case Phase::Servoing: {
        const auto c = parse_color(tail);
        if (!c) return std::nullopt;
        return servoing(*c);
      }
      case Phase::Failed: {
        for (FailureReason r : {FailureReason::Timeout, FailureReason::TargetLost,
                                FailureReason::SearchExhausted, FailureReason::HomeNotFound,
                                FailureReason::HomeLost}) {
          if (to_string(r) == tail) return failed(r);
        }
        return std::nullopt;
      }
      default:
        if (colon != std::string_view::npos) return std::nullopt;
        return of(phase);
    }
  }
  return std::nullopt;
}

bool is_legal_transition(const FsmState& from, const FsmState& to) {
  if (from == to) return true;
  if (from.absorbing()) return false;
  if (to.phase == Phase::Failed) return true;

  switch (from.phase) {
    case Phase::OnCarrier:
      return to.phase == Phase::TakingOff;
    case Phase::TakingOff:
      return to == FsmState::searching(0);
    case Phase::Searching:
      return to == FsmState::searching(from.segment + 1) || to.phase == Phase::Servoing;
    case Phase::Servoing:
      return to.phase == Phase::HoveringOnTarget || to.phase == Phase::Searching;
    case Phase::HoveringOnTarget:
      return to == FsmState::reversing(0);
    case Phase::Reversing:
      return to == FsmState::reversing(from.segment + 1) || to.phase == Phase::ServoingHome;
    case Phase::ServoingHome:
      return to.phase == Phase::Landing;
    case Phase::Landing:
      return to.phase == Phase::Landed;
    case Phase::Landed:
    case Phase::Failed:
      return false;
  }
  return false;
}

void MissionSpec::validate() const {
  if (!(timeout > 0.0) || !std::isfinite(timeout)) throw ConfigError("timeout must be > 0");
  if (returns_home() && !home_color) {
    throw ConfigError(std::string("home_color is required for ") + std::string(to_string(kind)));
  }
  if (kind != MissionKind::TrackVisible && trajectory.empty()) {
    throw ConfigError("search missions need a non-empty imagined trajectory");
  }
  trajectory.validate();
  if (!(params.hover_dwell >= 0.0)) throw ConfigError("hover_dwell must be >= 0");
  if (!(params.land_threshold >= 0.0)) throw ConfigError("land_threshold must be >= 0");
  if (params.land_dwell < 1) throw ConfigError("land_dwell must be >= 1");
  if (!(params.descent_rate > 0.0)) throw ConfigError("descent_rate must be > 0");
  if (!(params.climb_rate > 0.0)) throw ConfigError("climb_rate must be > 0");
  if (params.lost_patience < 0) throw ConfigError("lost_patience must be >= 0");
}

ImaginedTrajectory forward_search(const FrameSpec& frame, double max_distance) {
  return {{{forward_target(frame), Distance{max_distance}}}};
}

MissionState start(const MissionSpec& spec) {
  MissionState s;
  switch (spec.kind) {
    case MissionKind::CarrierCoordination:
      s.fsm = FsmState::of(Phase::OnCarrier);
      break;
    case MissionKind::TrackVisible:
      s.fsm = FsmState::servoing(spec.search_color);
      break;
    default:
      s.fsm = FsmState::searching(0);
      break;
  }
  return s;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAltitudeEps = 1e-9;

class Ticker {
 public:
  Ticker(MissionState state, const MissionSpec& spec, const WorldState& world,
         const SimConfig& cfg)
      : spec_(spec), world_(world), cfg_(cfg) {
    r_.state = std::move(state);
    r_.command = VelocityCommand::hover();
    r_.error_px = kNaN;
    home_gains_ = cfg.gains;
    home_gains_.hover_threshold = std::min(cfg.gains.hover_threshold, spec.params.land_threshold);
  }

  TickResult run() && {
    MissionState& s = r_.state;
    if (s.elapsed >= spec_.timeout) {
      enter(FsmState::failed(FailureReason::Timeout));
    } else {
      switch (s.fsm.phase) {
        case Phase::OnCarrier: on_carrier(); break;
        case Phase::TakingOff: taking_off(); break;
        case Phase::Searching: searching(); break;
        case Phase::Servoing: servoing(); break;
        case Phase::HoveringOnTarget: hovering(); break;
        case Phase::Reversing: reversing(); break;
        case Phase::ServoingHome: servoing_home(); break;
        case Phase::Landing: landing(); break;
        case Phase::Landed:
        case Phase::Failed: break;
      }
    }
    ++s.ticks;
    s.elapsed = static_cast<double>(s.ticks) * cfg_.dt;
    return std::move(r_);
  }

 private:
  MissionState& st() { return r_.state; }

  void enter(FsmState next) {
    st().fsm = next;
    if (next.absorbing()) r_.command = VelocityCommand::hover();
  }

  std::optional<Detection> look(Color c) {
    auto d = observe(world_, cfg_, c);
    if (d) r_.detected = c;
    return d;
  }

  VelocityCommand aim(PixelPoint target, const ControllerGains& gains) {
    const PixelError e = pixel_error(target, image_center(cfg_.frame));
    r_.error_px = e.norm();
    r_.command = compute_command(e, gains);
    return r_.command;
  }

  // Outbound motion is logged for later reversal.
  void log_outbound(PixelPoint target, bool extend) {
    if (!spec_.returns_home() || r_.command.hovering) return;
    st().log.record(st().elapsed, r_.command, target, cfg_.dt, extend);
  }

  void reset_segment() {
    st().segment_ticks = 0;
    st().segment_distance = 0.0;
  }

  bool segment_done(const ImaginedSegment& seg) {
    const MissionState& s = r_.state;
    if (const auto* m = std::get_if<MarkerDetected>(&seg.terminate_on)) {
      return m->color != spec_.search_color && look(m->color).has_value();
    }
    if (const auto* d = std::get_if<Duration>(&seg.terminate_on)) {
      return s.segment_ticks >= duration_ticks(d->seconds, cfg_.dt);
    }
    const auto& dist = std::get<Distance>(seg.terminate_on);
    return s.segment_distance >= dist.meters;
  }

  void fly_segment(const ImaginedSegment& seg) {
    aim(seg.target, cfg_.gains);
    ++st().segment_ticks;
    st().segment_distance += r_.command.planar_speed() * cfg_.dt;
  }

  void on_carrier() {
    if (!world_.carrier_path.idle()) return;
    enter(FsmState::of(Phase::TakingOff));
    r_.command.vel_up = spec_.params.climb_rate;
  }

  void taking_off() {
    const double z = world_.drone.z;
    if (z >= cfg_.altitude - kAltitudeEps) {
      reset_segment();
      enter(FsmState::searching(0));
      return;
    }
    r_.command.vel_up = std::min(spec_.params.climb_rate, (cfg_.altitude - z) / cfg_.dt);
  }

  void searching() {
    MissionState& s = st();
    const auto& segments = spec_.trajectory.segments;
    if (auto det = look(spec_.search_color)) {
      s.resume_segment = s.fsm.segment;
      s.lost_ticks = 0;
      enter(FsmState::servoing(spec_.search_color));
      aim(det->center, cfg_.gains);
      log_outbound(det->center, false);
      return;
    }
    std::size_t index = s.fsm.segment;
    if (index >= segments.size()) {
      enter(FsmState::failed(FailureReason::SearchExhausted));
      return;
    }
    if (segment_done(segments[index])) {
      ++index;
      reset_segment();
      if (index >= segments.size()) {
        enter(FsmState::failed(FailureReason::SearchExhausted));
        return;
      }
      enter(FsmState::searching(index));
    }
    const bool extend = s.segment_ticks > 0;
    fly_segment(segments[index]);
    log_outbound(segments[index].target, extend);
  }

  void servoing() {
    MissionState& s = st();
    if (auto det = look(s.fsm.color)) {
      s.lost_ticks = 0;
      aim(det->center, cfg_.gains);
      if (r_.command.hovering) {
        s.dwell_ticks = 0;
        enter(FsmState::of(Phase::HoveringOnTarget));
      } else {
        log_outbound(det->center, false);
      }
      return;
    }
    if (++s.lost_ticks > spec_.params.lost_patience) {
      s.lost_ticks = 0;
      if (spec_.trajectory.empty()) {
        enter(FsmState::failed(FailureReason::TargetLost));
      } else {
        enter(FsmState::searching(s.resume_segment));
      }
    }
  }

  void hovering() {
    MissionState& s = st();
    if (auto det = look(spec_.search_color)) {
      s.lost_ticks = 0;
      aim(det->center, cfg_.gains);
      log_outbound(det->center, false);
    } else if (++s.lost_ticks > spec_.params.lost_patience) {
      enter(FsmState::failed(FailureReason::TargetLost));
      return;
    }
    ++s.dwell_ticks;
    if (s.dwell_ticks < duration_ticks(spec_.params.hover_dwell, cfg_.dt)) return;
    if (!spec_.returns_home()) {
      s.complete = true;
      return;
    }
    s.homing = s.log.empty() ? ImaginedTrajectory{} : reverse(s.log, cfg_.frame);
    reset_segment();
    s.lost_ticks = 0;
    enter(FsmState::reversing(0));
  }

  void reversing() {
    MissionState& s = st();
    if (auto det = look(*spec_.home_color)) {
      s.lost_ticks = 0;
      s.centered_ticks = 0;
      enter(FsmState::of(Phase::ServoingHome));
      aim(det->center, home_gains_);
      return;
    }
    std::size_t index = s.fsm.segment;
    const auto& segments = s.homing.segments;
    if (index < segments.size() && segment_done(segments[index])) {
      ++index;
      reset_segment();
      if (index < segments.size()) enter(FsmState::reversing(index));
    }
    if (index >= segments.size()) {
      enter(FsmState::failed(FailureReason::HomeNotFound));
      return;
    }
    fly_segment(segments[index]);
  }

  void servoing_home() {
    MissionState& s = st();
    if (auto det = look(*spec_.home_color)) {
      s.lost_ticks = 0;
      aim(det->center, home_gains_);
      s.centered_ticks = r_.error_px <= spec_.params.land_threshold ? s.centered_ticks + 1 : 0;
      if (s.centered_ticks >= spec_.params.land_dwell) enter(FsmState::of(Phase::Landing));
      return;
    }
    s.centered_ticks = 0;
    if (++s.lost_ticks > spec_.params.lost_patience) {
      enter(FsmState::failed(FailureReason::HomeLost));
    }
  }

  void landing() {
    if (!(world_.drone.z > kAltitudeEps)) {
      enter(FsmState::of(Phase::Landed));
      return;
    }
    if (auto det = look(*spec_.home_color)) aim(det->center, home_gains_);
    r_.command.vel_up = -spec_.params.descent_rate;
  }

  const MissionSpec& spec_;
  const WorldState& world_;
  const SimConfig& cfg_;
  ControllerGains home_gains_;
  TickResult r_;
};

}  // namespace

TickResult tick(MissionState state, const MissionSpec& spec, const WorldState& world,
                const SimConfig& cfg) {
  if (state.fsm.absorbing()) throw AbsorbingState(state.fsm.label());
  return Ticker(std::move(state), spec, world, cfg).run();
}

MissionResult run(const MissionSpec& spec, WorldState world, const SimConfig& cfg,
                  const RunOptions& options) {
  spec.validate();
  cfg.validate();
  if (options.frame_dir) std::filesystem::create_directories(*options.frame_dir);

  MissionResult result;
  MissionState state = start(spec);
  while (!state.fsm.absorbing() && !state.complete) {
    if (options.frame_dir && world.drone.z > 0.0) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%06lld.ppm", static_cast<long long>(world.step));
      write_ppm(capture(world, cfg), *options.frame_dir / name);
    }
    TickResult t = tick(std::move(state), spec, world, cfg);
    result.trajectory.push_back({world.step, world.time, world.drone, t.command.vel_forward,
                                 t.command.vel_right, t.state.fsm.label(), t.detected,
                                 t.error_px});
    state = std::move(t.state);
    if (!state.fsm.absorbing() && !state.complete) {
      world = step(std::move(world), t.command, cfg);
    }
  }

  result.final_state = state.fsm;
  if (state.fsm.phase == Phase::Failed) result.failure = state.fsm.reason;
  result.outcome = (spec.returns_home() ? state.fsm.phase == Phase::Landed : state.complete)
                       ? Outcome::Success
                       : Outcome::Failed;
  result.elapsed = state.elapsed;
  result.ticks = state.ticks;
  result.final_pose = world.drone;
  return result;
}

FollowResult follow(const ImaginedTrajectory& trajectory, WorldState world, const SimConfig& cfg) {
  cfg.validate();
  trajectory.validate();
  FollowResult out;
  const PixelPoint center = image_center(cfg.frame);
  double timestamp = 0.0;
  long long ticks = 0;
  for (const ImaginedSegment& seg : trajectory.segments) {
    const auto* d = std::get_if<Duration>(&seg.terminate_on);
    if (!d) throw PreconditionError("follow: only Duration-terminated segments are supported");
    const VelocityCommand cmd = compute_command(pixel_error(seg.target, center), cfg.gains);
    const long long n = duration_ticks(d->seconds, cfg.dt);
    for (long long i = 0; i < n; ++i) {
      out.log.record(timestamp, cmd, seg.target, cfg.dt, i > 0);
      world = step(std::move(world), cmd, cfg);
      timestamp = static_cast<double>(++ticks) * cfg.dt;
    }
  }
  out.world = std::move(world);
  return out;
}

}  // namespace mtnav
