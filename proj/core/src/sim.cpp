#include "mtnav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mtnav/error.hpp"

namespace mtnav {

double Rng::normal() {
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void NoiseModel::validate() const {
  if (!(drift_std >= 0.0) || !std::isfinite(drift_std)) throw ConfigError("drift_std must be >= 0");
  if (!(takeoff_jitter_std >= 0.0) || !std::isfinite(takeoff_jitter_std)) {
    throw ConfigError("takeoff_jitter_std must be >= 0");
  }
}

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be > 0");
  if (!(altitude > 0.0) || !std::isfinite(altitude)) throw ConfigError("altitude must be > 0");
  if (min_blob_size < 1) throw ConfigError("min_blob_size must be >= 1");
  frame.validate();
  gains.validate();
  noise.validate();
  if (!(loop_gain() < 1.0)) {
    std::ostringstream msg;
    msg << "unstable loop: dt*k*focal/altitude = " << loop_gain() << " must be < 1";
    throw ConfigError(msg.str());
  }
}

WorldState make_world(const WorldSetup& setup, const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  WorldState w;
  w.rng = Rng(seed);
  w.carrier = setup.carrier_start;
  w.carrier.z = 0.0;
  w.carrier_path.waypoints = setup.carrier_waypoints;
  w.carrier_path.speed = setup.carrier_speed;
  w.carrier_marker_radius = setup.carrier_marker_radius;
  w.markers = setup.markers;
  for (const Marker& m : w.markers) m.validate();

  if (setup.start_airborne) {
    w.drone = {setup.drone_start.x, setup.drone_start.y, cfg.altitude, setup.drone_yaw};
    if (cfg.noise.takeoff_jitter_std > 0.0) {
      w.drone.x += w.rng.normal(0.0, cfg.noise.takeoff_jitter_std);
      w.drone.y += w.rng.normal(0.0, cfg.noise.takeoff_jitter_std);
    }
  } else {
    w.drone = {w.carrier.x, w.carrier.y, 0.0, setup.drone_yaw};
    w.drone_on_carrier = true;
  }
  return w;
}

Marker carrier_marker(const WorldState& world) {
  return {{world.carrier.x, world.carrier.y}, world.carrier_marker_radius, Color::Blue};
}

std::vector<Marker> scene_markers(const WorldState& world) {
  std::vector<Marker> all = world.markers;
  all.push_back(carrier_marker(world));
  return all;
}

namespace {

void advance_carrier(WorldState& w, double dt) {
  CarrierScript& path = w.carrier_path;
  double budget = path.speed * dt;
  while (!path.idle() && budget > 0.0) {
    const GroundPoint target = path.waypoints[path.next];
    const double dx = target.x - w.carrier.x;
    const double dy = target.y - w.carrier.y;
    const double remaining = std::hypot(dx, dy);
    if (remaining <= budget) {
      w.carrier.x = target.x;
      w.carrier.y = target.y;
      budget -= remaining;
      ++path.next;
    } else {
      w.carrier.x += dx / remaining * budget;
      w.carrier.y += dy / remaining * budget;
      w.carrier.yaw = std::atan2(dy, dx);
      budget = 0.0;
    }
  }
}

}  // namespace

WorldState step(WorldState world, const VelocityCommand& cmd, const SimConfig& cfg) {
  const double dt = cfg.dt;
  advance_carrier(world, dt);

  Pose& d = world.drone;
  const bool was_airborne = d.z > 0.0;
  const double new_z = std::max(0.0, d.z + cmd.vel_up * dt);

  if (was_airborne) {
    const GroundPoint v = body_to_world(d.yaw, {cmd.vel_forward, cmd.vel_right});
    double vx = v.x;
    double vy = v.y;
    if (cfg.noise.drift_std > 0.0) {
      vx += world.rng.normal(0.0, cfg.noise.drift_std);
      vy += world.rng.normal(0.0, cfg.noise.drift_std);
    }
    d.x += vx * dt;
    d.y += vy * dt;
  } else if (world.drone_on_carrier) {
    d.x = world.carrier.x;
    d.y = world.carrier.y;
  }

  if (!was_airborne && new_z > 0.0) {
    world.drone_on_carrier = false;
    if (cfg.noise.takeoff_jitter_std > 0.0) {
      d.x += world.rng.normal(0.0, cfg.noise.takeoff_jitter_std);
      d.y += world.rng.normal(0.0, cfg.noise.takeoff_jitter_std);
    }
  }
  d.z = new_z;

  ++world.step;
  world.time = static_cast<double>(world.step) * dt;
  return world;
}

Frame capture(const WorldState& world, const SimConfig& cfg) {
  const std::vector<Marker> markers = scene_markers(world);
  return render(world.drone, markers, cfg.frame);
}

std::optional<Detection> observe(const WorldState& world, const SimConfig& cfg, Color color) {
  if (!(world.drone.z > 0.0)) throw NotBelow();
  if (cfg.perception == PerceptionMode::Raster) {
    return detect(capture(world, cfg), color, cfg.min_blob_size);
  }
  double sx = 0.0;
  double sy = 0.0;
  int n = 0;
  std::int64_t area = 0;
  for (const Marker& m : scene_markers(world)) {
    if (m.color != color) continue;
    const PixelPoint p = project(world.drone, m.position, cfg.frame);
    if (!in_frame(p, cfg.frame)) continue;
    sx += p.x;
    sy += p.y;
    ++n;
    const double r = projected_radius(m.radius, world.drone.z, cfg.frame);
    area += std::llround(std::numbers::pi * r * r);
  }
  if (n == 0) return std::nullopt;
  return Detection{color, {sx / n, sy / n}, std::max<std::int64_t>(area, cfg.min_blob_size)};
}

}  // namespace mtnav
