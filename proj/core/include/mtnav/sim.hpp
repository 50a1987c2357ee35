#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mtnav/control.hpp"
#include "mtnav/geometry.hpp"
#include "mtnav/perception.hpp"
#include "mtnav/rng.hpp"

namespace mtnav {

/// Stochastic drone drift. Zero values give exact kinematics.
struct NoiseModel {
  double drift_std = 0.01;           // m/s, i.i.d. per axis per step
  double takeoff_jitter_std = 0.05;  // m, per axis, applied once at liftoff

  static NoiseModel none() { return {0.0, 0.0}; }
  void validate() const;
};

/// Raster renders the camera image and thresholds it. Ideal reports the exact
/// projected center of in-frame markers and skips rasterization.
enum class PerceptionMode { Raster, Ideal };

struct SimConfig {
  double dt = 0.1;  // s
  FrameSpec frame;
  ControllerGains gains;
  NoiseModel noise;
  double altitude = 1.0;  // m, hold altitude
  int min_blob_size = kDefaultMinBlobSize;
  PerceptionMode perception = PerceptionMode::Raster;

  /// Per-step contraction of the pixel error under the P law: k*f/altitude*dt.
  double loop_gain() const { return dt * gains.k * frame.focal_length / altitude; }

  /// Rejects non-positive dt/altitude, invalid frame/gains/noise, and any
  /// configuration whose discrete loop gain is >= 1.
  void validate() const;
};

/// Scripted ground-robot route. The carrier drives toward each waypoint in turn
/// at `speed` and stops at the last one.
struct CarrierScript {
  std::vector<GroundPoint> waypoints;
  double speed = 0.5;  // m/s
  std::size_t next = 0;

  bool idle() const { return next >= waypoints.size(); }
};

struct WorldState {
  Pose drone;
  Pose carrier;
  CarrierScript carrier_path;
  double carrier_marker_radius = 0.15;  // m
  std::vector<Marker> markers;
  bool drone_on_carrier = false;
  std::int64_t step = 0;
  double time = 0.0;  // always step * dt
  Rng rng;
};

/// Everything needed to build the initial world for a trial.
struct WorldSetup {
  GroundPoint drone_start;
  double drone_yaw = 0.0;
  bool start_airborne = true;  // false: drone sits on the carrier
  Pose carrier_start;
  std::vector<GroundPoint> carrier_waypoints;
  double carrier_speed = 0.5;
  double carrier_marker_radius = 0.15;
  std::vector<Marker> markers;
};

/// Seeds the world. Airborne starts are placed at cfg.altitude with takeoff
/// jitter already applied; grounded starts ride on the carrier.
WorldState make_world(const WorldSetup& setup, const SimConfig& cfg, std::uint64_t seed);

/// The carrier's landing marker (blue disc at the carrier pose).
Marker carrier_marker(const WorldState& world);

/// World markers plus the carrier marker.
std::vector<Marker> scene_markers(const WorldState& world);

/// Advances the world by one dt. Airborne drones integrate the body-frame
/// command plus drift; grounded drones ignore planar commands. Altitude
/// follows vel_up and is clamped at the ground. Liftoff applies takeoff jitter.
WorldState step(WorldState world, const VelocityCommand& cmd, const SimConfig& cfg);

/// Camera frame of the current scene. Throws NotBelow when grounded.
Frame capture(const WorldState& world, const SimConfig& cfg);

/// Detection of `color` under the configured perception mode.
std::optional<Detection> observe(const WorldState& world, const SimConfig& cfg, Color color);

}  // namespace mtnav
