#pragma once

#include <cmath>

#include "mtnav/geometry.hpp"

namespace mtnav {

/// target - current, in pixels.
struct PixelError {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }

  friend bool operator==(const PixelError&, const PixelError&) = default;
};

/// How image errors map onto body axes.
///
/// ImageUpIsForward: forward = -k * error_y, right = k * error_x. A target
/// above the image center (smaller y) drives the drone forward.
///
/// LiteralEquations: forward = k * error_y, right = k * error_x, i.e. the
/// proportional law applied verbatim with a top-left image origin. Kept for
/// comparison runs; it flies away from targets ahead of the drone.
enum class AxisConvention {
  ImageUpIsForward,
  LiteralEquations,
};

struct ControllerGains {
  double k = 0.0005;              // (m/s) per pixel
  double hover_threshold = 50.0;  // pixels, Euclidean
  double max_speed = 1.0;         // m/s
  AxisConvention axes = AxisConvention::ImageUpIsForward;

  void validate() const;
};

/// Body-frame velocity command. vel_up is only used for takeoff and landing.
struct VelocityCommand {
  double vel_forward = 0.0;
  double vel_right = 0.0;
  bool hovering = false;
  double vel_up = 0.0;

  static VelocityCommand hover() { return {0.0, 0.0, true, 0.0}; }

  double planar_speed() const { return std::hypot(vel_forward, vel_right); }

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

PixelError pixel_error(PixelPoint target, PixelPoint current);

/// Proportional pixel-error law with a hover dead zone and speed saturation.
VelocityCommand compute_command(PixelError err, const ControllerGains& gains);

}  // namespace mtnav
