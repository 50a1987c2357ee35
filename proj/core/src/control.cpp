#include "mtnav/control.hpp"

#include <cmath>

#include "mtnav/error.hpp"

namespace mtnav {

void ControllerGains::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("gain k must be positive");
  if (!(hover_threshold >= 0.0) || !std::isfinite(hover_threshold)) {
    throw ConfigError("hover_threshold must be >= 0");
  }
  if (!(max_speed > 0.0) || !std::isfinite(max_speed)) {
    throw ConfigError("max_speed must be positive");
  }
}

PixelError pixel_error(PixelPoint target, PixelPoint current) {
  return {target.x - current.x, target.y - current.y};
}

VelocityCommand compute_command(PixelError err, const ControllerGains& gains) {
  if (err.norm() <= gains.hover_threshold) return VelocityCommand::hover();

  VelocityCommand cmd;
  cmd.vel_right = gains.k * err.x;
  cmd.vel_forward = gains.axes == AxisConvention::ImageUpIsForward ? -gains.k * err.y
                                                                   : gains.k * err.y;

  const double speed = cmd.planar_speed();
  if (speed > gains.max_speed) {
    double scale = gains.max_speed / speed;
    // Rounding can leave the scaled norm one ulp above the limit.
    while (std::hypot(cmd.vel_forward * scale, cmd.vel_right * scale) > gains.max_speed) {
      scale = std::nextafter(scale, 0.0);
    }
    cmd.vel_forward *= scale;
    cmd.vel_right *= scale;
  }
  return cmd;
}

}  // namespace mtnav
