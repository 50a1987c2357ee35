#include "mtnav/geometry.hpp"

#include <cmath>
#include <string>

#include "mtnav/error.hpp"

namespace mtnav {

void FrameSpec::validate() const {
  if (width <= 0 || height <= 0) {
    throw ConfigError("frame dimensions must be positive, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
  if (!(focal_length > 0.0) || !std::isfinite(focal_length)) {
    throw ConfigError("focal_length must be a positive finite value");
  }
}

PixelPoint image_center(const FrameSpec& frame) {
  return {frame.width / 2.0, frame.height / 2.0};
}

BodyVector world_to_body(const Pose& drone, GroundPoint point) {
  const double dx = point.x - drone.x;
  const double dy = point.y - drone.y;
  const double c = std::cos(drone.yaw);
  const double s = std::sin(drone.yaw);
  // forward axis (c, s), right axis (s, -c)
  return {dx * c + dy * s, dx * s - dy * c};
}

GroundPoint body_to_world(double yaw, BodyVector v) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return {v.forward * c + v.right * s, v.forward * s - v.right * c};
}

PixelPoint project(const Pose& drone, GroundPoint point, const FrameSpec& frame) {
  if (!(drone.z > 0.0)) throw NotBelow();
  const BodyVector offset = world_to_body(drone, point);
  const double scale = frame.focal_length / drone.z;
  const PixelPoint c = image_center(frame);
  return {c.x + scale * offset.right, c.y - scale * offset.forward};
}

bool in_frame(PixelPoint p, const FrameSpec& frame) {
  return p.x >= 0.0 && p.x < frame.width && p.y >= 0.0 && p.y < frame.height;
}

}  // namespace mtnav
