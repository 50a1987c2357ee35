#pragma once

#include <cmath>

namespace mtnav {

/// A position in the bottom-camera image. Origin top-left, x right, y down.
/// Coordinates are real-valued and may lie outside the frame.
struct PixelPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

/// Bottom-camera intrinsics. The principal point is the image center.
struct FrameSpec {
  int width = 640;
  int height = 360;
  double focal_length = 320.0;  // pixels

  /// Throws ConfigError on non-positive dimensions or focal length.
  void validate() const;

  friend bool operator==(const FrameSpec&, const FrameSpec&) = default;
};

/// World-frame pose. x/y on the ground plane, z altitude above it, yaw
/// counter-clockwise from the world x axis.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double yaw = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct GroundPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const GroundPoint&, const GroundPoint&) = default;
};

/// Planar vector expressed in the drone body frame.
struct BodyVector {
  double forward = 0.0;
  double right = 0.0;
};

PixelPoint image_center(const FrameSpec& frame);

/// Offset of a ground point from the drone, expressed in the body frame.
BodyVector world_to_body(const Pose& drone, GroundPoint point);

/// World-frame displacement of a body-frame planar vector at the given yaw.
GroundPoint body_to_world(double yaw, BodyVector v);

/// Pinhole projection of a ground point into the nadir camera.
/// Body-forward maps to decreasing image y, body-right to increasing image x.
/// Throws NotBelow when drone.z <= 0. Out-of-frame results are returned as-is.
PixelPoint project(const Pose& drone, GroundPoint point, const FrameSpec& frame);

/// Half-open bounds test: 0 <= x < width and 0 <= y < height.
bool in_frame(PixelPoint p, const FrameSpec& frame);

inline double distance(GroundPoint a, GroundPoint b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace mtnav
