#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "mtnav/control.hpp"
#include "mtnav/geometry.hpp"
#include "mtnav/perception.hpp"
#include "mtnav/rng.hpp"

namespace mtnav {

/// Distance of the standard imagined markers from the image center, pixels.
inline constexpr double kImaginedOffset = 100.0;

struct MarkerDetected {
  Color color = Color::Pink;
  friend bool operator==(const MarkerDetected&, const MarkerDetected&) = default;
};

struct Duration {
  double seconds = 0.0;
  friend bool operator==(const Duration&, const Duration&) = default;
};

/// Dead-reckoned from commanded speed, not ground truth.
struct Distance {
  double meters = 0.0;
  friend bool operator==(const Distance&, const Distance&) = default;
};

using Termination = std::variant<MarkerDetected, Duration, Distance>;

/// An imagined target held in the drone's image frame until `terminate_on`
/// fires. The target is never clamped to the frame.
struct ImaginedSegment {
  PixelPoint target;
  Termination terminate_on = Duration{1.0};

  void validate() const;
  friend bool operator==(const ImaginedSegment&, const ImaginedSegment&) = default;
};

struct ImaginedTrajectory {
  std::vector<ImaginedSegment> segments;

  bool empty() const { return segments.empty(); }
  std::size_t size() const { return segments.size(); }
  void validate() const;
};

enum class Direction { Forward, Right, Backward, Left };

/// Imagined marker `offset` pixels from center in the given image direction.
PixelPoint direction_target(const FrameSpec& frame, Direction dir,
                            double offset = kImaginedOffset);

/// (width/2, height/2 - offset); (320, 80) on the default frame.
PixelPoint forward_target(const FrameSpec& frame, double offset = kImaginedOffset);

/// Forward, right, backward, left sides of side_duration seconds each.
/// Throws PreconditionError when side_duration <= 0.
ImaginedTrajectory square_trajectory(const FrameSpec& frame, double side_duration,
                                     double offset = kImaginedOffset);

/// Random-imagination mode: each segment heads in a uniformly drawn direction
/// at `offset` pixels from center for `segment_duration` seconds.
ImaginedTrajectory random_trajectory(const FrameSpec& frame, std::size_t segments,
                                     double segment_duration, Rng& rng,
                                     double offset = kImaginedOffset);

/// Point reflection of a target through the image center.
PixelPoint reflect_about_center(PixelPoint target, const FrameSpec& frame);

struct MotionLogEntry {
  double timestamp = 0.0;  // seconds, start of the entry
  VelocityCommand command;
  double duration = 0.0;  // seconds
  PixelPoint target;      // image target that produced the command
  long long ticks = 0;
};

/// Commands actually flown, in order. Written by one mission instance only.
class MotionLog {
 public:
  /// Records one control tick. When `extend` is set and the previous entry has
  /// the same command and target, that entry grows by one tick instead.
  /// Throws PreconditionError if timestamps would not strictly increase.
  void record(double timestamp, const VelocityCommand& cmd, PixelPoint target, double dt,
              bool extend);

  const std::vector<MotionLogEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<MotionLogEntry> entries_;
};

/// Homing trajectory: entries in reverse order, each target reflected about
/// the image center, each with a Duration terminator equal to the entry's.
/// Throws EmptyLog when the log is empty.
ImaginedTrajectory reverse(const MotionLog& log, const FrameSpec& frame);

/// Number of control ticks a duration spans at the given step.
long long duration_ticks(double seconds, double dt);

}  // namespace mtnav
