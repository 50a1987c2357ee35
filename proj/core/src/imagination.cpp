#include "mtnav/imagination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mtnav/error.hpp"

namespace mtnav {

void ImaginedSegment::validate() const {
  if (!std::isfinite(target.x) || !std::isfinite(target.y)) {
    throw ConfigError("imagined target must be finite");
  }
  if (const auto* d = std::get_if<Duration>(&terminate_on); d && !(d->seconds > 0.0)) {
    throw ConfigError("Duration terminator must be > 0 s");
  }
  if (const auto* d = std::get_if<Distance>(&terminate_on); d && !(d->meters > 0.0)) {
    throw ConfigError("Distance terminator must be > 0 m");
  }
}

void ImaginedTrajectory::validate() const {
  for (const auto& s : segments) s.validate();
}

PixelPoint direction_target(const FrameSpec& frame, Direction dir, double offset) {
  const PixelPoint c = image_center(frame);
  switch (dir) {
    case Direction::Forward: return {c.x, c.y - offset};
    case Direction::Right: return {c.x + offset, c.y};
    case Direction::Backward: return {c.x, c.y + offset};
    case Direction::Left: return {c.x - offset, c.y};
  }
  return c;
}

PixelPoint forward_target(const FrameSpec& frame, double offset) {
  return direction_target(frame, Direction::Forward, offset);
}

ImaginedTrajectory square_trajectory(const FrameSpec& frame, double side_duration,
                                     double offset) {
  if (!(side_duration > 0.0)) {
    throw PreconditionError("square_trajectory: side_duration must be > 0, got " +
                            std::to_string(side_duration));
  }
  ImaginedTrajectory t;
  for (Direction d : {Direction::Forward, Direction::Right, Direction::Backward, Direction::Left}) {
    t.segments.push_back({direction_target(frame, d, offset), Duration{side_duration}});
  }
  return t;
}

ImaginedTrajectory random_trajectory(const FrameSpec& frame, std::size_t segments,
                                     double segment_duration, Rng& rng, double offset) {
  if (!(segment_duration > 0.0)) {
    throw PreconditionError("random_trajectory: segment_duration must be > 0");
  }
  const PixelPoint c = image_center(frame);
  ImaginedTrajectory t;
  for (std::size_t i = 0; i < segments; ++i) {
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    t.segments.push_back(
        {{c.x + offset * std::cos(angle), c.y + offset * std::sin(angle)}, Duration{segment_duration}});
  }
  return t;
}

PixelPoint reflect_about_center(PixelPoint target, const FrameSpec& frame) {
  const PixelPoint c = image_center(frame);
  return {c.x - (target.x - c.x), c.y - (target.y - c.y)};
}

void MotionLog::record(double timestamp, const VelocityCommand& cmd, PixelPoint target, double dt,
                       bool extend) {
  if (!(dt > 0.0)) throw PreconditionError("MotionLog::record: dt must be > 0");
  if (!entries_.empty()) {
    MotionLogEntry& last = entries_.back();
    if (!(timestamp > last.timestamp)) {
      throw PreconditionError("MotionLog::record: timestamps must strictly increase");
    }
    if (extend && last.command == cmd && last.target == target) {
      ++last.ticks;
      last.duration = static_cast<double>(last.ticks) * dt;
      return;
    }
  }
  entries_.push_back({timestamp, cmd, dt, target, 1});
}

ImaginedTrajectory reverse(const MotionLog& log, const FrameSpec& frame) {
  if (log.empty()) throw EmptyLog();
  ImaginedTrajectory t;
  t.segments.reserve(log.size());
  for (auto it = log.entries().rbegin(); it != log.entries().rend(); ++it) {
    t.segments.push_back({reflect_about_center(it->target, frame), Duration{it->duration}});
  }
  return t;
}

long long duration_ticks(double seconds, double dt) {
  return std::max(1LL, std::llround(seconds / dt));
}

}  // namespace mtnav
