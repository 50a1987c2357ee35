#pragma once

#include <stdexcept>
#include <string>

namespace mtnav {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Projection or capture requested with the camera at or below the ground plane.
class NotBelow : public Error {
 public:
  NotBelow() : Error("camera altitude must be > 0 for projection") {}
};

/// Invalid configuration value (frame, gains, sim, mission or campaign).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class EmptyLog : public Error {
 public:
  EmptyLog() : Error("motion log has no entries to reverse") {}
};

/// tick() called on a mission that already reached Landed or Failed.
class AbsorbingState : public Error {
 public:
  explicit AbsorbingState(const std::string& state)
      : Error("mission is in absorbing state " + state) {}
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// CSV input is missing required columns or holds unparsable fields.
class MalformedLog : public Error {
 public:
  using Error::Error;
};

}  // namespace mtnav
