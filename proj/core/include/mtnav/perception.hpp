#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mtnav/geometry.hpp"

namespace mtnav {

/// Closed registry of marker colors. Zero is reserved for background pixels.
enum class Color : std::uint8_t {
  Pink = 1,
  Blue = 2,
  Red = 3,
  Green = 4,
  Yellow = 5,
};

inline constexpr std::array kAllColors = {Color::Pink, Color::Blue, Color::Red,
                                          Color::Green, Color::Yellow};

std::string_view to_string(Color c);
/// Case-sensitive lowercase name ("pink", "blue", ...).
std::optional<Color> parse_color(std::string_view name);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

/// Colors written by write_ppm. Background is dark grey.
Rgb palette(std::optional<Color> label);

/// A colored disc lying on the ground plane.
struct Marker {
  GroundPoint position;
  double radius = 0.1;  // meters
  Color color = Color::Pink;

  void validate() const;
};

/// One bottom-camera image with every pixel classified as a marker color or
/// background. Immutable once rendered.
class Frame {
 public:
  explicit Frame(const FrameSpec& spec);

  const FrameSpec& spec() const { return spec_; }
  int width() const { return spec_.width; }
  int height() const { return spec_.height; }

  std::optional<Color> at(int x, int y) const;
  void set(int x, int y, std::optional<Color> label);

  /// Row-major labels, 0 for background.
  std::span<const std::uint8_t> labels() const { return labels_; }

 private:
  FrameSpec spec_;
  std::vector<std::uint8_t> labels_;
};

struct Detection {
  Color color = Color::Pink;
  PixelPoint center;
  std::int64_t pixel_count = 0;
};

inline constexpr int kDefaultMinBlobSize = 10;

/// Pixel radius of a ground disc seen from the given altitude.
double projected_radius(double radius, double altitude, const FrameSpec& frame);

/// Synthesizes the nadir camera view. A pixel (its center at i+0.5, j+0.5)
/// takes the color of the nearest marker whose projected disc covers it.
/// Throws NotBelow when drone.z <= 0.
Frame render(const Pose& drone, std::span<const Marker> markers, const FrameSpec& frame);

/// Centroid of all pixels labeled `color` (pixel centers), or nullopt when
/// fewer than `min_blob_size` pixels match.
std::optional<Detection> detect(const Frame& frame, Color color,
                                int min_blob_size = kDefaultMinBlobSize);

/// Writes a binary P6 pixel map using palette().
void write_ppm(const Frame& frame, const std::filesystem::path& path);

}  // namespace mtnav
