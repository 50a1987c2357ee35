#include "mtnav/perception.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "mtnav/error.hpp"

namespace mtnav {

std::string_view to_string(Color c) {
  switch (c) {
    case Color::Pink: return "pink";
    case Color::Blue: return "blue";
    case Color::Red: return "red";
    case Color::Green: return "green";
    case Color::Yellow: return "yellow";
  }
  return "unknown";
}

std::optional<Color> parse_color(std::string_view name) {
  for (Color c : kAllColors) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

Rgb palette(std::optional<Color> label) {
  if (!label) return {40, 40, 40};
  switch (*label) {
    case Color::Pink: return {255, 105, 180};
    case Color::Blue: return {30, 90, 255};
    case Color::Red: return {220, 20, 20};
    case Color::Green: return {20, 200, 60};
    case Color::Yellow: return {250, 220, 20};
  }
  return {255, 255, 255};
}

void Marker::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("marker radius must be positive");
  }
  if (!std::isfinite(position.x) || !std::isfinite(position.y)) {
    throw ConfigError("marker position must be finite");
  }
  if (!parse_color(to_string(color))) throw ConfigError("marker color outside registry");
}

Frame::Frame(const FrameSpec& spec) : spec_(spec) {
  spec_.validate();
  labels_.assign(static_cast<std::size_t>(spec_.width) * static_cast<std::size_t>(spec_.height),
                 0);
}

std::optional<Color> Frame::at(int x, int y) const {
  const auto v = labels_[static_cast<std::size_t>(y) * spec_.width + x];
  if (v == 0) return std::nullopt;
  return static_cast<Color>(v);
}

void Frame::set(int x, int y, std::optional<Color> label) {
  labels_[static_cast<std::size_t>(y) * spec_.width + x] =
      label ? static_cast<std::uint8_t>(*label) : std::uint8_t{0};
}

double projected_radius(double radius, double altitude, const FrameSpec& frame) {
  if (!(altitude > 0.0)) throw NotBelow();
  return frame.focal_length * radius / altitude;
}

namespace {

struct ProjectedDisc {
  PixelPoint center;
  double radius = 0.0;
  Color color = Color::Pink;
};

double dist2(double px, double py, const ProjectedDisc& d) {
  const double dx = px - d.center.x;
  const double dy = py - d.center.y;
  return dx * dx + dy * dy;
}

}  // namespace

Frame render(const Pose& drone, std::span<const Marker> markers, const FrameSpec& frame) {
  if (!(drone.z > 0.0)) throw NotBelow();
  Frame out(frame);

  std::vector<ProjectedDisc> discs;
  discs.reserve(markers.size());
  for (const Marker& m : markers) {
    ProjectedDisc d{project(drone, m.position, frame), projected_radius(m.radius, drone.z, frame),
                    m.color};
    // Skip discs whose bounding box misses the image.
    if (d.center.x + d.radius < 0.0 || d.center.x - d.radius > frame.width ||
        d.center.y + d.radius < 0.0 || d.center.y - d.radius > frame.height) {
      continue;
    }
    discs.push_back(d);
  }
  if (discs.empty()) return out;

  // Index (1-based) of the disc currently owning each pixel; only needed to
  // resolve overlaps between discs.
  std::vector<std::uint16_t> owner;
  if (discs.size() > 1) owner.assign(out.labels().size(), 0);

  for (std::size_t i = 0; i < discs.size(); ++i) {
    const ProjectedDisc& d = discs[i];
    const double r2 = d.radius * d.radius;
    const auto clamp_index = [](double v, int hi) {
      return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(hi)));
    };
    const int x0 = clamp_index(std::floor(d.center.x - d.radius), frame.width - 1);
    const int x1 = clamp_index(std::ceil(d.center.x + d.radius), frame.width - 1);
    const int y0 = clamp_index(std::floor(d.center.y - d.radius), frame.height - 1);
    const int y1 = clamp_index(std::ceil(d.center.y + d.radius), frame.height - 1);
    for (int y = y0; y <= y1; ++y) {
      const double py = y + 0.5;
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5;
        const double dd = dist2(px, py, d);
        if (dd > r2) continue;
        if (!owner.empty()) {
          auto& o = owner[static_cast<std::size_t>(y) * frame.width + x];
          if (o != 0 && dist2(px, py, discs[o - 1]) <= dd) continue;
          o = static_cast<std::uint16_t>(i + 1);
        }
        out.set(x, y, d.color);
      }
    }
  }
  return out;
}

std::optional<Detection> detect(const Frame& frame, Color color, int min_blob_size) {
  const auto target = static_cast<std::uint8_t>(color);
  const auto labels = frame.labels();
  const int w = frame.width();
  const int h = frame.height();

  std::int64_t count = 0;
  std::int64_t sum_x = 0;
  std::int64_t sum_y = 0;
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = labels.data() + static_cast<std::size_t>(y) * w;
    // Most rows are background; memchr skips them quickly.
    if (std::memchr(row, target, static_cast<std::size_t>(w)) == nullptr) continue;
    std::int64_t row_count = 0;
    std::int64_t row_sum = 0;
    for (int x = 0; x < w; ++x) {
      const bool hit = row[x] == target;
      row_count += hit;
      row_sum += hit ? x : 0;
    }
    count += row_count;
    sum_x += row_sum;
    sum_y += row_count * y;
  }
  if (count == 0 || count < min_blob_size) return std::nullopt;

  // Sum of pixel centers (index + 0.5) is exact in double, so one division
  // gives the correctly rounded centroid.
  const double n = static_cast<double>(count);
  const PixelPoint center{(static_cast<double>(sum_x) + 0.5 * n) / n,
                          (static_cast<double>(sum_y) + 0.5 * n) / n};
  return Detection{color, center, count};
}

void write_ppm(const Frame& frame, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "P6\n" << frame.width() << ' ' << frame.height() << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(frame.width()) * 3);
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const Rgb c = palette(frame.at(x, y));
      row[3 * x] = static_cast<char>(c.r);
      row[3 * x + 1] = static_cast<char>(c.g);
      row[3 * x + 2] = static_cast<char>(c.b);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace mtnav
