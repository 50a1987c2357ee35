#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include <doctest.h>

#include "mtnav/error.hpp"
#include "mtnav/perception.hpp"

using namespace mtnav;

namespace {

struct PixelSums {
  std::int64_t count = 0;
  double sx = 0.0;
  double sy = 0.0;
};

// Exhaustive sum over every labeled pixel of a rendered frame.
PixelSums frame_sums(const Frame& f, Color c) {
  PixelSums s;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      if (f.at(x, y) == c) {
        ++s.count;
        s.sx += x + 0.5;
        s.sy += y + 0.5;
      }
    }
  }
  return s;
}

// Exhaustive geometric coverage of a disc, independent of the renderer.
PixelSums disc_sums(const FrameSpec& spec, PixelPoint center, double r) {
  PixelSums s;
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const double dx = x + 0.5 - center.x;
      const double dy = y + 0.5 - center.y;
      if (dx * dx + dy * dy <= r * r) {
        ++s.count;
        s.sx += x + 0.5;
        s.sy += y + 0.5;
      }
    }
  }
  return s;
}

// Pose whose camera sees a disc of `px_radius` pixels at `px` for a 0.1 m marker at origin.
Pose pose_for(PixelPoint px, double px_radius, const FrameSpec& spec) {
  const double z = spec.focal_length * 0.1 / px_radius;
  // project: u = cx + f*right/z, v = cy - f*forward/z with forward=-x_drone, right=y_drone (yaw 0)
  const double right = (px.x - spec.width / 2.0) * z / spec.focal_length;
  const double forward = (spec.height / 2.0 - px.y) * z / spec.focal_length;
  return {-forward, right, z, 0.0};
}

}  // namespace

TEST_SUITE("perception") {

TEST_CASE("color registry round-trips names") {
  for (Color c : kAllColors) CHECK(parse_color(to_string(c)) == c);
  CHECK_FALSE(parse_color("purple").has_value());
  CHECK_FALSE(parse_color("Pink").has_value());
}

TEST_CASE("no markers renders an all-background frame") {
  const Frame f = render({0, 0, 1.0, 0.0}, {}, FrameSpec{});
  CHECK(f.width() == 640);
  CHECK(f.height() == 360);
  CHECK(f.labels().size() == 640u * 360u);
  for (auto v : f.labels()) REQUIRE(v == 0);
  CHECK_FALSE(detect(f, Color::Pink, 1).has_value());
}

TEST_CASE("marker directly below renders a centered disc of the projected radius") {
  const FrameSpec spec;
  // 0.0625 m at 1 m altitude, focal 320 -> 20 px.
  const Marker m{{0.0, 0.0}, 0.0625, Color::Pink};
  CHECK(projected_radius(m.radius, 1.0, spec) == doctest::Approx(20.0));
  const Frame f = render({0, 0, 1.0, 0.0}, std::vector{m}, spec);
  const PixelSums want = disc_sums(spec, {320, 180}, 20.0);
  const PixelSums got = frame_sums(f, Color::Pink);
  CHECK(got.count == want.count);
  const auto det = detect(f, Color::Pink);
  REQUIRE(det);
  CHECK(det->center == PixelPoint{320.0, 180.0});
  CHECK(det->pixel_count == want.count);
}

TEST_CASE("marker outside the footprint renders nothing") {
  const Marker m{{2.0, 0.0}, 0.1, Color::Pink};
  const Frame f = render({0, 0, 1.0, 0.0}, std::vector{m}, FrameSpec{});
  CHECK(frame_sums(f, Color::Pink).count == 0);
  CHECK_FALSE(detect(f, Color::Pink).has_value());
}

TEST_CASE("render requires an airborne camera") {
  CHECK_THROWS_AS(render({0, 0, 0.0, 0.0}, {}, FrameSpec{}), NotBelow);
}

TEST_CASE("disc centered at (100,100) with 20 px radius is detected within 0.5 px") {
  const FrameSpec spec;
  const Frame f = render(pose_for({100, 100}, 20.0, spec),
                         std::vector{Marker{{0, 0}, 0.1, Color::Red}}, spec);
  const auto det = detect(f, Color::Red);
  REQUIRE(det);
  CHECK(std::abs(det->center.x - 100.0) <= 0.5);
  CHECK(std::abs(det->center.y - 100.0) <= 0.5);
}

TEST_CASE("half-clipped disc centroid equals the exhaustive pixel-sum oracle") {
  const FrameSpec spec;
  // Center on the left edge: only the right half is visible.
  const Pose pose = pose_for({0.0, 180.0}, 30.0, spec);
  const Frame f = render(pose, std::vector{Marker{{0, 0}, 0.1, Color::Pink}}, spec);
  const auto det = detect(f, Color::Pink);
  REQUIRE(det);

  const PixelSums oracle = frame_sums(f, Color::Pink);
  CHECK(det->pixel_count == oracle.count);
  CHECK(det->center.x == oracle.sx / static_cast<double>(oracle.count));
  CHECK(det->center.y == oracle.sy / static_cast<double>(oracle.count));
  CHECK(det->center.x > 5.0);  // visible half lies right of the edge
}

TEST_CASE("min_blob_size rejects small blobs") {
  const FrameSpec spec;
  Frame f(spec);
  for (int i = 0; i < 9; ++i) f.set(10 + i, 10, Color::Pink);
  CHECK_FALSE(detect(f, Color::Pink, 10).has_value());
  f.set(30, 10, Color::Pink);
  const auto det = detect(f, Color::Pink, 10);
  REQUIRE(det);
  CHECK(det->pixel_count == 10);
}

TEST_CASE("properties: other colors do not disturb detection; min_blob_size monotone; determinism") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> pos(-0.6, 0.6);
  std::uniform_real_distribution<double> rad(0.01, 0.2);
  std::uniform_int_distribution<int> blob(1, 400);
  const FrameSpec spec;
  const Pose drone{0, 0, 1.0, 0.3};

  for (int i = 0; i < 60; ++i) {
    const Marker pink{{pos(gen), pos(gen)}, rad(gen), Color::Pink};
    // Blue placed far enough that the discs cannot overlap.
    const Marker blue{{pink.position.x + 0.5, pink.position.y + 0.5}, 0.04, Color::Blue};

    const Frame alone = render(drone, std::vector{pink}, spec);
    const Frame both = render(drone, std::vector{pink, blue}, spec);
    const auto a = detect(alone, Color::Pink);
    const auto b = detect(both, Color::Pink);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(a->center == b->center);
      CHECK(a->pixel_count == b->pixel_count);
    }

    const int lo = blob(gen);
    const int hi = lo + blob(gen);
    if (!detect(alone, Color::Pink, lo)) CHECK_FALSE(detect(alone, Color::Pink, hi).has_value());

    const Frame again = render(drone, std::vector{pink, blue}, spec);
    CHECK(std::equal(both.labels().begin(), both.labels().end(), again.labels().begin()));
  }
}

TEST_CASE("overlapping discs: each pixel takes the nearest covering marker") {
  const FrameSpec spec;
  const Marker a{{0.0, 0.0}, 0.2, Color::Pink};
  const Marker b{{0.0, -0.1}, 0.2, Color::Green};
  const Pose drone{0, 0, 1.0, 0.0};
  const Frame f = render(drone, std::vector{a, b}, spec);
  const PixelPoint pa = project(drone, a.position, spec);
  const PixelPoint pb = project(drone, b.position, spec);
  for (int y = 0; y < spec.height; y += 7) {
    for (int x = 0; x < spec.width; x += 7) {
      const double da = std::hypot(x + 0.5 - pa.x, y + 0.5 - pa.y);
      const double db = std::hypot(x + 0.5 - pb.x, y + 0.5 - pb.y);
      const double r = 64.0;
      std::optional<Color> want;
      if (da <= r && (db > r || da <= db)) want = Color::Pink;
      if (db <= r && (da > r || db < da)) want = Color::Green;
      CHECK(f.at(x, y) == want);
    }
  }
}

TEST_CASE("write_ppm emits a P6 image of the frame size") {
  const FrameSpec spec{8, 4, 4.0};
  Frame f(spec);
  f.set(1, 1, Color::Blue);
  const auto path = std::filesystem::temp_directory_path() / "mtnav_test_frame.ppm";
  write_ppm(f, path);
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxv = 0;
  in >> magic >> w >> h >> maxv;
  in.get();
  CHECK(magic == "P6");
  CHECK(w == 8);
  CHECK(h == 4);
  CHECK(maxv == 255);
  std::vector<char> data(8 * 4 * 3);
  in.read(data.data(), static_cast<std::streamsize>(data.size()));
  CHECK(in.gcount() == static_cast<std::streamsize>(data.size()));
  const Rgb blue = palette(Color::Blue);
  const std::size_t off = (1 * 8 + 1) * 3;
  CHECK(static_cast<std::uint8_t>(data[off]) == blue.r);
  CHECK(static_cast<std::uint8_t>(data[off + 2]) == blue.b);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
