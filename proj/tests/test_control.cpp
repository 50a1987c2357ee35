#include <cmath>
#include <random>

#include <doctest.h>

#include "mtnav/control.hpp"
#include "mtnav/error.hpp"

using namespace mtnav;

TEST_SUITE("control") {

TEST_CASE("pixel_error is target minus current") {
  CHECK(pixel_error({400, 200}, {320, 180}) == PixelError{80, 20});
  CHECK(pixel_error({320, 180}, {320, 180}) == PixelError{0, 0});
  CHECK(pixel_error({320, 80}, {320, 180}) == PixelError{0, -100});
}

TEST_CASE("compute_command examples") {
  const ControllerGains g;  // k 0.0005, threshold 50, max 1.0

  const VelocityCommand zero = compute_command({0, 0}, g);
  CHECK(zero.hovering);
  CHECK(zero.vel_forward == 0.0);
  CHECK(zero.vel_right == 0.0);

  const VelocityCommand fwd = compute_command({0, -100}, g);
  CHECK_FALSE(fwd.hovering);
  CHECK(fwd.vel_forward == 0.05);
  CHECK(fwd.vel_right == 0.0);

  const VelocityCommand diag = compute_command({80, 20}, g);
  CHECK_FALSE(diag.hovering);
  CHECK(diag.vel_forward == -0.01);
  CHECK(diag.vel_right == 0.04);

  // |(30,30)| = 42.43 <= 50
  CHECK(compute_command({30, 30}, g).hovering);
}

TEST_CASE("literal convention flips only the forward axis") {
  ControllerGains g;
  g.axes = AxisConvention::LiteralEquations;
  const VelocityCommand c = compute_command({80, 20}, g);
  CHECK(c.vel_forward == 0.01);
  CHECK(c.vel_right == 0.04);
  CHECK(compute_command({0, -100}, g).vel_forward == -0.05);
}

TEST_CASE("gains validation") {
  CHECK_NOTHROW(ControllerGains{}.validate());
  CHECK_THROWS_AS((ControllerGains{0.0, 50, 1.0}).validate(), ConfigError);
  CHECK_THROWS_AS((ControllerGains{0.0005, -1, 1.0}).validate(), ConfigError);
  CHECK_THROWS_AS((ControllerGains{0.0005, 50, 0.0}).validate(), ConfigError);
}

TEST_CASE("saturation caps the planar speed and keeps direction") {
  ControllerGains g;
  g.max_speed = 0.1;
  const VelocityCommand c = compute_command({3000, -4000}, g);
  CHECK(c.planar_speed() <= 0.1);
  CHECK(c.planar_speed() == doctest::Approx(0.1));
  CHECK(c.vel_right / c.vel_forward == doctest::Approx(3000.0 / 4000.0));
}

TEST_CASE("property: hover iff |e| <= threshold, 10k errors straddling 50 px") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> radius(40.0, 60.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * 3.141592653589793);
  const ControllerGains g;
  int inside = 0;
  for (int i = 0; i < 10000; ++i) {
    const double r = radius(gen);
    const double a = angle(gen);
    const PixelError e{r * std::cos(a), r * std::sin(a)};
    const bool within = e.x * e.x + e.y * e.y <= 50.0 * 50.0;
    const VelocityCommand c = compute_command(e, g);
    REQUIRE(c.hovering == within);
    if (c.hovering) {
      REQUIRE(c.vel_forward == 0.0);
      REQUIRE(c.vel_right == 0.0);
    }
    inside += within;
  }
  CHECK(inside > 3000);
  CHECK(inside < 7000);
}

TEST_CASE("properties: proportionality, saturation bound, direction, odd symmetry") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> small(-800.0, 800.0);
  std::uniform_real_distribution<double> huge(-1e6, 1e6);
  const ControllerGains g;
  for (int i = 0; i < 5000; ++i) {
    const PixelError e{small(gen), small(gen)};
    const VelocityCommand c1 = compute_command(e, g);
    const VelocityCommand c2 = compute_command({2 * e.x, 2 * e.y}, g);
    if (!c1.hovering && c2.planar_speed() < 0.99 * g.max_speed) {
      CHECK(c2.vel_forward == doctest::Approx(2 * c1.vel_forward));
      CHECK(c2.vel_right == doctest::Approx(2 * c1.vel_right));
      // Fixed axis map: (ex, ey) -> (right, forward) = k*(ex, -ey).
      CHECK(c1.vel_right * -e.y - c1.vel_forward * e.x == doctest::Approx(0.0).epsilon(1e-9));
    }
    const VelocityCommand neg = compute_command({-e.x, -e.y}, g);
    CHECK(neg.vel_forward == -c1.vel_forward);
    CHECK(neg.vel_right == -c1.vel_right);

    const VelocityCommand big = compute_command({huge(gen), huge(gen)}, g);
    CHECK(big.planar_speed() <= g.max_speed);
  }
}

}  // TEST_SUITE
