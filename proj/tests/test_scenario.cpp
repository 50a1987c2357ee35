#include <filesystem>
#include <fstream>
#include <variant>

#include <doctest.h>

#include "mtnav/error.hpp"
#include "mtnav/scenario.hpp"

using namespace mtnav;

TEST_SUITE("scenario") {

TEST_CASE("defaults per mission kind validate") {
  for (auto kind : {MissionKind::TrackVisible, MissionKind::ForwardSearchHover,
                    MissionKind::SearchReturnLand, MissionKind::CarrierCoordination}) {
    const Campaign c = default_campaign(kind);
    CHECK_NOTHROW(c.validate());
    CHECK(c.spec.kind == kind);
    CHECK(c.spec.returns_home() == c.spec.home_color.has_value());
  }
  CHECK_FALSE(default_campaign(MissionKind::CarrierCoordination).world.start_airborne);
}

TEST_CASE("empty object yields the defaults") {
  const Campaign c = parse_campaign("{}", MissionKind::SearchReturnLand);
  const Campaign d = default_campaign(MissionKind::SearchReturnLand);
  CHECK(c.trials == d.trials);
  CHECK(c.config.dt == d.config.dt);
  CHECK(c.spec.trajectory.segments.size() == d.spec.trajectory.segments.size());
}

TEST_CASE("overrides are applied") {
  const Campaign c = parse_campaign(R"({
    "trials": 7, "seed": 11, "threads": 2,
    "sim": {"dt": 0.05, "perception": "ideal",
            "gains": {"k": 0.001, "axes": "literal"},
            "noise": {"drift_std": 0.0, "takeoff_jitter_std": 0.0}},
    "world": {"drone": {"x": 1, "y": -1, "yaw": 0.5},
              "markers": [{"x": 3, "y": 0, "color": "green", "radius": 0.2}]},
    "mission": {"search_color": "green", "timeout": 30,
                "trajectory": [{"direction": "left", "duration": 2},
                               {"target": [320, 100], "until_color": "green"},
                               {"direction": "forward", "offset": 50, "distance": 1.5}]}
  })",
                                    MissionKind::ForwardSearchHover);
  CHECK(c.trials == 7);
  CHECK(c.base_seed == 11);
  CHECK(c.threads == 2);
  CHECK(c.config.dt == 0.05);
  CHECK(c.config.perception == PerceptionMode::Ideal);
  CHECK(c.config.gains.k == 0.001);
  CHECK(c.config.gains.axes == AxisConvention::LiteralEquations);
  CHECK(c.config.noise.drift_std == 0.0);
  CHECK(c.world.drone_start.x == 1.0);
  CHECK(c.world.drone_yaw == 0.5);
  REQUIRE(c.world.markers.size() == 1);
  CHECK(c.world.markers[0].color == Color::Green);
  CHECK(c.world.markers[0].radius == 0.2);
  CHECK(c.spec.search_color == Color::Green);
  CHECK(c.spec.timeout == 30.0);

  const auto& segs = c.spec.trajectory.segments;
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].target == PixelPoint{220, 180});
  CHECK(std::get<Duration>(segs[0].terminate_on).seconds == 2.0);
  CHECK(segs[1].target == PixelPoint{320, 100});
  CHECK(std::get<MarkerDetected>(segs[1].terminate_on).color == Color::Green);
  CHECK(segs[2].target == PixelPoint{320, 130});
  CHECK(std::get<Distance>(segs[2].terminate_on).meters == 1.5);
}

TEST_CASE("square_side and max_search_distance shapes") {
  const Campaign sq = parse_campaign(R"({"mission": {"square_side": 4}})",
                                     MissionKind::ForwardSearchHover);
  CHECK(sq.spec.trajectory.segments.size() == 4);
  const Campaign fw = parse_campaign(R"({"mission": {"max_search_distance": 2.5}})",
                                     MissionKind::ForwardSearchHover);
  REQUIRE(fw.spec.trajectory.segments.size() == 1);
  CHECK(std::get<Distance>(fw.spec.trajectory.segments[0].terminate_on).meters == 2.5);
}

TEST_CASE("invalid configs raise ConfigError") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"bogus": 1})",
      R"({"sim": {"dtt": 0.1}})",
      R"({"sim": {"dt": "fast"}})",
      R"({"sim": {"dt": -0.1}})",
      R"({"sim": {"gains": {"k": 0.5}}})",
      R"({"sim": {"perception": "psychic"}})",
      R"({"sim": {"gains": {"axes": "sideways"}}})",
      R"({"trials": 0})",
      R"({"world": {"markers": [{"x": 1, "y": 0, "color": "purple"}]}})",
      R"({"world": {"markers": [{"x": 1, "y": 0, "radius": -1}]}})",
      R"({"world": {"carrier": {"path": [[1]]}}})",
      R"({"mission": {"square_side": 0}})",
      R"({"mission": {"square_side": 2, "max_search_distance": 2}})",
      R"({"mission": {"trajectory": [{"direction": "up", "duration": 1}]}})",
      R"({"mission": {"trajectory": [{"direction": "left"}]}})",
      R"({"mission": {"trajectory": [{"direction": "left", "duration": 1, "distance": 1}]}})",
      R"({"mission": {"trajectory": [{"target": [1, 2], "direction": "left", "duration": 1}]}})",
      R"({"mission": {"trajectory": [{"direction": "left", "duration": -1}]}})",
      R"({"mission": {"timeout": 0}})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_campaign(text, MissionKind::ForwardSearchHover), ConfigError);
  }
}

TEST_CASE("load_campaign reads files and reports missing ones") {
  const auto path = std::filesystem::temp_directory_path() / "mtnav_scenario_test.json";
  {
    std::ofstream out(path);
    out << R"({"trials": 3})";
  }
  CHECK(load_campaign(path, MissionKind::TrackVisible).trials == 3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_campaign(path, MissionKind::TrackVisible), ConfigError);
}

}  // TEST_SUITE
