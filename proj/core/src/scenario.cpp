#include "mtnav/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mtnav/error.hpp"

namespace mtnav {

Campaign default_campaign(MissionKind kind) {
  Campaign c;
  c.spec.kind = kind;
  c.spec.search_color = Color::Pink;
  c.world.drone_start = {0.0, 0.0};
  c.world.carrier_start = {0.0, 0.0, 0.0, 0.0};

  switch (kind) {
    case MissionKind::TrackVisible:
      c.world.markers = {{{0.3, -0.3}, 0.1, Color::Pink}};
      break;
    case MissionKind::ForwardSearchHover:
      c.world.markers = {{{2.0, 0.0}, 0.1, Color::Pink}};
      c.spec.trajectory = forward_search(c.config.frame);
      break;
    case MissionKind::SearchReturnLand:
      c.world.markers = {{{2.0, 0.0}, 0.1, Color::Pink}};
      c.spec.trajectory = forward_search(c.config.frame);
      c.spec.home_color = Color::Blue;
      break;
    case MissionKind::CarrierCoordination:
      // The carrier drives the grounded drone 3 m to the search site.
      c.world.start_airborne = false;
      c.world.carrier_start = {-3.0, 0.0, 0.0, 0.0};
      c.world.carrier_waypoints = {{0.0, 0.0}};
      c.world.markers = {{{2.0, 0.0}, 0.1, Color::Pink}};
      c.spec.trajectory = forward_search(c.config.frame);
      c.spec.home_color = Color::Blue;
      break;
  }
  return c;
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("wrong type for '") + key + "'");
  }
}

Color read_color(const json& value, std::string_view key) {
  if (!value.is_string()) throw ConfigError(std::string(key) + " must be a color name");
  const auto c = parse_color(value.get<std::string>());
  if (!c) throw ConfigError("unknown color '" + value.get<std::string>() + "'");
  return *c;
}

GroundPoint read_point(const json& value, std::string_view where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    throw ConfigError(std::string(where) + " must be a [x, y] pair");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

void apply_sim(const json& j, SimConfig& cfg) {
  check_keys(j, "sim", {"dt", "altitude", "min_blob_size", "perception", "frame", "gains", "noise"});
  read(j, "dt", cfg.dt);
  read(j, "altitude", cfg.altitude);
  read(j, "min_blob_size", cfg.min_blob_size);
  if (j.contains("perception")) {
    std::string mode;
    read(j, "perception", mode);
    if (mode == "raster") {
      cfg.perception = PerceptionMode::Raster;
    } else if (mode == "ideal") {
      cfg.perception = PerceptionMode::Ideal;
    } else {
      throw ConfigError("perception must be 'raster' or 'ideal'");
    }
  }
  if (j.contains("frame")) {
    const json& f = j["frame"];
    check_keys(f, "sim.frame", {"width", "height", "focal_length"});
    read(f, "width", cfg.frame.width);
    read(f, "height", cfg.frame.height);
    read(f, "focal_length", cfg.frame.focal_length);
  }
  if (j.contains("gains")) {
    const json& g = j["gains"];
    check_keys(g, "sim.gains", {"k", "hover_threshold", "max_speed", "axes"});
    read(g, "k", cfg.gains.k);
    read(g, "hover_threshold", cfg.gains.hover_threshold);
    read(g, "max_speed", cfg.gains.max_speed);
    if (g.contains("axes")) {
      std::string axes;
      read(g, "axes", axes);
      if (axes == "image_up_forward") {
        cfg.gains.axes = AxisConvention::ImageUpIsForward;
      } else if (axes == "literal") {
        cfg.gains.axes = AxisConvention::LiteralEquations;
      } else {
        throw ConfigError("gains.axes must be 'image_up_forward' or 'literal'");
      }
    }
  }
  if (j.contains("noise")) {
    const json& n = j["noise"];
    check_keys(n, "sim.noise", {"drift_std", "takeoff_jitter_std"});
    read(n, "drift_std", cfg.noise.drift_std);
    read(n, "takeoff_jitter_std", cfg.noise.takeoff_jitter_std);
  }
}

void apply_world(const json& j, WorldSetup& w) {
  check_keys(j, "world", {"drone", "carrier", "markers"});
  if (j.contains("drone")) {
    const json& d = j["drone"];
    check_keys(d, "world.drone", {"x", "y", "yaw", "airborne"});
    read(d, "x", w.drone_start.x);
    read(d, "y", w.drone_start.y);
    read(d, "yaw", w.drone_yaw);
    read(d, "airborne", w.start_airborne);
  }
  if (j.contains("carrier")) {
    const json& c = j["carrier"];
    check_keys(c, "world.carrier", {"x", "y", "speed", "marker_radius", "path"});
    read(c, "x", w.carrier_start.x);
    read(c, "y", w.carrier_start.y);
    read(c, "speed", w.carrier_speed);
    read(c, "marker_radius", w.carrier_marker_radius);
    if (c.contains("path")) {
      if (!c["path"].is_array()) throw ConfigError("world.carrier.path must be an array");
      w.carrier_waypoints.clear();
      for (const json& p : c["path"]) w.carrier_waypoints.push_back(read_point(p, "carrier waypoint"));
    }
  }
  if (j.contains("markers")) {
    if (!j["markers"].is_array()) throw ConfigError("world.markers must be an array");
    w.markers.clear();
    for (const json& m : j["markers"]) {
      check_keys(m, "marker", {"x", "y", "radius", "color"});
      Marker marker;
      read(m, "x", marker.position.x);
      read(m, "y", marker.position.y);
      read(m, "radius", marker.radius);
      if (m.contains("color")) marker.color = read_color(m["color"], "marker color");
      w.markers.push_back(marker);
    }
  }
}

Direction read_direction(const json& value) {
  if (value == "forward") return Direction::Forward;
  if (value == "right") return Direction::Right;
  if (value == "backward") return Direction::Backward;
  if (value == "left") return Direction::Left;
  throw ConfigError("direction must be forward, right, backward or left");
}

ImaginedSegment read_segment(const json& s, const FrameSpec& frame) {
  check_keys(s, "trajectory segment",
             {"target", "direction", "offset", "duration", "distance", "until_color"});
  ImaginedSegment seg;
  if (s.contains("target") == s.contains("direction")) {
    throw ConfigError("segment needs exactly one of 'target' or 'direction'");
  }
  if (s.contains("target")) {
    const GroundPoint p = read_point(s["target"], "segment target");
    seg.target = {p.x, p.y};
  } else {
    double offset = kImaginedOffset;
    read(s, "offset", offset);
    seg.target = direction_target(frame, read_direction(s["direction"]), offset);
  }
  const int terminators = s.contains("duration") + s.contains("distance") + s.contains("until_color");
  if (terminators != 1) {
    throw ConfigError("segment needs exactly one of 'duration', 'distance', 'until_color'");
  }
  if (s.contains("duration")) {
    Duration d;
    read(s, "duration", d.seconds);
    seg.terminate_on = d;
  } else if (s.contains("distance")) {
    Distance d;
    read(s, "distance", d.meters);
    seg.terminate_on = d;
  } else {
    seg.terminate_on = MarkerDetected{read_color(s["until_color"], "until_color")};
  }
  return seg;
}

void apply_mission(const json& j, MissionSpec& spec, const FrameSpec& frame) {
  check_keys(j, "mission",
             {"search_color", "home_color", "timeout", "hover_dwell", "land_threshold",
              "land_dwell", "descent_rate", "climb_rate", "lost_patience", "trajectory",
              "square_side", "max_search_distance"});
  if (j.contains("search_color")) spec.search_color = read_color(j["search_color"], "search_color");
  if (j.contains("home_color")) spec.home_color = read_color(j["home_color"], "home_color");
  read(j, "timeout", spec.timeout);
  read(j, "hover_dwell", spec.params.hover_dwell);
  read(j, "land_threshold", spec.params.land_threshold);
  read(j, "land_dwell", spec.params.land_dwell);
  read(j, "descent_rate", spec.params.descent_rate);
  read(j, "climb_rate", spec.params.climb_rate);
  read(j, "lost_patience", spec.params.lost_patience);

  const int shapes = j.contains("trajectory") + j.contains("square_side") +
                     j.contains("max_search_distance");
  if (shapes > 1) {
    throw ConfigError("use only one of trajectory, square_side, max_search_distance");
  }
  if (j.contains("trajectory")) {
    if (!j["trajectory"].is_array()) throw ConfigError("mission.trajectory must be an array");
    spec.trajectory.segments.clear();
    for (const json& s : j["trajectory"]) spec.trajectory.segments.push_back(read_segment(s, frame));
  } else if (j.contains("square_side")) {
    double side = 0.0;
    read(j, "square_side", side);
    if (!(side > 0.0)) throw ConfigError("square_side must be > 0");
    spec.trajectory = square_trajectory(frame, side);
  } else if (j.contains("max_search_distance")) {
    double d = 0.0;
    read(j, "max_search_distance", d);
    if (!(d > 0.0)) throw ConfigError("max_search_distance must be > 0");
    spec.trajectory = forward_search(frame, d);
  } else if (!spec.trajectory.empty()) {
    // Defaults were built for the default frame; follow any frame override.
    spec.trajectory = forward_search(frame);
  }
}

}  // namespace

Campaign parse_campaign(std::string_view json_text, MissionKind kind) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config", {"trials", "seed", "threads", "sim", "world", "mission"});

  Campaign c = default_campaign(kind);
  read(root, "trials", c.trials);
  read(root, "seed", c.base_seed);
  read(root, "threads", c.threads);
  if (root.contains("sim")) apply_sim(root["sim"], c.config);
  if (root.contains("world")) apply_world(root["world"], c.world);
  if (root.contains("mission")) {
    apply_mission(root["mission"], c.spec, c.config.frame);
  } else if (!c.spec.trajectory.empty()) {
    c.spec.trajectory = forward_search(c.config.frame);
  }
  c.validate();
  return c;
}

Campaign load_campaign(const std::filesystem::path& path, MissionKind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_campaign(text.str(), kind);
}

}  // namespace mtnav
