#pragma once

#include <cstdint>

#include "mtnav/mtnav.hpp"

namespace mtnav::testing {

inline SimConfig zero_noise_config() {
  SimConfig cfg;
  cfg.noise = NoiseModel::none();
  return cfg;
}

inline WorldState airborne_world(const SimConfig& cfg, std::vector<Marker> markers = {},
                                 std::uint64_t seed = 1) {
  WorldSetup setup;
  setup.markers = std::move(markers);
  // Park the carrier far away so its blue marker stays out of view.
  setup.carrier_start = {-50.0, 0.0, 0.0, 0.0};
  return make_world(setup, cfg, seed);
}

}  // namespace mtnav::testing
