#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "mtnav/harness.hpp"

namespace mtnav {

/// Built-in world and mission for each task: a pink marker 2 m ahead for the
/// search tasks, one 0.3 m forward and right of the drone for TrackVisible,
/// and a carrier that drives 3 m before launch for CarrierCoordination.
Campaign default_campaign(MissionKind kind);

/// Overlays a JSON scenario file onto default_campaign(kind). Throws
/// ConfigError on unreadable files, mistyped fields, or invalid values.
Campaign load_campaign(const std::filesystem::path& path, MissionKind kind);

/// Same as load_campaign but from an in-memory JSON document.
Campaign parse_campaign(std::string_view json_text, MissionKind kind);

}  // namespace mtnav
