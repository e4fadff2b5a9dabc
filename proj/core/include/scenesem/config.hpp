#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "scenesem/calculi.hpp"
#include "scenesem/floorplan.hpp"
#include "scenesem/fluents.hpp"
#include "scenesem/interactions.hpp"
#include "scenesem/sth.hpp"

namespace scenesem {

/// Every tunable threshold, grouped by module. calculi.eps_rcc and
/// calculi.eps_t are shared with the pattern and interaction layers.
struct Config {
  CalculiConfig calculi;
  SthConfig sth;
  PatternConfig patterns;
  InteractionConfig interactions;
  FloorplanConfig floorplan;
};

/// Throws ConfigError on any out-of-range value.
void validate(const Config& cfg);

/// Sections and keys missing from `j` keep their defaults; unknown sections,
/// unknown keys and wrongly typed values throw ConfigError.
Config config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const Config& cfg);

/// Reads a JSON config file. Throws ConfigError when unreadable or invalid.
Config load_config(const std::filesystem::path& path);

/// Explicit path first, then $SCENESEM_CONFIG, then defaults.
Config resolve_config(const std::optional<std::string>& path);

}  // namespace scenesem
