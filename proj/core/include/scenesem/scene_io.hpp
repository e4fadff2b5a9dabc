#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenesem/sth.hpp"

namespace scenesem {

/// Parsed JSON-lines scene. An optional first line {"meta": {...}} carries
/// the coordinate frame and a frame-rate hint; every other line is a frame:
///   {"t": s, "persons": [{"id", "joints": {name: [x,y,z]}, "confidences"?}],
///    "objects": [{"id", "class", "kind"?, "aabb"|"position"|"polygon"}]}
/// Lines sharing a timestamp are merged into one frame.
struct SceneFile {
  std::vector<SceneFrame> frames;
  CoordinateFrame frame = CoordinateFrame::sensor;
  std::optional<double> frame_rate;
};

struct Diagnostic {
  std::size_t line = 0;  // 1-based; 0 for file-level problems
  std::string message;
  std::string to_string() const;
};

/// Throws ParseError "line N: ..." at the first violation.
SceneFile read_scene(std::istream& in);
SceneFile read_scene(const std::filesystem::path& path);

/// Up to `limit` violations, in line order.
std::vector<Diagnostic> validate_scene(std::istream& in, std::size_t limit = 20);

nlohmann::ordered_json frame_to_json(const SceneFrame& f);
void write_scene(std::ostream& out, const SceneFile& scene);

SceneRecording to_recording(const SceneFile& scene, const SthConfig& cfg = {},
                            std::vector<SceneTrack> static_tracks = {});

}  // namespace scenesem
