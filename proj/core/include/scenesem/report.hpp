#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scenesem/config.hpp"
#include "scenesem/floorplan.hpp"
#include "scenesem/interactions.hpp"
#include "scenesem/navrules.hpp"

namespace scenesem {

/// {"config": ..., "events": [...]}
nlohmann::ordered_json events_document(const std::vector<InteractionEvent>& events, const Config& cfg);
/// Inverse of events_document for the "events" array. Throws ParseError.
std::vector<InteractionEvent> events_from_document(const nlohmann::ordered_json& doc);
/// One grounding tree per event, separated by blank lines.
std::string events_text(const std::vector<InteractionEvent>& events);

/// Plan fields at top level (readable by floorplan_from_json) plus
/// "summary" and "config".
nlohmann::ordered_json floorplan_document(const FloorplanResult& r, const Config& cfg);
std::string floorplan_summary(const FloorplanResult& r);

nlohmann::ordered_json navcheck_document(const std::vector<NavVerdict>& verdicts, const PlannedPath& path,
                                         double t, const Config& cfg);
std::string navcheck_text(const std::vector<NavVerdict>& verdicts);

/// printf-style "%.3f".
std::string fixed3(double v);

}  // namespace scenesem
