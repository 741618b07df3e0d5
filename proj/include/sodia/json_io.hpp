#pragma once

// JSON mapping for every persisted or transmitted type. Absent optionals are
// written as null; readers also accept a missing key as absent.

#include "sodia/casefile.hpp"
#include "sodia/metrics.hpp"
#include "sodia/netmap_layout.hpp"
#include "sodia/timebar_layout.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sodia {

using Json = nlohmann::json;

/// Canonical text for any JSON value: sorted keys, two-space indent, trailing newline.
std::string canonical(const Json& j);

/// Parses text; throws MalformedDocument.
Json parse_json(std::string_view text);

void to_json(Json& j, const Violation& v);
void to_json(Json& j, const Sector& s);
void to_json(Json& j, const SectorConfig& c);
void to_json(Json& j, const Position& p);
void to_json(Json& j, const Contact& c);
void to_json(Json& j, const Edge& e);
void to_json(Json& j, const NetMapVersion& v);
void to_json(Json& j, const Lane& l);
void to_json(Json& j, const LifeEvent& e);
void to_json(Json& j, const TimeBar& t);
void to_json(Json& j, const Client& c);
void to_json(Json& j, const CaseFile& c);
void to_json(Json& j, const MetricsReport& r);
void to_json(Json& j, const LayoutParams& p);
void to_json(Json& j, const LayoutSuggestion& s);
void to_json(Json& j, const Fragment& f);
void to_json(Json& j, const LaneLayout& l);
void to_json(Json& j, const AxisTick& t);
void to_json(Json& j, const VersionDiff& d);

Json metrics_delta_json(const MetricsDelta& d);

// Readers throw MalformedDocument on missing keys or wrong types.

Sector sector_from_json(const Json& j);
SectorConfig sector_config_from_json(const Json& j);
Position position_from_json(const Json& j);
Contact contact_from_json(const Json& j);
Edge edge_from_json(const Json& j);
NetMapVersion version_from_json(const Json& j);
Lane lane_from_json(const Json& j);
LifeEvent event_from_json(const Json& j);
TimeBar timebar_from_json(const Json& j);
Client client_from_json(const Json& j);
CaseFile casefile_from_json(const Json& j);
/// Missing fields fall back to the defaults.
LayoutParams layout_params_from_json(const Json& j);
LayoutSuggestion layout_suggestion_from_json(const Json& j);
VersionDiff version_diff_from_json(const Json& j);

} // namespace sodia
