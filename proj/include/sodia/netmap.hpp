#pragma once

#include "sodia/date.hpp"
#include "sodia/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sodia {

struct Sector {
    std::string id;
    std::string label;

    bool operator==(const Sector&) const = default;
};

/// Thematic wedges of the map. Sectors split the full circle into equal wedges
/// in list order, starting at 12 o'clock and running clockwise.
struct SectorConfig {
    std::vector<Sector> sectors;

    std::optional<std::size_t> index_of(std::string_view sector_id) const;
    double wedge_angle() const;   // radians

    bool operator==(const SectorConfig&) const = default;
};

/// Six replaceable defaults; the method itself does not fix a sector list.
SectorConfig default_sector_config();

/// Polar placement relative to the ego. `radius` in (0, 1], smaller is closer.
/// `angle_frac` in [0, 1) runs across the sector's wedge from its
/// counterclockwise edge.
struct Position {
    std::string sector_id;
    double radius = 1.0;
    double angle_frac = 0.0;

    bool operator==(const Position&) const = default;
};

struct Contact {
    std::string contact_id;
    std::string display_name;
    std::optional<std::string> gender;
    std::optional<std::string> role;
    std::optional<std::int64_t> age;
    bool is_human = true;
    std::optional<std::string> emoji;
    Position position;

    bool operator==(const Contact&) const = default;
};

/// Undirected alter-alter tie.
struct Edge {
    std::string a;
    std::string b;

    /// Endpoints ordered so that a <= b.
    Edge normalized() const { return a <= b ? *this : Edge{b, a}; }
    bool same_pair(const Edge& other) const { return normalized() == other.normalized(); }

    bool operator==(const Edge&) const = default;
};

struct NetMapVersion {
    std::string version_id;
    std::string label;
    Timestamp created_at{};
    SectorConfig sector_config;
    std::vector<Contact> contacts;
    std::vector<Edge> edges;

    const Contact* find_contact(std::string_view id) const;
    Contact* find_contact(std::string_view id);

    bool operator==(const NetMapVersion&) const = default;
};

std::vector<Violation> validate_sector_config(const SectorConfig& cfg);
std::vector<Violation> validate_version(const NetMapVersion& v);

/// Throws ValidationError when validate_version reports anything.
void require_valid(const NetMapVersion& v);

struct CanvasPoint {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const CanvasPoint&) const = default;
};

/// Polar -> canvas coordinates with the ego at (0, 0) and y growing downward,
/// so the top of the circle is (0, -canvas_radius).
CanvasPoint to_canvas(const Position& p, const SectorConfig& cfg, double canvas_radius);

/// Inverse of to_canvas. Throws OutOfDomain for the origin (reserved for the
/// ego) and for points outside the disc.
Position from_canvas(CanvasPoint point, const SectorConfig& cfg, double canvas_radius);

} // namespace sodia
