#include "sodia/netmap.hpp"

#include "sodia/text.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <unordered_map>

namespace sodia {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angular fractions this close to a wedge boundary snap onto it so that
// sector membership survives the atan2 round trip.
constexpr double kBoundarySnap = 1e-12;

// Points at most this far outside the disc (relative) are clamped to radius 1.
constexpr double kRimTolerance = 1e-9;

} // namespace

std::optional<std::size_t> SectorConfig::index_of(std::string_view sector_id) const {
    for (std::size_t i = 0; i < sectors.size(); ++i)
        if (sectors[i].id == sector_id) return i;
    return std::nullopt;
}

double SectorConfig::wedge_angle() const {
    return sectors.empty() ? kTwoPi : kTwoPi / static_cast<double>(sectors.size());
}

SectorConfig default_sector_config() {
    return SectorConfig{{
        {"family", "Family"},
        {"relatives", "Relatives"},
        {"friends", "Friends & acquaintances"},
        {"work_school", "Work / school"},
        {"neighbors", "Neighbors"},
        {"professional", "Professional helpers"},
    }};
}

const Contact* NetMapVersion::find_contact(std::string_view id) const {
    for (const auto& c : contacts)
        if (c.contact_id == id) return &c;
    return nullptr;
}

Contact* NetMapVersion::find_contact(std::string_view id) {
    for (auto& c : contacts)
        if (c.contact_id == id) return &c;
    return nullptr;
}

std::vector<Violation> validate_sector_config(const SectorConfig& cfg) {
    std::vector<Violation> out;
    if (cfg.sectors.empty()) out.push_back({"sector_config", "NO_SECTORS", "at least one sector is required"});

    std::set<std::string> seen;
    for (const auto& s : cfg.sectors) {
        const std::string entity = "sector:" + s.id;
        if (s.id.empty()) out.push_back({entity, "EMPTY_ID", "sector id is empty"});
        if (!seen.insert(s.id).second) out.push_back({entity, "DUPLICATE_SECTOR_ID", "sector id used twice"});
        if (text::is_blank(s.label)) out.push_back({entity, "EMPTY_SECTOR_LABEL", "sector label is empty"});
    }
    return out;
}

std::vector<Violation> validate_version(const NetMapVersion& v) {
    std::vector<Violation> out = validate_sector_config(v.sector_config);
    if (v.version_id.empty()) out.push_back({"version", "EMPTY_ID", "version id is empty"});

    std::unordered_map<std::string, const Contact*> by_id;
    for (const auto& c : v.contacts) {
        const std::string entity = "contact:" + c.contact_id;
        if (c.contact_id.empty()) out.push_back({entity, "EMPTY_ID", "contact id is empty"});
        if (!by_id.emplace(c.contact_id, &c).second)
            out.push_back({entity, "DUPLICATE_CONTACT_ID", "contact id used twice"});

        if (text::is_blank(c.display_name)) out.push_back({entity, "EMPTY_NAME", "display name is required"});
        if (c.age && *c.age < 0) out.push_back({entity, "NEGATIVE_AGE", "age must be >= 0"});
        if (c.emoji && !text::is_single_grapheme(*c.emoji))
            out.push_back({entity, "INVALID_EMOJI", "emoji must be exactly one grapheme cluster"});

        const auto& p = c.position;
        if (!(p.radius > 0.0 && p.radius <= 1.0))
            out.push_back({entity, "RADIUS_OUT_OF_RANGE", "radius must lie in (0, 1]"});
        if (!(p.angle_frac >= 0.0 && p.angle_frac < 1.0))
            out.push_back({entity, "ANGLE_OUT_OF_RANGE", "angle_frac must lie in [0, 1)"});
        if (!v.sector_config.index_of(p.sector_id))
            out.push_back({entity, "UNKNOWN_SECTOR", "sector '" + p.sector_id + "' does not exist"});
    }

    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& e : v.edges) {
        const Edge n = e.normalized();
        const std::string entity = "edge:" + n.a + "-" + n.b;
        if (e.a == e.b) {
            out.push_back({entity, "SELF_LOOP", "an edge needs two distinct contacts"});
            continue;
        }
        const auto ia = by_id.find(e.a);
        const auto ib = by_id.find(e.b);
        if (ia == by_id.end() || ib == by_id.end()) {
            out.push_back({entity, "UNKNOWN_ENDPOINT", "edge endpoint does not resolve"});
        } else if (!ia->second->is_human || !ib->second->is_human) {
            out.push_back({entity, "NON_HUMAN_EDGE", "non-human contacts cannot have ties"});
        }
        if (!pairs.emplace(n.a, n.b).second) out.push_back({entity, "DUPLICATE_EDGE", "edge listed twice"});
    }
    return out;
}

void require_valid(const NetMapVersion& v) {
    auto violations = validate_version(v);
    if (!violations.empty()) throw ValidationError(std::move(violations));
}

CanvasPoint to_canvas(const Position& p, const SectorConfig& cfg, double canvas_radius) {
    if (!(canvas_radius > 0.0)) throw OutOfDomain("canvas radius must be positive");
    const auto index = cfg.index_of(p.sector_id);
    if (!index) throw InvalidReference("unknown sector '" + p.sector_id + "'");

    const double theta = (static_cast<double>(*index) + p.angle_frac) * cfg.wedge_angle();
    const double r = canvas_radius * p.radius;
    return {r * std::sin(theta), -r * std::cos(theta)};
}

Position from_canvas(CanvasPoint point, const SectorConfig& cfg, double canvas_radius) {
    if (!(canvas_radius > 0.0)) throw OutOfDomain("canvas radius must be positive");
    if (cfg.sectors.empty()) throw InvalidReference("sector configuration is empty");
    if (point.x == 0.0 && point.y == 0.0) throw OutOfDomain("ego reserved: the origin cannot hold a contact");

    double radius = std::hypot(point.x, point.y) / canvas_radius;
    if (!(radius > 0.0)) throw OutOfDomain("ego reserved: the origin cannot hold a contact");
    if (!(radius <= 1.0 + kRimTolerance)) throw OutOfDomain("point lies outside the map");
    radius = std::min(radius, 1.0);

    double theta = std::atan2(point.x, -point.y);
    if (theta < 0.0) theta += kTwoPi;

    const auto n = cfg.sectors.size();
    const double u = theta / cfg.wedge_angle();
    auto index = static_cast<std::size_t>(std::floor(u));
    double frac = u - std::floor(u);
    if (frac > 1.0 - kBoundarySnap) {
        ++index;
        frac = 0.0;
    } else if (frac < kBoundarySnap) {
        frac = 0.0;
    }
    index %= n;
    return Position{cfg.sectors[index].id, radius, frac};
}

} // namespace sodia
