#pragma once

#include "sodia/netmap.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sodia {

/// Geometry is in normalized canvas space (unit disc).
struct LayoutParams {
    double mark_radius = 0.03;
    double radius_tolerance = 0.02;   // max outward radial nudge per contact

    double min_separation() const { return 2.0 * mark_radius; }

    bool operator==(const LayoutParams&) const = default;
};

/// Throws OutOfDomain unless 0 < mark_radius < 0.5 and 0 <= tolerance < 0.1.
void require_valid(const LayoutParams& p);

using ContactPair = std::pair<std::string, std::string>;

struct LayoutSuggestion {
    std::map<std::string, Position> moves;
    std::vector<ContactPair> unresolved;

    bool operator==(const LayoutSuggestion&) const = default;
};

/// Pairs of contacts whose marks overlap (distance < min_separation), each pair
/// ordered (smaller id first), list sorted lexicographically.
std::vector<ContactPair> collisions(const NetMapVersion& v, const LayoutParams& p);

/// Groups contacts of one sector into radial bands. Contacts are sorted by
/// (radius, display_name, contact_id) and a new band opens whenever a radius
/// reaches the band's first radius + min_separation, so every pair inside a
/// band differs by less than min_separation.
std::vector<std::vector<const Contact*>> radial_bands(std::span<const Contact* const> sector_contacts,
                                                      double min_separation);

/// Declutter suggestion. Only bands that take part in a collision are spread
/// evenly across their wedge (angular order kept); remaining overlaps get a
/// bounded outward radial nudge; whatever is still overlapping is reported in
/// `unresolved`. Sectors never change and the version itself is not modified.
LayoutSuggestion suggest_layout(const NetMapVersion& v, const LayoutParams& p);

/// Returns a copy of v with the suggested positions applied.
NetMapVersion apply_suggestion(const NetMapVersion& v, const LayoutSuggestion& s);

} // namespace sodia
