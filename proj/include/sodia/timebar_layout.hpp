#pragma once

#include "sodia/timebar.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sodia {

/// A piece of an event's rectangle: dates [t0, t1) and a vertical slice
/// [y0, y1) of the lane height (0 = lane top).
struct Fragment {
    std::string event_id;
    Date t0{};
    Date t1{};
    double y0 = 0.0;
    double y1 = 1.0;

    bool operator==(const Fragment&) const = default;
};

struct LaneLayout {
    std::string lane_id;
    std::vector<Fragment> fragments;

    bool operator==(const LaneLayout&) const = default;
};

/// Resource-split layout of one lane. Every event gets a global rank from
/// (start, end, event_id); in each elementary time segment with k active
/// events, the active events in rank order take slots [i/k, (i+1)/k) top to
/// bottom. Fragments are ordered by (rank, t0). Throws ValidationError when
/// the events do not all share one lane.
LaneLayout layout_lane(std::span<const LifeEvent> events, Date domain_end);
LaneLayout layout_lane(std::string_view lane_id, std::span<const LifeEvent> events, Date domain_end);

/// One LaneLayout per lane, in lane order.
std::vector<LaneLayout> layout_all(const TimeBar& t);

} // namespace sodia
