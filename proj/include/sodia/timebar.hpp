#pragma once

#include "sodia/date.hpp"
#include "sodia/errors.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sodia {

struct Lane {
    std::string lane_id;
    std::string label;
    bool standard = false;
    std::int64_t order_index = 0;

    bool operator==(const Lane&) const = default;
};

struct StandardLane {
    std::string_view id;
    std::string_view label;
};

/// The six standardized swim lanes, top to bottom.
inline constexpr std::array<StandardLane, 6> kStandardLanes{{
    {"family", "Family"},
    {"housing", "Housing"},
    {"education", "Education"},
    {"work", "Work"},
    {"health", "Health"},
    {"treatment_help", "Treatment/Help"},
}};

std::vector<Lane> standard_lanes();

/// An interval event in one lane. `end` empty means ongoing (rendered up to the
/// bar's domain_end). Intervals are half-open [start, end); an event whose end
/// equals its start is a point event and covers one day.
struct LifeEvent {
    std::string event_id;
    std::string lane_id;
    Date start{};
    std::optional<Date> end;
    std::string title;
    std::string note;
    std::optional<std::string> emoji;

    bool operator==(const LifeEvent&) const = default;
};

struct TimeBar {
    Date birth_date{};
    Date domain_end{};
    std::vector<Lane> lanes;
    std::vector<LifeEvent> events;

    const Lane* find_lane(std::string_view id) const;
    const LifeEvent* find_event(std::string_view id) const;

    /// Lanes sorted by order_index.
    std::vector<Lane> ordered_lanes() const;

    bool operator==(const TimeBar&) const = default;
};

/// A fresh bar with the six standard lanes and no events.
TimeBar make_timebar(Date birth_date, Date domain_end);

/// End of the event's covered interval (exclusive): OPEN clamps to domain_end
/// and point events extend one day.
Date effective_end(const LifeEvent& e, Date domain_end);

std::vector<Violation> validate_timebar(const TimeBar& t);
void require_valid(const TimeBar& t);

struct AxisTick {
    Date date{};
    std::int64_t year = 0;
    std::int64_t age = 0;

    bool operator==(const AxisTick&) const = default;
};

/// One tick per Jan 1 in (birth_date, domain_end], labelled with the calendar
/// year and the completed years of age on that day.
std::vector<AxisTick> axis_ticks(const TimeBar& t);

// Lane editing. Standard lanes are fixed; these throw Unprocessable when asked
// to touch one, and InvalidReference for unknown ids.

TimeBar add_custom_lane(TimeBar t, std::string lane_id, std::string label);
TimeBar rename_lane(TimeBar t, std::string_view lane_id, std::string label);
/// Refuses while the lane still holds events.
TimeBar remove_lane(TimeBar t, std::string_view lane_id);

} // namespace sodia
