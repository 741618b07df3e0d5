#include "sodia/timebar.hpp"

#include "sodia/text.hpp"

#include <algorithm>
#include <set>

namespace sodia {

std::vector<Lane> standard_lanes() {
    std::vector<Lane> out;
    for (std::size_t i = 0; i < kStandardLanes.size(); ++i)
        out.push_back(Lane{std::string(kStandardLanes[i].id), std::string(kStandardLanes[i].label), true,
                           static_cast<std::int64_t>(i)});
    return out;
}

const Lane* TimeBar::find_lane(std::string_view id) const {
    for (const auto& l : lanes)
        if (l.lane_id == id) return &l;
    return nullptr;
}

const LifeEvent* TimeBar::find_event(std::string_view id) const {
    for (const auto& e : events)
        if (e.event_id == id) return &e;
    return nullptr;
}

std::vector<Lane> TimeBar::ordered_lanes() const {
    std::vector<Lane> out = lanes;
    std::stable_sort(out.begin(), out.end(),
                     [](const Lane& a, const Lane& b) { return a.order_index < b.order_index; });
    return out;
}

TimeBar make_timebar(Date birth_date, Date domain_end) {
    return TimeBar{birth_date, domain_end, standard_lanes(), {}};
}

Date effective_end(const LifeEvent& e, Date domain_end) {
    const Date end = e.end.value_or(domain_end);
    return day_number(end) > day_number(e.start) ? end : add_days(e.start, 1);
}

std::vector<Violation> validate_timebar(const TimeBar& t) {
    std::vector<Violation> out;
    if (!t.birth_date.ok()) out.push_back({"timebar", "INVALID_DATE", "birth date is not a calendar date"});
    if (!t.domain_end.ok()) out.push_back({"timebar", "INVALID_DATE", "domain end is not a calendar date"});
    if (t.domain_end < t.birth_date) out.push_back({"timebar", "DOMAIN_BEFORE_BIRTH", "domain ends before birth"});

    // Lanes: the six standard lanes first, in fixed order, custom lanes below.
    std::set<std::string> lane_ids;
    std::set<std::int64_t> order_indices;
    std::vector<const Lane*> standard;
    std::int64_t max_standard_order = -1;
    for (const auto& l : t.lanes) {
        const std::string entity = "lane:" + l.lane_id;
        if (l.lane_id.empty()) out.push_back({entity, "EMPTY_ID", "lane id is empty"});
        if (!lane_ids.insert(l.lane_id).second) out.push_back({entity, "DUPLICATE_LANE_ID", "lane id used twice"});
        if (!order_indices.insert(l.order_index).second)
            out.push_back({entity, "DUPLICATE_ORDER_INDEX", "two lanes share an order index"});
        if (text::is_blank(l.label)) out.push_back({entity, "EMPTY_LANE_LABEL", "lane label is empty"});
        if (l.standard) {
            standard.push_back(&l);
            max_standard_order = std::max(max_standard_order, l.order_index);
        }
    }
    std::stable_sort(standard.begin(), standard.end(),
                     [](const Lane* a, const Lane* b) { return a->order_index < b->order_index; });
    bool standard_ok = standard.size() == kStandardLanes.size();
    for (std::size_t i = 0; standard_ok && i < standard.size(); ++i)
        standard_ok = standard[i]->label == kStandardLanes[i].label;
    if (!standard_ok)
        out.push_back({"lanes", "STANDARD_LANES_INCOMPLETE",
                       "exactly the six standard lanes Family, Housing, Education, Work, Health, Treatment/Help "
                       "are required, in that order"});
    for (const auto& l : t.lanes)
        if (!l.standard && l.order_index <= max_standard_order)
            out.push_back({"lane:" + l.lane_id, "CUSTOM_LANE_ABOVE_STANDARD",
                           "custom lanes must be ordered below the standard lanes"});

    std::set<std::string> event_ids;
    for (const auto& e : t.events) {
        const std::string entity = "event:" + e.event_id;
        if (e.event_id.empty()) out.push_back({entity, "EMPTY_ID", "event id is empty"});
        if (!event_ids.insert(e.event_id).second)
            out.push_back({entity, "DUPLICATE_EVENT_ID", "event id used twice"});
        if (!lane_ids.contains(e.lane_id))
            out.push_back({entity, "UNKNOWN_LANE", "lane '" + e.lane_id + "' does not exist"});
        if (text::is_blank(e.title)) out.push_back({entity, "EMPTY_TITLE", "event title is required"});
        if (e.emoji && !text::is_single_grapheme(*e.emoji))
            out.push_back({entity, "INVALID_EMOJI", "emoji must be exactly one grapheme cluster"});
        if (!e.start.ok() || (e.end && !e.end->ok())) {
            out.push_back({entity, "INVALID_DATE", "event dates must be calendar dates"});
            continue;
        }
        if (e.end && *e.end < e.start) out.push_back({entity, "END_BEFORE_START", "event ends before it starts"});
        if (e.start < t.birth_date) out.push_back({entity, "BEFORE_BIRTH", "event starts before birth"});
        if (e.start > t.domain_end || (e.end && *e.end > t.domain_end))
            out.push_back({entity, "AFTER_DOMAIN_END", "event extends past the end of the time bar"});
    }
    return out;
}

void require_valid(const TimeBar& t) {
    auto violations = validate_timebar(t);
    if (!violations.empty()) throw ValidationError(std::move(violations));
}

std::vector<AxisTick> axis_ticks(const TimeBar& t) {
    using namespace std::chrono;
    std::vector<AxisTick> out;
    const int birth_year = static_cast<int>(t.birth_date.year());
    const bool born_jan_1 = t.birth_date.month() == January && t.birth_date.day() == day{1};
    for (int y = birth_year + 1; y <= static_cast<int>(t.domain_end.year()); ++y) {
        const Date tick{year{y}, January, day{1}};
        if (tick > t.domain_end) break;
        out.push_back(AxisTick{tick, y, y - birth_year - (born_jan_1 ? 0 : 1)});
    }
    return out;
}

namespace {

Lane& custom_lane(TimeBar& t, std::string_view lane_id) {
    for (auto& l : t.lanes) {
        if (l.lane_id != lane_id) continue;
        if (l.standard) throw Unprocessable("standard lane '" + l.label + "' cannot be changed");
        return l;
    }
    throw InvalidReference("unknown lane '" + std::string(lane_id) + "'");
}

} // namespace

TimeBar add_custom_lane(TimeBar t, std::string lane_id, std::string label) {
    std::int64_t next = 0;
    for (const auto& l : t.lanes) next = std::max(next, l.order_index + 1);
    t.lanes.push_back(Lane{std::move(lane_id), std::move(label), false, next});
    require_valid(t);
    return t;
}

TimeBar rename_lane(TimeBar t, std::string_view lane_id, std::string label) {
    custom_lane(t, lane_id).label = std::move(label);
    require_valid(t);
    return t;
}

TimeBar remove_lane(TimeBar t, std::string_view lane_id) {
    custom_lane(t, lane_id);
    for (const auto& e : t.events)
        if (e.lane_id == lane_id)
            throw Unprocessable("lane '" + std::string(lane_id) + "' still holds events; move or delete them first");
    std::erase_if(t.lanes, [&](const Lane& l) { return l.lane_id == lane_id; });
    return t;
}

} // namespace sodia
