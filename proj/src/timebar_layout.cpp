#include "sodia/timebar_layout.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace sodia {

namespace {

struct Span {
    std::int64_t start;
    std::int64_t end;   // exclusive
    const LifeEvent* event;
};

} // namespace

LaneLayout layout_lane(std::span<const LifeEvent> events, Date domain_end) {
    return layout_lane(events.empty() ? std::string_view{} : std::string_view{events.front().lane_id}, events,
                       domain_end);
}

LaneLayout layout_lane(std::string_view lane_id, std::span<const LifeEvent> events, Date domain_end) {
    LaneLayout out{std::string(lane_id), {}};
    for (const auto& e : events)
        if (e.lane_id != lane_id)
            throw ValidationError({{"event:" + e.event_id, "MIXED_LANES",
                                    "lane layout needs events of lane '" + std::string(lane_id) + "' only"}});
    if (events.empty()) return out;

    // Global rank by (start, end, id).
    std::vector<Span> ranked;
    ranked.reserve(events.size());
    for (const auto& e : events) ranked.push_back({day_number(e.start), day_number(effective_end(e, domain_end)), &e});
    std::sort(ranked.begin(), ranked.end(), [](const Span& a, const Span& b) {
        return std::tie(a.start, a.end, a.event->event_id) < std::tie(b.start, b.end, b.event->event_id);
    });

    std::multimap<std::int64_t, std::size_t> starts, ends;
    std::vector<std::int64_t> boundaries;
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        starts.emplace(ranked[r].start, r);
        ends.emplace(ranked[r].end, r);
        boundaries.push_back(ranked[r].start);
        boundaries.push_back(ranked[r].end);
    }
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());

    // Fragments per rank, merged while the slot stays the same.
    std::vector<std::vector<Fragment>> per_rank(ranked.size());
    std::set<std::size_t> active;
    for (std::size_t b = 0; b + 1 < boundaries.size(); ++b) {
        const std::int64_t t0 = boundaries[b];
        const std::int64_t t1 = boundaries[b + 1];
        for (auto [it, last] = ends.equal_range(t0); it != last; ++it) active.erase(it->second);
        for (auto [it, last] = starts.equal_range(t0); it != last; ++it) active.insert(it->second);
        if (active.empty()) continue;

        const auto k = static_cast<double>(active.size());
        std::size_t slot = 0;
        for (std::size_t r : active) {
            const double y0 = static_cast<double>(slot) / k;
            const double y1 = static_cast<double>(slot + 1) / k;
            ++slot;
            auto& frags = per_rank[r];
            if (!frags.empty() && day_number(frags.back().t1) == t0 && frags.back().y0 == y0 && frags.back().y1 == y1) {
                frags.back().t1 = date_from_day_number(t1);
            } else {
                frags.push_back(Fragment{ranked[r].event->event_id, date_from_day_number(t0), date_from_day_number(t1),
                                         y0, y1});
            }
        }
    }

    for (auto& frags : per_rank)
        for (auto& f : frags) out.fragments.push_back(std::move(f));
    return out;
}

std::vector<LaneLayout> layout_all(const TimeBar& t) {
    require_valid(t);
    std::vector<LaneLayout> out;
    for (const auto& lane : t.ordered_lanes()) {
        std::vector<LifeEvent> lane_events;
        for (const auto& e : t.events)
            if (e.lane_id == lane.lane_id) lane_events.push_back(e);
        out.push_back(layout_lane(lane.lane_id, lane_events, t.domain_end));
    }
    return out;
}

} // namespace sodia
