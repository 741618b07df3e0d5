#include "sodia/timebar_layout.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace sodia;
using namespace sodia::testing;

namespace {

LifeEvent job(std::string id, Date start, std::optional<Date> end, std::string lane = "work")
{
    LifeEvent e;
    e.event_id = std::move(id);
    e.lane_id = std::move(lane);
    e.start = start;
    e.end = end;
    e.title = "Job " + e.event_id;
    return e;
}

const Date kEnd = ymd(2024, 12, 31);

} // namespace

TEST(LayoutLane, single_event_fills_the_lane)
{
    const std::vector<LifeEvent> events{job("A", ymd(2000, 1, 1), ymd(2010, 1, 1))};
    const auto l = layout_lane(events, kEnd);
    EXPECT_EQ(l.lane_id, "work");
    ASSERT_EQ(l.fragments.size(), 1u);
    EXPECT_EQ(l.fragments[0], (Fragment{"A", ymd(2000, 1, 1), ymd(2010, 1, 1), 0.0, 1.0}));
}

TEST(LayoutLane, overlapping_jobs_take_half_the_height)
{
    const std::vector<LifeEvent> events{job("B", ymd(2005, 1, 1), ymd(2015, 1, 1)),
                                        job("A", ymd(2000, 1, 1), ymd(2010, 1, 1))};
    const auto l = layout_lane(events, kEnd);
    const std::vector<Fragment> expected{
        {"A", ymd(2000, 1, 1), ymd(2005, 1, 1), 0.0, 1.0},
        {"A", ymd(2005, 1, 1), ymd(2010, 1, 1), 0.0, 0.5},
        {"B", ymd(2005, 1, 1), ymd(2010, 1, 1), 0.5, 1.0},
        {"B", ymd(2010, 1, 1), ymd(2015, 1, 1), 0.0, 1.0},
    };
    EXPECT_EQ(l.fragments, expected);
    EXPECT_EQ(check_lane_layout(events, kEnd, l), "");
}

TEST(LayoutLane, three_simultaneous_events_stack_by_rank)
{
    const std::vector<LifeEvent> events{job("c", ymd(2000, 1, 1), ymd(2001, 1, 1)),
                                        job("a", ymd(2000, 1, 1), ymd(2001, 1, 1)),
                                        job("b", ymd(2000, 1, 1), ymd(2001, 1, 1))};
    const auto l = layout_lane(events, kEnd);
    ASSERT_EQ(l.fragments.size(), 3u);
    EXPECT_EQ(l.fragments[0].event_id, "a");
    EXPECT_EQ(l.fragments[1].event_id, "b");
    EXPECT_EQ(l.fragments[2].event_id, "c");
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(l.fragments[i].y0, double(i) / 3.0);
        EXPECT_EQ(l.fragments[i].y1, double(i + 1) / 3.0);
    }
    EXPECT_EQ(check_lane_layout(events, kEnd, l), "");
}

TEST(LayoutLane, later_event_moves_up_when_earlier_one_ends)
{
    // A ends first; C (rank after B) fills the freed space without crossing B.
    const std::vector<LifeEvent> events{job("A", ymd(2000, 1, 1), ymd(2002, 1, 1)),
                                        job("B", ymd(2000, 6, 1), ymd(2006, 1, 1)),
                                        job("C", ymd(2001, 1, 1), ymd(2005, 1, 1))};
    const auto l = layout_lane(events, kEnd);
    EXPECT_EQ(check_lane_layout(events, kEnd, l), "");
}

TEST(LayoutLane, open_and_point_events)
{
    const std::vector<LifeEvent> events{job("open", ymd(2020, 1, 1), std::nullopt),
                                        job("point", ymd(2021, 3, 3), ymd(2021, 3, 3))};
    const auto l = layout_lane(events, kEnd);
    EXPECT_EQ(check_lane_layout(events, kEnd, l), "");
    Date last = ymd(1900, 1, 1);
    for (const auto& f : l.fragments)
        if (f.event_id == "open") last = std::max(last, f.t1);
    EXPECT_EQ(last, kEnd);
    bool found_point = false;
    for (const auto& f : l.fragments)
        if (f.event_id == "point") {
            found_point = true;
            EXPECT_EQ(f.t0, ymd(2021, 3, 3));
            EXPECT_EQ(f.t1, ymd(2021, 3, 4));
            EXPECT_EQ(f.y1 - f.y0, 0.5);
        }
    EXPECT_TRUE(found_point);
}

TEST(LayoutLane, back_to_back_events_do_not_share_height)
{
    const std::vector<LifeEvent> events{job("A", ymd(2000, 1, 1), ymd(2005, 1, 1)),
                                        job("B", ymd(2005, 1, 1), ymd(2010, 1, 1))};
    const auto l = layout_lane(events, kEnd);
    ASSERT_EQ(l.fragments.size(), 2u);
    EXPECT_EQ(l.fragments[0].y1, 1.0);
    EXPECT_EQ(l.fragments[1].y0, 0.0);
}

TEST(LayoutLane, mixed_lanes_are_rejected)
{
    const std::vector<LifeEvent> events{job("A", ymd(2000, 1, 1), ymd(2005, 1, 1)),
                                        job("B", ymd(2001, 1, 1), ymd(2002, 1, 1), "health")};
    EXPECT_THROW(layout_lane(events, kEnd), ValidationError);
}

TEST(LayoutLane, matches_per_day_oracle_on_random_lanes)
{
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const Date birth = ymd(2000, 1, 1);
        const Date end = add_days(birth, uniform_int(rng, 1, 900));
        auto events = random_lane(rng, 10, birth, end);
        const auto l = layout_lane("work", events, end);
        ASSERT_EQ(check_lane_layout(events, end, l), "") << "trial " << trial;

        std::shuffle(events.begin(), events.end(), rng);
        ASSERT_EQ(layout_lane("work", events, end), l) << "input order must not matter";
    }
}

TEST(LayoutAll, empty_bar_gives_six_empty_lanes)
{
    const auto layouts = layout_all(make_timebar(ymd(1975, 6, 15), kEnd));
    ASSERT_EQ(layouts.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(layouts[i].lane_id, kStandardLanes[i].id);
        EXPECT_TRUE(layouts[i].fragments.empty());
    }
}

TEST(LayoutAll, only_work_lane_is_filled)
{
    auto t = make_timebar(ymd(1975, 6, 15), kEnd);
    t.events = {job("A", ymd(2000, 1, 1), ymd(2010, 1, 1)), job("B", ymd(2005, 1, 1), ymd(2015, 1, 1))};
    const auto layouts = layout_all(t);
    for (const auto& l : layouts) EXPECT_EQ(l.fragments.empty(), l.lane_id != "work") << l.lane_id;
}

TEST(LayoutAll, random_bars_match_per_lane_oracle)
{
    Rng rng(20);
    for (int trial = 0; trial < 50; ++trial) {
        auto t = make_timebar(ymd(1990, 1, 1), ymd(1992, 12, 31));
        t = add_custom_lane(t, "custom", "Custom");
        int counter = 0;
        for (int i = 0; i < 20; ++i) {
            const auto& lane = t.lanes[rng() % t.lanes.size()];
            auto e = random_lane(rng, 1, t.birth_date, t.domain_end, lane.lane_id);
            for (auto& x : e) {
                x.event_id = padded("ev", counter++);
                t.events.push_back(x);
            }
        }
        const auto layouts = layout_all(t);
        ASSERT_EQ(layouts.size(), 7u);
        for (const auto& l : layouts) {
            std::vector<LifeEvent> lane_events;
            for (const auto& e : t.events)
                if (e.lane_id == l.lane_id) lane_events.push_back(e);
            ASSERT_EQ(check_lane_layout(lane_events, t.domain_end, l), "");
        }
    }
}
