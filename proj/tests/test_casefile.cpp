#include "sodia/casefile.hpp"

#include "sodia/json_io.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace sodia;
using namespace sodia::testing;

namespace {

CaseFile waltraud()
{
    CaseFile c;
    c.case_id = "waltraud";
    c.client = {"Waltraud", "female", ymd(1943, 3, 2)};   // 81 in 2024
    return c;
}

NetMapVersion five_contacts()
{
    NetMapVersion v;
    v.version_id = "v1";
    v.label = "Intake";
    v.created_at = fixed_time();
    v.sector_config = default_sector_config();
    v.contacts = {human("c1", "family", 0.2, 0.3), human("c2", "family", 0.4, 0.6), human("c3", "friends", 0.5, 0.5),
                  human("c4", "neighbors", 0.8, 0.1), human("c5", "professional", 0.9, 0.9)};
    v.contacts[4].is_human = false;
    v.edges = {{"c1", "c2"}, {"c3", "c2"}};
    return v;
}

} // namespace

TEST(Save, minimal_case_round_trips_byte_identically)
{
    const auto c = waltraud();
    const std::string bytes = save(c);
    EXPECT_EQ(bytes.back(), '\n');
    const auto loaded = load(bytes);
    EXPECT_EQ(loaded, c);
    EXPECT_EQ(save(loaded), bytes);
    EXPECT_EQ(oracle_age(*c.client.birth_date, ymd(2024, 12, 1)), 81);
}

TEST(Save, keys_are_sorted_and_dates_iso)
{
    auto c = waltraud();
    c = new_version(c, std::nullopt, "first", fixed_time());
    const std::string bytes = save(c);
    EXPECT_NE(bytes.find("\"birth_date\": \"1943-03-02\""), std::string::npos);
    EXPECT_NE(bytes.find("\"created_at\": \"2024-05-01T09:00:00Z\""), std::string::npos);
    EXPECT_LT(bytes.find("\"case_id\""), bytes.find("\"client\""));
    EXPECT_LT(bytes.find("\"netmap\""), bytes.find("\"revision\""));
    EXPECT_LT(bytes.find("\"revision\""), bytes.find("\"schema_version\""));
}

TEST(Save, invalid_cases_are_refused)
{
    auto c = waltraud();
    c.client.display_name = "";
    EXPECT_THROW(save(c), ValidationError);
}

TEST(Load, errors_are_distinguished)
{
    const std::string bytes = save(waltraud());
    EXPECT_THROW(load(bytes.substr(0, bytes.size() / 2)), MalformedDocument);
    EXPECT_THROW(load("[]"), MalformedDocument);
    EXPECT_THROW(load(R"({"schema_version": 1})"), MalformedDocument);

    auto doc = parse_json(bytes);
    doc["schema_version"] = 2;
    EXPECT_THROW(load(doc.dump()), UnsupportedSchema);

    doc = parse_json(bytes);
    doc["client"]["display_name"] = " ";
    try {
        load(doc.dump());
        FAIL() << "expected InvalidDocument";
    } catch (const InvalidDocument& e) {
        EXPECT_EQ(e.violations().at(0).rule, "EMPTY_NAME");
    }

    doc = parse_json(bytes);
    doc["revision"] = "1";
    EXPECT_THROW(load(doc.dump()), MalformedDocument);
}

TEST(Load, accepts_missing_optional_keys)
{
    auto doc = parse_json(save(waltraud()));
    doc["client"].erase("gender");
    doc.erase("timebar");
    const auto c = load(doc.dump());
    EXPECT_FALSE(c.client.gender);
    EXPECT_FALSE(c.timebar);
}

TEST(Load, timebar_birth_must_match_client)
{
    auto c = waltraud();
    c.timebar = make_timebar(ymd(1943, 3, 2), ymd(2024, 12, 31));
    EXPECT_NO_THROW(save(c));
    c.timebar->birth_date = ymd(1943, 3, 3);
    EXPECT_THROW(save(c), ValidationError);
}

TEST(Save, random_cases_round_trip)
{
    Rng rng(500);
    for (int i = 0; i < 500; ++i) {
        const auto c = random_case(rng);
        ASSERT_TRUE(validate_case(c).empty()) << i << ": " << validate_case(c)[0].entity << " " << validate_case(c)[0].rule;
        const std::string bytes = save(c);
        const auto back = load(bytes);
        ASSERT_EQ(back, c) << i;
        ASSERT_EQ(save(back), bytes) << i;
    }
}

TEST(NewVersion, blank_version_on_empty_case)
{
    const auto c = waltraud();
    const auto next = new_version(c, std::nullopt, "Intake", fixed_time());
    ASSERT_EQ(next.versions.size(), 1u);
    EXPECT_TRUE(next.versions[0].contacts.empty());
    EXPECT_EQ(next.versions[0].sector_config, c.sector_config);
    EXPECT_EQ(next.revision, c.revision + 1);
    EXPECT_TRUE(c.versions.empty());
}

TEST(NewVersion, clone_differs_only_in_identity_fields)
{
    auto c = waltraud();
    c.versions.push_back(five_contacts());
    const auto later = fixed_time() + std::chrono::hours{72};
    const auto next = new_version(c, std::string("v1"), "Follow-up", later);
    ASSERT_EQ(next.versions.size(), 2u);
    const auto& src = next.versions[0];
    const auto& copy = next.versions[1];
    EXPECT_NE(copy.version_id, src.version_id);
    EXPECT_EQ(copy.label, "Follow-up");
    EXPECT_EQ(copy.created_at, later);
    EXPECT_EQ(copy.sector_config, src.sector_config);
    EXPECT_EQ(copy.contacts, src.contacts);
    EXPECT_EQ(copy.edges, src.edges);
}

TEST(NewVersion, editing_the_clone_leaves_the_source_alone)
{
    auto c = waltraud();
    c.versions.push_back(five_contacts());
    auto next = new_version(c, std::string("v1"), "Follow-up", fixed_time());
    const std::string vid = next.versions[1].version_id;
    auto moved = next.versions[1].contacts[0];
    moved.position.radius = 0.9;
    next = update_contact(next, vid, moved);
    EXPECT_EQ(next.versions[0], five_contacts());
    EXPECT_EQ(next.find_version(vid)->contacts[0].position.radius, 0.9);
}

TEST(NewVersion, unknown_source_is_an_error)
{
    EXPECT_THROW(new_version(waltraud(), std::string("nope"), "x", fixed_time()), InvalidReference);
}

TEST(Mutations, each_step_advances_revision_by_one)
{
    auto c = waltraud();
    std::int64_t rev = c.revision;
    auto step = [&](CaseFile next) {
        EXPECT_EQ(next.revision, rev + 1);
        rev = next.revision;
        c = std::move(next);
    };
    step(new_version(c, std::nullopt, "Intake", fixed_time()));
    step(add_contact(c, "v1", human("a", "family", 0.5, 0.5)));
    step(add_contact(c, "v1", human("b", "friends", 0.5, 0.5)));
    step(add_edge(c, "v1", {"a", "b"}));
    step(remove_edge(c, "v1", {"b", "a"}));
    step(remove_contact(c, "v1", "b"));
    step(set_timebar(c, make_timebar(ymd(1943, 3, 2), ymd(2024, 12, 31))));
    LifeEvent e;
    e.event_id = "e1";
    e.lane_id = "housing";
    e.start = ymd(1970, 1, 1);
    e.title = "Flat in Vienna";
    step(add_event(c, e));
    e.note = "with garden";
    step(update_event(c, e));
    step(add_lane(c, "pets", "Pets"));
    step(rename_lane(c, "pets", "Animals"));
    step(remove_event(c, "e1"));
    step(remove_lane(c, "pets"));
    EXPECT_EQ(rev, 13);
}

TEST(Mutations, invalid_results_are_rejected_without_side_effects)
{
    auto c = new_version(waltraud(), std::nullopt, "Intake", fixed_time());
    auto bad = human("x", "family", 0.5, 0.5);
    bad.display_name = "";
    EXPECT_THROW(add_contact(c, "v1", bad), ValidationError);
    EXPECT_THROW(add_contact(c, "v9", human("x", "family", 0.5, 0.5)), InvalidReference);
    EXPECT_THROW(add_edge(c, "v1", {"x", "y"}), ValidationError);
    EXPECT_THROW(remove_lane(c, "family"), InvalidReference);   // no time bar yet
    EXPECT_EQ(c.revision, 1);
    EXPECT_TRUE(c.versions[0].contacts.empty());

    c = set_timebar(c, make_timebar(ymd(1943, 3, 2), ymd(2024, 12, 31)));
    EXPECT_THROW(remove_lane(c, "family"), Unprocessable);
}

TEST(Diff, identical_versions_have_empty_diff)
{
    EXPECT_TRUE(diff_versions(five_contacts(), five_contacts()).empty());
}

TEST(Diff, single_addition)
{
    const auto a = five_contacts();
    auto b = a;
    b.contacts.push_back(human("x", "family", 0.3, 0.3));
    const auto d = diff_versions(a, b);
    ASSERT_EQ(d.added.size(), 1u);
    EXPECT_EQ(d.added[0].contact_id, "x");
    EXPECT_TRUE(d.removed.empty() && d.moved.empty() && d.metadata_changed.empty() && d.edges_added.empty() &&
                d.edges_removed.empty());
}

TEST(Diff, radius_change_is_a_move)
{
    const auto a = five_contacts();
    auto b = a;
    b.contacts[3].position.radius = 0.5;
    const auto d = diff_versions(a, b);
    ASSERT_EQ(d.moved.size(), 1u);
    EXPECT_EQ(d.moved[0].contact_id, "c4");
    EXPECT_EQ(d.moved[0].before.radius, 0.8);
    EXPECT_EQ(d.moved[0].after.radius, 0.5);
    EXPECT_TRUE(d.metadata_changed.empty());
}

TEST(Diff, metadata_and_edges_are_ordered)
{
    const auto a = five_contacts();
    auto b = a;
    b.contacts[1].role = "brother";
    b.contacts[1].age = 40;
    b.contacts[0].gender = "male";
    b.edges = {{"c2", "c1"}, {"c3", "c1"}};
    const auto d = diff_versions(a, b);
    ASSERT_EQ(d.metadata_changed.size(), 3u);
    EXPECT_EQ(d.metadata_changed[0].contact_id, "c1");
    EXPECT_EQ(d.metadata_changed[1].field, "age");
    EXPECT_EQ(d.metadata_changed[2].field, "role");
    EXPECT_EQ(d.edges_added, (std::vector<Edge>{{"c1", "c3"}}));
    EXPECT_EQ(d.edges_removed, (std::vector<Edge>{{"c2", "c3"}}));
}

TEST(Diff, patch_reproduces_target_on_random_pairs)
{
    Rng rng(31337);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_version(rng, 10);
        const auto b = random_successor(rng, a);
        ASSERT_TRUE(validate_version(b).empty());
        const auto d = diff_versions(a, b);
        ASSERT_EQ(canonical_order(apply_diff(a, d)), canonical_order(b)) << i;
        ASSERT_TRUE(diff_versions(a, a).empty());

        // JSON form carries the same information.
        const auto d2 = version_diff_from_json(parse_json(canonical(Json(d))));
        ASSERT_EQ(d2, d);
    }
}
