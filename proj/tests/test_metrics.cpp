#include "sodia/metrics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace sodia;
using namespace sodia::testing;

namespace {

NetMapVersion four_humans_two_edges()
{
    NetMapVersion v;
    v.version_id = "v1";
    v.sector_config = sectors(4);
    v.contacts = {human("A", "s0", 0.2, 0.1), human("B", "s0", 0.4, 0.5), human("C", "s1", 0.6, 0.5),
                  human("D", "s2", 0.8, 0.5)};
    v.edges = {{"A", "B"}, {"B", "C"}};
    return v;
}

} // namespace

TEST(Metrics, empty_version)
{
    NetMapVersion v;
    v.version_id = "v1";
    v.sector_config = default_sector_config();
    const auto r = compute_metrics(v);
    EXPECT_EQ(r.network_size, 0);
    EXPECT_EQ(r.non_human_count, 0);
    EXPECT_FALSE(r.mean_closeness);
    EXPECT_FALSE(r.alter_density);
    EXPECT_EQ(r.occupied_sector_fraction, 0.0);
    EXPECT_EQ(r.per_sector_counts.size(), 6u);
}

TEST(Metrics, non_human_contacts_are_not_counted)
{
    NetMapVersion v;
    v.version_id = "v1";
    v.sector_config = sectors(2);
    v.contacts = {human("a", "s0", 0.5, 0.1), human("b", "s0", 0.5, 0.3), human("c", "s1", 0.5, 0.3),
                  human("rex", "s1", 0.1, 0.9)};
    v.contacts[3].is_human = false;
    const auto r = compute_metrics(v);
    EXPECT_EQ(r.network_size, 3);
    EXPECT_EQ(r.non_human_count, 1);
    EXPECT_EQ(r.per_sector_counts.at("s1"), 1);
}

TEST(Metrics, density_and_isolates_match_pair_enumeration)
{
    const auto v = four_humans_two_edges();
    const auto r = compute_metrics(v);
    // C(4,2) = 6 pairs, 2 linked; D has no tie.
    ASSERT_TRUE(r.alter_density);
    EXPECT_DOUBLE_EQ(*r.alter_density, 2.0 / 6.0);
    EXPECT_EQ(r.isolated_alter_count, 1);
    EXPECT_DOUBLE_EQ(r.occupied_sector_fraction, 0.75);
    ASSERT_TRUE(r.mean_closeness);
    EXPECT_DOUBLE_EQ(*r.mean_closeness, (0.8 + 0.6 + 0.4 + 0.2) / 4.0);
    EXPECT_EQ(r, oracle_metrics(v));
}

TEST(Metrics, gender_groups_are_trimmed_and_lower_cased)
{
    auto v = four_humans_two_edges();
    v.contacts[0].gender = " Female";
    v.contacts[1].gender = "female ";
    v.contacts[2].gender = "   ";
    const auto r = compute_metrics(v);
    EXPECT_EQ(r.gender_counts.at("female"), 2);
    EXPECT_EQ(r.gender_counts.at("unspecified"), 2);
}

TEST(Metrics, density_bounds)
{
    NetMapVersion v;
    v.version_id = "v1";
    v.sector_config = sectors(3);
    for (int i = 0; i < 5; ++i) v.contacts.push_back(human(padded("c", i), "s0", 0.5, 0.1 * i));
    EXPECT_EQ(*compute_metrics(v).alter_density, 0.0);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) v.edges.push_back({v.contacts[i].contact_id, v.contacts[j].contact_id});
    EXPECT_EQ(*compute_metrics(v).alter_density, 1.0);
    EXPECT_EQ(compute_metrics(v).isolated_alter_count, 0);
}

TEST(Metrics, closeness_increases_when_a_contact_moves_inward)
{
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto v = random_version(rng, 12, 0.0);
        if (v.contacts.empty()) continue;
        const auto before = compute_metrics(v);
        auto& c = v.contacts[rng() % v.contacts.size()];
        c.position.radius *= uniform(rng, 0.1, 0.9);
        EXPECT_GT(*compute_metrics(v).mean_closeness, *before.mean_closeness);
    }
}

TEST(Metrics, invalid_version_is_rejected_with_violations)
{
    auto v = four_humans_two_edges();
    v.contacts[0].display_name = "";
    try {
        compute_metrics(v);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.violations().size(), 1u);
        EXPECT_EQ(e.violations()[0].rule, "EMPTY_NAME");
    }
}

TEST(Metrics, matches_brute_force_oracle_on_random_versions)
{
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto v = random_version(rng, 12);
        ASSERT_EQ(compute_metrics(v), oracle_metrics(v)) << "trial " << trial;
    }
}

TEST(MetricsDelta, identical_reports_have_empty_delta)
{
    const auto r = compute_metrics(four_humans_two_edges());
    EXPECT_TRUE(metrics_delta(r, r).empty());
}

TEST(MetricsDelta, size_change_only)
{
    MetricsReport a, b;
    a.network_size = 3;
    b.network_size = 4;
    const auto d = metrics_delta(a, b);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d.at("network_size").first, MetricValue{std::int64_t{3}});
    EXPECT_EQ(d.at("network_size").second, MetricValue{std::int64_t{4}});
}

TEST(MetricsDelta, density_becomes_absent_below_two_humans)
{
    auto v = four_humans_two_edges();
    const auto before = compute_metrics(v);
    v.contacts.resize(1);
    v.edges.clear();
    const auto after = compute_metrics(v);
    // Both sides recomputed by the independent oracle.
    EXPECT_EQ(before, oracle_metrics(four_humans_two_edges()));
    EXPECT_EQ(after, oracle_metrics(v));

    const auto d = metrics_delta(before, after);
    EXPECT_EQ(d.at("alter_density").first, MetricValue{2.0 / 6.0});
    EXPECT_EQ(d.at("alter_density").second, MetricValue{std::monostate{}});
    EXPECT_EQ(d.at("network_size").first, MetricValue{std::int64_t{4}});
    EXPECT_EQ(d.at("network_size").second, MetricValue{std::int64_t{1}});
    EXPECT_FALSE(d.contains("non_human_count"));
}

TEST(ComputeMetrics, contact_order_does_not_matter)
{
    Rng rng(77);
    for (int i = 0; i < 300; ++i) {
        auto v = random_version(rng, 25);
        const auto before = compute_metrics(v);
        std::shuffle(v.contacts.begin(), v.contacts.end(), rng);
        std::shuffle(v.edges.begin(), v.edges.end(), rng);
        ASSERT_EQ(compute_metrics(v), before) << i;
    }
}
