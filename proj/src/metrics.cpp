#include "sodia/metrics.hpp"

#include "sodia/text.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace sodia {

MetricsReport compute_metrics(const NetMapVersion& v) {
    require_valid(v);

    MetricsReport r;
    for (const auto& s : v.sector_config.sectors) r.per_sector_counts[s.id] = 0;

    std::set<std::string_view> humans;
    std::vector<double> closeness;
    for (const auto& c : v.contacts) {
        if (!c.is_human) {
            ++r.non_human_count;
            continue;
        }
        ++r.network_size;
        humans.insert(c.contact_id);
        ++r.per_sector_counts[c.position.sector_id];
        closeness.push_back(1.0 - c.position.radius);

        std::string gender = c.gender ? text::to_lower(text::trim(*c.gender)) : std::string{};
        if (gender.empty()) gender = kUnspecifiedGender;
        ++r.gender_counts[gender];
    }

    std::int64_t occupied = 0;
    for (const auto& [id, n] : r.per_sector_counts)
        if (n > 0) ++occupied;
    r.occupied_sector_fraction =
        static_cast<double>(occupied) / static_cast<double>(v.sector_config.sectors.size());

    // Summed in sorted order so the mean does not depend on contact order.
    std::sort(closeness.begin(), closeness.end());
    const double closeness_sum = std::accumulate(closeness.begin(), closeness.end(), 0.0);
    if (r.network_size > 0) r.mean_closeness = closeness_sum / static_cast<double>(r.network_size);

    // Validation already rejects ties to non-humans; the filter keeps the
    // definition local to this function.
    std::int64_t human_edges = 0;
    std::set<std::string_view> connected;
    for (const auto& e : v.edges) {
        if (!humans.contains(e.a) || !humans.contains(e.b)) continue;
        ++human_edges;
        connected.insert(e.a);
        connected.insert(e.b);
    }
    if (r.network_size >= 2) {
        const double pairs = static_cast<double>(r.network_size) * static_cast<double>(r.network_size - 1) / 2.0;
        r.alter_density = static_cast<double>(human_edges) / pairs;
    }
    r.isolated_alter_count = r.network_size - static_cast<std::int64_t>(connected.size());
    return r;
}

namespace {

MetricValue value_of(const std::optional<double>& x) {
    if (x) return *x;
    return std::monostate{};
}

template <typename T>
void compare(MetricsDelta& out, const char* name, const T& a, const T& b) {
    if (a == b) return;
    if constexpr (std::is_same_v<T, std::optional<double>>)
        out.emplace(name, std::pair{value_of(a), value_of(b)});
    else
        out.emplace(name, std::pair{MetricValue{a}, MetricValue{b}});
}

} // namespace

MetricsDelta metrics_delta(const MetricsReport& a, const MetricsReport& b) {
    MetricsDelta d;
    compare(d, "network_size", a.network_size, b.network_size);
    compare(d, "per_sector_counts", a.per_sector_counts, b.per_sector_counts);
    compare(d, "occupied_sector_fraction", a.occupied_sector_fraction, b.occupied_sector_fraction);
    compare(d, "mean_closeness", a.mean_closeness, b.mean_closeness);
    compare(d, "alter_density", a.alter_density, b.alter_density);
    compare(d, "isolated_alter_count", a.isolated_alter_count, b.isolated_alter_count);
    compare(d, "gender_counts", a.gender_counts, b.gender_counts);
    compare(d, "non_human_count", a.non_human_count, b.non_human_count);
    return d;
}

} // namespace sodia
