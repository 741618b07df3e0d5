#pragma once

#include "sodia/netmap.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace sodia {

using CountMap = std::map<std::string, std::int64_t>;

/// Key metrics of one map version. Only human contacts count towards the
/// social-capital figures; non-human contacts (pets etc.) are only tallied in
/// non_human_count.
struct MetricsReport {
    std::int64_t network_size = 0;
    CountMap per_sector_counts;               // every configured sector, zeros included
    double occupied_sector_fraction = 0.0;
    std::optional<double> mean_closeness;     // mean of (1 - radius); absent for size 0
    std::optional<double> alter_density;      // absent for size < 2
    std::int64_t isolated_alter_count = 0;
    CountMap gender_counts;                   // trimmed lower-case; "unspecified" if absent
    std::int64_t non_human_count = 0;

    bool operator==(const MetricsReport&) const = default;
};

inline constexpr std::string_view kUnspecifiedGender = "unspecified";

MetricsReport compute_metrics(const NetMapVersion& v);

using MetricValue = std::variant<std::monostate, std::int64_t, double, CountMap>;
using MetricsDelta = std::map<std::string, std::pair<MetricValue, MetricValue>>;

/// Every metric whose value differs between the reports, keyed by field name.
MetricsDelta metrics_delta(const MetricsReport& before, const MetricsReport& after);

} // namespace sodia
