#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sodia {

using Date = std::chrono::year_month_day;
using Timestamp = std::chrono::sys_seconds;

std::optional<Date> parse_date(std::string_view iso);   // YYYY-MM-DD
std::string format_date(const Date& d);

std::optional<Timestamp> parse_timestamp(std::string_view rfc3339);   // YYYY-MM-DDTHH:MM:SSZ
std::string format_timestamp(Timestamp ts);

inline std::int64_t day_number(const Date& d) {
    return std::chrono::sys_days{d}.time_since_epoch().count();
}

inline Date date_from_day_number(std::int64_t n) {
    return Date{std::chrono::sys_days{std::chrono::days{n}}};
}

inline Date add_days(const Date& d, std::int64_t n) {
    return date_from_day_number(day_number(d) + n);
}

Date today_utc();
Timestamp now_utc();

} // namespace sodia
