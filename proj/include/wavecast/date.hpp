#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace wavecast {

using Date = std::chrono::year_month_day;

/// Accepts ISO 8601 ("2015-01-05") and day-month-year with an abbreviated
/// English month ("5-Jan-15", "05-Jan-2015"). Two-digit years 00-68 map to
/// 20xx and 69-99 to 19xx.
std::optional<Date> parse_date(std::string_view text);

std::string format_iso(Date d);
/// "5-Jan-15"
std::string format_short(Date d);

/// Next Monday-to-Friday calendar day after d.
Date next_weekday(Date d);

}  // namespace wavecast
