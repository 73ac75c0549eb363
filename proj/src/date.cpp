#include "wavecast/date.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace wavecast {
namespace {

constexpr std::array<std::string_view, 12> kMonths{"jan", "feb", "mar", "apr", "may", "jun",
                                                   "jul", "aug", "sep", "oct", "nov", "dec"};
constexpr std::array<std::string_view, 12> kMonthNames{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                       "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

std::optional<int> to_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<Date> make(int y, int m, int d) {
    const Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    text = trim(text);
    const auto first = text.find('-');
    if (first == std::string_view::npos) return std::nullopt;
    const auto second = text.find('-', first + 1);
    if (second == std::string_view::npos) return std::nullopt;
    const auto a = text.substr(0, first);
    const auto b = text.substr(first + 1, second - first - 1);
    const auto c = text.substr(second + 1);

    if (a.size() == 4) {
        const auto y = to_int(a), m = to_int(b), d = to_int(c);
        if (!y || !m || !d || b.size() != 2 || c.size() != 2) return std::nullopt;
        return make(*y, *m, *d);
    }

    const auto d = to_int(a);
    if (!d || b.size() != 3) return std::nullopt;
    int month = 0;
    for (std::size_t i = 0; i < kMonths.size(); ++i) {
        bool same = true;
        for (std::size_t k = 0; k < 3; ++k) {
            if (std::tolower(static_cast<unsigned char>(b[k])) != kMonths[i][k]) same = false;
        }
        if (same) month = static_cast<int>(i) + 1;
    }
    if (month == 0) return std::nullopt;
    auto y = to_int(c);
    if (!y) return std::nullopt;
    if (c.size() == 2) {
        *y += *y < 69 ? 2000 : 1900;
    } else if (c.size() != 4) {
        return std::nullopt;
    }
    return make(*y, month, *d);
}

std::string format_iso(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::string format_short(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%u-%s-%02d", static_cast<unsigned>(d.day()),
                  kMonthNames[static_cast<unsigned>(d.month()) - 1].data(),
                  static_cast<int>(d.year()) % 100);
    return buf;
}

Date next_weekday(Date d) {
    using namespace std::chrono;
    sys_days day = sys_days{d} + days{1};
    while (weekday{day} == Saturday || weekday{day} == Sunday) day += days{1};
    return Date{day};
}

}  // namespace wavecast
