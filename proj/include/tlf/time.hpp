#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

// Civil dates and local timestamps. Everything in the pipeline runs in
// agency-local time; there is no timezone handling anywhere.

namespace tlf {

struct Date {
    int32_t days = 0;  // days since 1970-01-01

    auto operator<=>(const Date&) const = default;
};

struct Timestamp {
    int64_t seconds = 0;  // seconds since 1970-01-01 00:00:00 local

    auto operator<=>(const Timestamp&) const = default;
};

namespace detail {

inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace detail

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
};

inline Date make_date(int year, int month, int day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                                    std::chrono::day{unsigned(day)}};
    auto sd = std::chrono::sys_days(ymd);
    return Date{int32_t(sd.time_since_epoch().count())};
}

inline CivilDate civil_of(Date d) {
    std::chrono::sys_days sd{std::chrono::days{d.days}};
    std::chrono::year_month_day ymd{sd};
    return CivilDate{int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day()))};
}

// 0 = Sunday .. 6 = Saturday
inline int day_of_week(Date d) {
    std::chrono::sys_days sd{std::chrono::days{d.days}};
    return int(std::chrono::weekday{sd}.c_encoding());
}

inline Timestamp at_midnight(Date d) { return Timestamp{int64_t(d.days) * 86400}; }

inline Timestamp make_timestamp(Date d, int64_t seconds_of_day) {
    return Timestamp{int64_t(d.days) * 86400 + seconds_of_day};
}

inline Date date_of(Timestamp ts) { return Date{int32_t(detail::floor_div(ts.seconds, 86400))}; }

inline int seconds_since_midnight(Timestamp ts) {
    int64_t r = ts.seconds % 86400;
    if (r < 0) r += 86400;
    return int(r);
}

inline int minutes_since_midnight(Timestamp ts) { return seconds_since_midnight(ts) / 60; }

inline Date add_days(Date d, int n) { return Date{d.days + n}; }

namespace detail {

inline bool parse_int_field(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace detail

// "YYYY-MM-DD"
inline std::optional<Date> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    int y, m, d;
    if (!detail::parse_int_field(s.substr(0, 4), y) || !detail::parse_int_field(s.substr(5, 2), m) ||
        !detail::parse_int_field(s.substr(8, 2), d))
        return std::nullopt;
    if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
    return make_date(y, m, d);
}

// "YYYY-MM-DDTHH:MM:SS" ('T' or ' ' separator)
inline std::optional<Timestamp> parse_timestamp(std::string_view s) {
    if (s.size() != 19 || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;
    auto date = parse_date(s.substr(0, 10));
    if (!date) return std::nullopt;
    if (s[13] != ':' || s[16] != ':') return std::nullopt;
    int hh, mm, ss;
    if (!detail::parse_int_field(s.substr(11, 2), hh) || !detail::parse_int_field(s.substr(14, 2), mm) ||
        !detail::parse_int_field(s.substr(17, 2), ss))
        return std::nullopt;
    if (hh > 23 || mm > 59 || ss > 59 || hh < 0 || mm < 0 || ss < 0) return std::nullopt;
    return make_timestamp(*date, hh * 3600 + mm * 60 + ss);
}

// GTFS-style "HH:MM:SS" time of day; hours may exceed 23 for service past midnight.
inline std::optional<int64_t> parse_gtfs_time(std::string_view s) {
    if (s.size() < 7) return std::nullopt;
    size_t c1 = s.find(':');
    if (c1 == std::string_view::npos) return std::nullopt;
    size_t c2 = s.find(':', c1 + 1);
    if (c2 == std::string_view::npos) return std::nullopt;
    int hh, mm, ss;
    if (!detail::parse_int_field(s.substr(0, c1), hh) || !detail::parse_int_field(s.substr(c1 + 1, c2 - c1 - 1), mm) ||
        !detail::parse_int_field(s.substr(c2 + 1), ss))
        return std::nullopt;
    if (hh < 0 || mm < 0 || mm > 59 || ss < 0 || ss > 59) return std::nullopt;
    return int64_t(hh) * 3600 + mm * 60 + ss;
}

namespace detail {

inline void append_padded(std::string& out, int value, int width) {
    char buf[16];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    int len = int(p - buf);
    for (int i = len; i < width; ++i) out.push_back('0');
    out.append(buf, p);
}

}  // namespace detail

inline std::string format_date(Date d) {
    CivilDate c = civil_of(d);
    std::string out;
    detail::append_padded(out, c.year, 4);
    out.push_back('-');
    detail::append_padded(out, c.month, 2);
    out.push_back('-');
    detail::append_padded(out, c.day, 2);
    return out;
}

inline std::string format_timestamp(Timestamp ts) {
    std::string out = format_date(date_of(ts));
    out.push_back('T');
    int s = seconds_since_midnight(ts);
    detail::append_padded(out, s / 3600, 2);
    out.push_back(':');
    detail::append_padded(out, (s / 60) % 60, 2);
    out.push_back(':');
    detail::append_padded(out, s % 60, 2);
    return out;
}

inline std::string format_gtfs_time(int64_t seconds_of_day) {
    std::string out;
    detail::append_padded(out, int(seconds_of_day / 3600), 2);
    out.push_back(':');
    detail::append_padded(out, int((seconds_of_day / 60) % 60), 2);
    out.push_back(':');
    detail::append_padded(out, int(seconds_of_day % 60), 2);
    return out;
}

}  // namespace tlf
