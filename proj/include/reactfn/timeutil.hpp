#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>

namespace reactfn {

struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  friend bool operator==(const Date& a, const Date& b) {
    return a.year == b.year && a.month == b.month && a.day == b.day;
  }
  friend bool operator!=(const Date& a, const Date& b) { return !(a == b); }
  friend bool operator<(const Date& a, const Date& b) {
    return std::tie(a.year, a.month, a.day) < std::tie(b.year, b.month, b.day);
  }
};

// Calendar timestamp as written in the input file. The UTC offset is kept as
// given and never applied; ordering and trading-day grouping use the file's
// own clock.
struct Timestamp {
  Date date;
  int hour = 0;
  int minute = 0;
  int second = 0;
  bool has_time = false;
  bool has_offset = false;
  int offset_minutes = 0;

  int minute_of_day() const { return hour * 60 + minute; }

  auto key() const {
    return std::tuple(date.year, date.month, date.day, hour, minute, second);
  }
  friend bool operator==(const Timestamp& a, const Timestamp& b) { return a.key() == b.key(); }
  friend bool operator<(const Timestamp& a, const Timestamp& b) { return a.key() < b.key(); }
};

namespace detail {

inline bool parse_uint(std::string_view s, size_t pos, size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int value = 0;
  for (size_t i = pos; i < pos + len; ++i) {
    const char ch = s[i];
    if (ch < '0' || ch > '9') return false;
    value = value * 10 + (ch - '0');
  }
  out = value;
  return true;
}

}  // namespace detail

inline int days_in_month(int year, int month) {
  static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return lengths[month - 1];
}

/// Parses ISO-8601 "YYYY-MM-DD" optionally followed by "T" or " " and
/// "HH:MM[:SS]", optionally followed by "Z" or "+HH:MM"/"-HH:MM".
inline std::optional<Timestamp> parse_timestamp(std::string_view s) {
  Timestamp ts;
  if (!detail::parse_uint(s, 0, 4, ts.date.year)) return std::nullopt;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!detail::parse_uint(s, 5, 2, ts.date.month)) return std::nullopt;
  if (!detail::parse_uint(s, 8, 2, ts.date.day)) return std::nullopt;
  if (ts.date.month < 1 || ts.date.month > 12) return std::nullopt;
  if (ts.date.day < 1 || ts.date.day > days_in_month(ts.date.year, ts.date.month)) return std::nullopt;

  size_t pos = 10;
  if (pos == s.size()) return ts;

  if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
  ++pos;
  if (!detail::parse_uint(s, pos, 2, ts.hour)) return std::nullopt;
  if (pos + 2 >= s.size() || s[pos + 2] != ':') return std::nullopt;
  if (!detail::parse_uint(s, pos + 3, 2, ts.minute)) return std::nullopt;
  pos += 5;
  if (pos < s.size() && s[pos] == ':') {
    if (!detail::parse_uint(s, pos + 1, 2, ts.second)) return std::nullopt;
    pos += 3;
  }
  if (ts.hour > 23 || ts.minute > 59 || ts.second > 60) return std::nullopt;
  ts.has_time = true;
  if (pos == s.size()) return ts;

  if (s[pos] == 'Z') {
    ts.has_offset = true;
    ts.offset_minutes = 0;
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    const int sign = s[pos] == '+' ? 1 : -1;
    int oh = 0, om = 0;
    ++pos;
    if (!detail::parse_uint(s, pos, 2, oh)) return std::nullopt;
    pos += 2;
    if (pos < s.size() && s[pos] == ':') ++pos;
    if (!detail::parse_uint(s, pos, 2, om)) return std::nullopt;
    pos += 2;
    ts.has_offset = true;
    ts.offset_minutes = sign * (oh * 60 + om);
  }
  return pos == s.size() ? std::optional<Timestamp>(ts) : std::nullopt;
}

inline std::string to_string(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

inline std::string to_string(const Timestamp& ts) {
  std::string out = to_string(ts.date);
  if (ts.has_time) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "T%02d:%02d:%02d", ts.hour, ts.minute, ts.second);
    out += buf;
  }
  return out;
}

// Proleptic Gregorian day count (Howard Hinnant's algorithm), used to emit
// synthetic consecutive-day price files.
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline Date civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

}  // namespace reactfn
