#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "reactfn/errors.hpp"
#include "reactfn/timeutil.hpp"

namespace reactfn {

enum class PriceFormat { simple, ohlc };

inline PriceFormat parse_price_format(std::string_view s) {
  if (s == "simple") return PriceFormat::simple;
  if (s == "ohlc") return PriceFormat::ohlc;
  throw input_error("unknown price format '" + std::string(s) + "' (expected simple or ohlc)");
}

struct PricePoint {
  Timestamp ts;
  double price = 0.0;
};

struct LoadStats {
  std::size_t rows_accepted = 0;
  std::size_t reorder_warnings = 0;  // adjacent out-of-order row pairs in the input
  bool had_header = false;
};

struct SessionSpan {
  Date date;
  std::size_t first = 0;  // index into points
  std::size_t count = 0;
};

struct PriceSeries {
  std::string instrument;
  std::vector<PricePoint> points;  // strictly increasing timestamps
  LoadStats stats;

  // Trading day of a point: the calendar date in the file's own clock.
  static Date session_of(const PricePoint& p) { return p.ts.date; }

  std::vector<SessionSpan> sessions() const {
    std::vector<SessionSpan> spans;
    for (std::size_t i = 0; i < points.size();) {
      SessionSpan span{points[i].ts.date, i, 0};
      std::size_t j = i;
      while (j < points.size() && points[j].ts.date == span.date) ++j;
      span.count = j - i;
      spans.push_back(span);
      i = j;
    }
    return spans;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

inline bool parse_price_field(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

}  // namespace detail

/// Parses price rows from a stream. Rows are CSV; format simple expects
/// timestamp,price and format ohlc expects timestamp,open,high,low,close with
/// the close taken as the price. A header line is recognized by an alphabetic
/// first character. Out-of-order rows are sorted with a warning count;
/// duplicate timestamps and non-positive prices are hard errors.
inline PriceSeries parse_prices(std::istream& in, PriceFormat format, std::string instrument) {
  PriceSeries series;
  series.instrument = std::move(instrument);

  const std::size_t price_col = format == PriceFormat::simple ? 1 : 4;
  const std::size_t min_cols = price_col + 1;

  std::string line;
  std::size_t row = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++row;
    const std::string stripped = detail::trim(line);
    if (stripped.empty()) continue;

    if (!seen_data && (std::isalpha(static_cast<unsigned char>(stripped.front())) != 0)) {
      series.stats.had_header = true;
      continue;
    }
    seen_data = true;

    const auto fields = detail::split_csv(stripped);
    if (fields.size() < min_cols)
      throw input_error("row " + std::to_string(row) + ": expected at least " +
                        std::to_string(min_cols) + " columns, got " + std::to_string(fields.size()));

    const auto ts = parse_timestamp(fields[0]);
    if (!ts) throw input_error("row " + std::to_string(row) + ": cannot parse timestamp '" + fields[0] + "'");

    double price = 0.0;
    if (!detail::parse_price_field(fields[price_col], price))
      throw input_error("row " + std::to_string(row) + ": cannot parse price '" + fields[price_col] + "'");
    if (!(price > 0.0))
      throw input_error("row " + std::to_string(row) + ": non-positive price " + fields[price_col]);

    if (!series.points.empty() && ts->key() < series.points.back().ts.key())
      ++series.stats.reorder_warnings;
    series.points.push_back(PricePoint{*ts, price});
  }

  if (series.points.empty()) throw data_error("empty series after filtering");

  std::stable_sort(series.points.begin(), series.points.end(),
                   [](const PricePoint& a, const PricePoint& b) { return a.ts < b.ts; });
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    if (series.points[i].ts == series.points[i - 1].ts)
      throw input_error("duplicate timestamp " + to_string(series.points[i].ts));
  }

  series.stats.rows_accepted = series.points.size();
  if (series.stats.reorder_warnings > 0)
    log_note("sorted " + std::to_string(series.stats.reorder_warnings) + " out-of-order row(s)");
  return series;
}

inline PriceSeries load_prices(const std::filesystem::path& path, PriceFormat format) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path.string());
  return parse_prices(in, format, path.stem().string());
}

struct SessionReport {
  std::size_t session_count = 0;
  std::size_t min_points = 0;
  std::size_t max_points = 0;
  double median_points = 0.0;
  std::vector<SessionSpan> sessions;  // in chronological order
};

inline SessionReport validate_sessions(const PriceSeries& series) {
  if (series.points.empty()) throw data_error("empty series");
  SessionReport report;
  report.sessions = series.sessions();
  report.session_count = report.sessions.size();

  std::vector<std::size_t> counts;
  counts.reserve(report.sessions.size());
  for (const auto& s : report.sessions) counts.push_back(s.count);
  std::sort(counts.begin(), counts.end());
  report.min_points = counts.front();
  report.max_points = counts.back();
  const std::size_t n = counts.size();
  report.median_points = n % 2 == 1
                             ? static_cast<double>(counts[n / 2])
                             : 0.5 * (static_cast<double>(counts[n / 2 - 1]) + static_cast<double>(counts[n / 2]));
  return report;
}

}  // namespace reactfn
