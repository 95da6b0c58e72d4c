#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "reactfn/errors.hpp"
#include "reactfn/prices.hpp"

namespace reactfn {

struct ReturnScale {
  bool is_daily = true;
  int step_minutes = 0;

  static ReturnScale daily() { return {true, 0}; }
  static ReturnScale minutes(int k) {
    if (k < 1) throw input_error("minute scale requires k >= 1");
    return {false, k};
  }

  // "1d" or "<k>m", e.g. "15m".
  static ReturnScale parse(const std::string& s) {
    if (s == "1d") return daily();
    if (s.size() >= 2 && s.back() == 'm') {
      int k = 0;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw input_error("bad scale '" + s + "'");
        k = k * 10 + (s[i] - '0');
      }
      return minutes(k);
    }
    throw input_error("bad scale '" + s + "' (expected 1d or <k>m)");
  }

  std::string str() const { return is_daily ? "1d" : std::to_string(step_minutes) + "m"; }

  friend bool operator==(const ReturnScale& a, const ReturnScale& b) {
    return a.is_daily == b.is_daily && (a.is_daily || a.step_minutes == b.step_minutes);
  }
};

enum class ReturnKind { simple, log };

inline ReturnKind parse_return_kind(const std::string& s) {
  if (s == "simple") return ReturnKind::simple;
  if (s == "log") return ReturnKind::log;
  throw input_error("unknown returns kind '" + s + "' (expected simple or log)");
}

inline std::string to_string(ReturnKind k) { return k == ReturnKind::simple ? "simple" : "log"; }

struct ReturnSeries {
  std::string instrument;
  ReturnScale scale;
  ReturnKind kind = ReturnKind::simple;
  std::vector<double> values;

  std::size_t sample_count() const { return values.size(); }
};

// Indices into PriceSeries::points for each (earlier, later) price pair used,
// so tests can audit that no pair spans a session boundary.
struct ReturnAudit {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

namespace detail {

inline double one_return(double p0, double p1, ReturnKind kind) {
  return kind == ReturnKind::simple ? p1 / p0 - 1.0 : std::log(p1 / p0);
}

// One row per distinct minute within the session, last observation wins.
inline std::vector<std::size_t> minute_grid(const PriceSeries& series, const SessionSpan& span) {
  std::vector<std::size_t> grid;
  int last_key = -1;
  for (std::size_t i = span.first; i < span.first + span.count; ++i) {
    const int key = series.points[i].ts.minute_of_day();
    if (!grid.empty() && key == last_key) {
      grid.back() = i;
    } else {
      grid.push_back(i);
      last_key = key;
    }
  }
  return grid;
}

}  // namespace detail

/// Computes returns at the requested scale.
///
/// Daily: one return per consecutive session pair, close to close (the last
/// price of each trading day). Minute scales: k-minute steps over the
/// per-minute grid of each session, anchored at the session's first point;
/// pairs never cross a session boundary. Steps advance by grid row, so
/// minutes missing from the data are skipped rather than forward-filled.
/// With overlapping=true every grid row starts a window instead of every
/// k-th one.
inline ReturnSeries compute_returns(const PriceSeries& series, ReturnScale scale, ReturnKind kind,
                                    bool overlapping = false, ReturnAudit* audit = nullptr) {
  if (series.points.empty()) throw data_error("empty price series");

  ReturnSeries out;
  out.instrument = series.instrument;
  out.scale = scale;
  out.kind = kind;

  const auto spans = series.sessions();
  const auto emit = [&](std::size_t i0, std::size_t i1) {
    out.values.push_back(detail::one_return(series.points[i0].price, series.points[i1].price, kind));
    if (audit != nullptr) audit->pairs.emplace_back(i0, i1);
  };

  if (scale.is_daily) {
    for (std::size_t s = 1; s < spans.size(); ++s) {
      const std::size_t prev_last = spans[s - 1].first + spans[s - 1].count - 1;
      const std::size_t cur_last = spans[s].first + spans[s].count - 1;
      emit(prev_last, cur_last);
    }
  } else {
    const std::size_t k = static_cast<std::size_t>(scale.step_minutes);
    for (const auto& span : spans) {
      const auto grid = detail::minute_grid(series, span);
      if (overlapping) {
        for (std::size_t j = 0; j + k < grid.size(); ++j) emit(grid[j], grid[j + k]);
      } else {
        for (std::size_t j = 0; j + k < grid.size(); j += k) emit(grid[j], grid[j + k]);
      }
    }
  }

  if (out.values.empty())
    throw data_error("empty return series at scale " + scale.str() +
                     " (fewer than 2 usable points)");
  return out;
}

}  // namespace reactfn
