#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "reactfn/prices.hpp"
#include "support/oracles.hpp"

using namespace reactfn;

namespace {

PriceSeries parse(const std::string& text, PriceFormat format = PriceFormat::simple) {
  std::istringstream in(text);
  return parse_prices(in, format, "test");
}

}  // namespace

TEST_CASE("minimal two-row file loads") {
  const auto series = parse("2020-01-02,100.0\n2020-01-03,101.0\n");
  REQUIRE(series.points.size() == 2);
  CHECK(series.points[0].price == 100.0);
  CHECK(series.points[1].ts.date == Date{2020, 1, 3});
  CHECK(series.stats.rows_accepted == 2);
  CHECK(series.stats.reorder_warnings == 0);
}

TEST_CASE("non-positive price names the offending row") {
  try {
    parse("2020-01-01,100\n2020-01-02,-5\n");
    FAIL("expected input_error");
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("unparseable row is reported with its number") {
  try {
    parse("2020-01-01,100\n2020-01-02,abc\n");
    FAIL("expected input_error");
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("out-of-order rows are sorted with one reorder warning") {
  const auto series = parse("2020-01-03,101\n2020-01-02,100\n2020-01-04,102\n");
  REQUIRE(series.points.size() == 3);
  CHECK(series.points.front().ts.date.day == 2);
  CHECK(series.points.back().ts.date.day == 4);
  CHECK(series.stats.reorder_warnings == 1);
}

TEST_CASE("duplicate timestamps are a hard error") {
  CHECK_THROWS_AS(parse("2020-01-02,100\n2020-01-02,101\n"), input_error);
  CHECK_THROWS_AS(parse("2020-01-02T09:30,100\n2020-01-02T09:30,101\n"), input_error);
}

TEST_CASE("header row is skipped in both formats") {
  const auto simple = parse("timestamp,price\n2020-01-02,100\n");
  CHECK(simple.points.size() == 1);
  CHECK(simple.stats.had_header);

  const auto ohlc = parse("Date,Open,High,Low,Close\n2020-01-02,99,101,98,100.5\n", PriceFormat::ohlc);
  REQUIRE(ohlc.points.size() == 1);
  CHECK(ohlc.points[0].price == 100.5);
}

TEST_CASE("ohlc rows missing the close column fail") {
  CHECK_THROWS_AS(parse("2020-01-02,99,101,98\n", PriceFormat::ohlc), input_error);
}

TEST_CASE("empty input is a data error") {
  CHECK_THROWS_AS(parse(""), data_error);
  CHECK_THROWS_AS(parse("timestamp,price\n"), data_error);
}

TEST_CASE("datetime variants parse and keep the offset as written") {
  const auto series = parse(
      "2020-01-02T09:30,100\n"
      "2020-01-02 09:31:30,101\n"
      "2020-01-02T09:32:00Z,102\n"
      "2020-01-02T09:33:00+08:00,103\n");
  REQUIRE(series.points.size() == 4);
  CHECK(series.points[0].ts.minute_of_day() == 9 * 60 + 30);
  CHECK(series.points[1].ts.second == 30);
  CHECK(series.points[2].ts.has_offset);
  CHECK(series.points[2].ts.offset_minutes == 0);
  CHECK(series.points[3].ts.offset_minutes == 480);
  // ordering and sessions use the file's own clock, not the offset
  CHECK(series.points[3].ts.date == Date{2020, 1, 2});
}

TEST_CASE("bad timestamps are rejected") {
  CHECK_THROWS_AS(parse("2020-13-02,100\n"), input_error);
  CHECK_THROWS_AS(parse("2020-02-30,100\n"), input_error);
  CHECK_THROWS_AS(parse("2020-01-02T25:00,100\n"), input_error);
  CHECK_THROWS_AS(parse("02/01/2020,100\n"), input_error);
}

TEST_CASE("loading is deterministic and keeps every accepted row") {
  const std::string text = "2020-01-02,100\n2020-01-03,101\n2020-01-06,99.5\n";
  const auto a = parse(text);
  const auto b = parse(text);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].ts == b.points[i].ts);
    CHECK(a.points[i].price == b.points[i].price);
  }
  CHECK(a.points.size() == a.stats.rows_accepted);
}

TEST_CASE("sessions group by calendar date") {
  SECTION("three points on one date form one session") {
    const auto series = parse("2020-01-02T09:30,100\n2020-01-02T09:31,101\n2020-01-02T09:32,102\n");
    const auto report = validate_sessions(series);
    CHECK(report.session_count == 1);
    CHECK(report.sessions[0].count == 3);
    CHECK(report.min_points == 3);
    CHECK(report.max_points == 3);
    CHECK(report.median_points == 3.0);
  }
  SECTION("point counts per session are summarized") {
    const auto series = parse(
        "2020-01-02T09:30,100\n"
        "2020-01-03T09:30,101\n2020-01-03T09:31,102\n2020-01-03T09:32,103\n"
        "2020-01-06T09:30,104\n2020-01-06T09:31,105\n");
    const auto report = validate_sessions(series);
    CHECK(report.session_count == 3);
    CHECK(report.min_points == 1);
    CHECK(report.max_points == 3);
    CHECK(report.median_points == 2.0);
  }
  SECTION("two dates form two sessions") {
    const auto series = parse("2020-01-02,100\n2020-01-03,101\n");
    CHECK(validate_sessions(series).session_count == 2);
  }
  SECTION("a weekend gap creates no synthetic sessions") {
    const auto series = parse("2020-01-03T09:30,100\n2020-01-06T09:30,101\n");
    const auto report = validate_sessions(series);
    REQUIRE(report.session_count == 2);
    CHECK(report.sessions[0].date == Date{2020, 1, 3});
    CHECK(report.sessions[1].date == Date{2020, 1, 6});
  }
}

TEST_CASE("load_prices reads from disk and names the instrument after the file") {
  oracles::TempDir tmp("prices");
  const auto file = tmp.path() / "spx.csv";
  oracles::write_file(file, "2020-01-02,100\n2020-01-03,101\n");
  const auto series = load_prices(file, PriceFormat::simple);
  CHECK(series.instrument == "spx");
  CHECK(series.points.size() == 2);

  CHECK_THROWS_AS(load_prices(tmp.path() / "missing.csv", PriceFormat::simple), input_error);
}
