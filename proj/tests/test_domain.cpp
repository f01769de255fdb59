#include <catch2/catch_amalgamated.hpp>

#include "tlf/domain.hpp"

using namespace tlf;

TEST_CASE("trip bin boundaries") {
    CHECK(bin_trip_load(0).level == BinLevel::Low);
    CHECK(bin_trip_load(6).level == BinLevel::Low);
    CHECK(bin_trip_load(7).level == BinLevel::Medium);
    CHECK(bin_trip_load(12).level == BinLevel::Medium);
    CHECK(bin_trip_load(13).level == BinLevel::MediumHigh);
    CHECK(bin_trip_load(54).level == BinLevel::MediumHigh);
    CHECK(bin_trip_load(55).level == BinLevel::High);
    CHECK(bin_trip_load(75).level == BinLevel::High);
    CHECK(bin_trip_load(76).level == BinLevel::VeryHigh);
    CHECK(bin_trip_load(500).level == BinLevel::VeryHigh);
    CHECK(bin_trip_load(6).scheme == BinScheme::Trip);
    CHECK_THROWS_AS(bin_trip_load(-1), std::domain_error);
}

TEST_CASE("stop bin boundaries") {
    CHECK(bin_stop_load(0).level == BinLevel::Low);
    CHECK(bin_stop_load(5).level == BinLevel::Low);
    CHECK(bin_stop_load(6).level == BinLevel::Medium);
    CHECK(bin_stop_load(11).level == BinLevel::Medium);
    CHECK(bin_stop_load(12).level == BinLevel::MediumHigh);
    CHECK(bin_stop_load(16).level == BinLevel::MediumHigh);
    CHECK(bin_stop_load(17).level == BinLevel::High);
    CHECK(bin_stop_load(29).level == BinLevel::High);
    CHECK(bin_stop_load(30).level == BinLevel::VeryHigh);
    CHECK(bin_stop_load(12).scheme == BinScheme::Stop);
    CHECK_THROWS_AS(bin_stop_load(-3), std::domain_error);
}

TEST_CASE("bins partition the non-negative integers exactly once") {
    // exhaustive + monotone over 0..500, both schemes
    int prev_trip = 0, prev_stop = 0;
    for (int load = 0; load <= 500; ++load) {
        int matches_trip = 0, matches_stop = 0;
        for (int lvl = 0; lvl < kBinCount; ++lvl) {
            if (bin_trip_load(load).value() == lvl) ++matches_trip;
            if (bin_stop_load(load).value() == lvl) ++matches_stop;
        }
        REQUIRE(matches_trip == 1);
        REQUIRE(matches_stop == 1);
        REQUIRE(bin_trip_load(load).value() >= prev_trip);
        REQUIRE(bin_stop_load(load).value() >= prev_stop);
        prev_trip = bin_trip_load(load).value();
        prev_stop = bin_stop_load(load).value();
    }
}

TEST_CASE("time window index") {
    Date d = make_date(2020, 3, 5);
    CHECK(time_window_of(make_timestamp(d, 7 * 3600 + 14 * 60), 30) == 14);
    CHECK(time_window_of(make_timestamp(d, 0), 60) == 0);
    CHECK(time_window_of(make_timestamp(d, 23 * 3600 + 59 * 60), 120) == 11);
    CHECK_THROWS_AS(time_window_of(make_timestamp(d, 0), 0), ConfigError);
    CHECK_THROWS_AS(time_window_of(make_timestamp(d, 0), -15), ConfigError);
}

TEST_CASE("time windows cover the day contiguously for any width") {
    Date d = make_date(2021, 7, 1);
    for (int width : {1, 10, 15, 20, 30, 40, 45, 50, 60, 90, 120, 7, 13}) {
        int prev = 0;
        for (int minute = 0; minute < 1440; ++minute) {
            int w = time_window_of(make_timestamp(d, int64_t(minute) * 60), width);
            REQUIRE(w >= 0);
            REQUIRE(w < windows_per_day(width));
            REQUIRE((w == prev || w == prev + 1));  // no gaps
            prev = w;
        }
        REQUIRE(prev == windows_per_day(width) - 1);
    }
}

TEST_CASE("low/high discrimination") {
    CHECK(low_high_of(11) == LowHigh::Low);
    CHECK(low_high_of(12) == LowHigh::High);
    CHECK(low_high_of(0) == LowHigh::Low);
    CHECK(low_high_of(bin_trip_load(8)) == LowHigh::Low);  // Medium maps low at bin granularity
    CHECK(low_high_of(bin_trip_load(13)) == LowHigh::High);
    CHECK(low_high_of(bin_trip_load(60)) == LowHigh::High);
    CHECK(low_high_of(bin_trip_load(90)) == LowHigh::High);
    CHECK(low_high_of(bin_stop_load(11)) == LowHigh::Low);
    CHECK(low_high_of(bin_stop_load(12)) == LowHigh::High);
}

TEST_CASE("civil date round trips") {
    for (auto [y, m, d] : {std::tuple{2020, 1, 1}, {2020, 2, 29}, {2021, 12, 31}, {2022, 4, 6}}) {
        Date date = make_date(y, m, d);
        CivilDate c = civil_of(date);
        CHECK(c.year == y);
        CHECK(c.month == m);
        CHECK(c.day == d);
        CHECK(parse_date(format_date(date)) == date);
    }
    CHECK(day_of_week(make_date(2020, 1, 5)) == 0);  // a Sunday
    CHECK(day_of_week(make_date(2020, 1, 6)) == 1);
}

TEST_CASE("timestamp parse and format") {
    auto ts = parse_timestamp("2020-06-15T08:45:00");
    REQUIRE(ts.has_value());
    CHECK(minutes_since_midnight(*ts) == 8 * 60 + 45);
    CHECK(format_timestamp(*ts) == "2020-06-15T08:45:00");
    CHECK(parse_timestamp("2020-06-15 08:45:00").has_value());
    CHECK_FALSE(parse_timestamp("2020-06-15").has_value());
    CHECK_FALSE(parse_timestamp("2020-06-15T08:61:00").has_value());
    CHECK(parse_gtfs_time("25:30:00") == 25 * 3600 + 30 * 60);
    CHECK(parse_gtfs_time("04:00:00") == 4 * 3600);
    CHECK_FALSE(parse_gtfs_time("0400").has_value());

    // service past midnight lands in the next civil day's early window
    Date d = make_date(2020, 6, 15);
    Timestamp late = make_timestamp(d, 25 * 3600 + 30 * 60);
    CHECK(date_of(late) == add_days(d, 1));
    CHECK(minutes_since_midnight(late) == 90);
}
