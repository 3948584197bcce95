#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "eaf/calendar.hpp"
#include "eaf/rng.hpp"

using namespace eaf::cal;

namespace {

const CalendarConfig& cfg() {
    return CalendarConfig::unix_epoch();
}

// Calendar successor via month lengths only.
Date next_day(const Date& d) {
    if (d.day < month_length(d.year, d.month)) {
        return {d.year, d.month, static_cast<std::uint8_t>(d.day + 1)};
    }
    if (d.month < 12) {
        return {d.year, static_cast<std::uint8_t>(d.month + 1), 1};
    }
    return {d.year + 1, 1, 1};
}

Date random_date(eaf::SplitMix64& rng, std::int32_t lo_year, std::int32_t hi_year) {
    const auto year = static_cast<std::int32_t>(
        lo_year + static_cast<std::int64_t>(rng.bounded(hi_year - lo_year + 1)));
    const auto month = static_cast<std::uint8_t>(1 + rng.bounded(12));
    const auto day = static_cast<std::uint8_t>(1 + rng.bounded(month_length(year, month)));
    return {year, month, day};
}

}  // namespace

TEST_SUITE_BEGIN("calendar");

TEST_CASE("leap years") {
    CHECK(is_leap(2000));
    CHECK_FALSE(is_leap(1900));
    CHECK(is_leap(1996));
    CHECK_FALSE(is_leap(2023));
    CHECK(is_leap(0));
    // negative years via Euclidean remainders
    CHECK(is_leap(-4));
    CHECK_FALSE(is_leap(-100));
    CHECK(is_leap(-400));
    CHECK_FALSE(is_leap(-1));
}

TEST_CASE("month lengths") {
    CHECK(month_length(2024, 2) == 29);
    CHECK(month_length(2023, 2) == 28);
    CHECK(month_length(1970, 1) == 31);
    CHECK(month_length(2001, 4) == 30);
    CHECK(month_length(2001, 12) == 31);
    CHECK_THROWS_AS((void)month_length(2000, 0), std::domain_error);
    CHECK_THROWS_AS((void)month_length(2000, 13), std::domain_error);
}

TEST_CASE("month_count matches its affine form and the table") {
    constexpr std::uint32_t table[] = {0, 31, 61, 92, 122, 153, 184, 214, 245, 275, 306, 337};
    for (std::uint32_t m0 = 3; m0 <= 14; ++m0) {
        CHECK(month_count(m0) == table[m0 - 3]);
        // affine oracle kept alongside the shifted form
        CHECK(month_count(m0) == (153 * m0 - 457) / 5);
    }
    CHECK_THROWS_AS((void)month_count(2), std::domain_error);
    CHECK_THROWS_AS((void)month_count(15), std::domain_error);
}

TEST_CASE("computational rotation") {
    CHECK(to_computational(Date{0, 3, 1}) == CompDate{0, 3, 0});
    CHECK(to_computational(Date{1, 2, 28}) == CompDate{0, 14, 27});
    CHECK(to_computational(Date{0, 12, 31}) == CompDate{0, 12, 30});
    CHECK_THROWS_AS((void)to_computational(Date{0, 1, 1}), std::domain_error);

    CHECK(from_computational(CompDate{0, 3, 0}) == Date{0, 3, 1});
    CHECK(from_computational(CompDate{0, 14, 27}) == Date{1, 2, 28});
    CHECK(from_computational(CompDate{0, 13, 0}) == Date{1, 1, 1});

    // round trip across a few years of dates
    for (std::int32_t y = 1; y <= 9; ++y) {
        for (std::uint8_t m = 1; m <= 12; ++m) {
            for (std::uint8_t d = 1; d <= month_length(y, m); ++d) {
                const Date date{y, m, d};
                CHECK(from_computational(to_computational(date)) == date);
            }
        }
    }
}

TEST_CASE("computational month lengths follow the rotated table") {
    constexpr std::uint32_t fixed[] = {31, 30, 31, 30, 31, 31, 30, 31, 30, 31, 31};
    for (std::uint32_t m0 = 3; m0 <= 13; ++m0) {
        CHECK(comp_month_length(7, m0) == fixed[m0 - 3]);
    }
    CHECK(comp_month_length(3, 14) == 29);  // year 4 is leap
    CHECK(comp_month_length(4, 14) == 28);
}

TEST_CASE("rata_die_comp basics") {
    CHECK(rata_die_comp(CompDate{0, 3, 0}) == 0);
    CHECK(rata_die_comp(CompDate{0, 14, 0}) == 337);
    CHECK(rata_die_comp(CompDate{1, 3, 0}) == 365);
    CHECK_THROWS_AS((void)rata_die_comp(CompDate{0, 2, 0}), std::domain_error);
    CHECK_THROWS_AS((void)rata_die_comp(CompDate{0, 3, 31}), std::domain_error);
}

TEST_CASE("rata_die_comp equals the plain yearly formula") {
    for (std::uint32_t y0 = 0; y0 <= 800; ++y0) {
        for (std::uint32_t m0 = 3; m0 <= 14; ++m0) {
            for (std::uint32_t d0 = 0; d0 < comp_month_length(y0, m0); ++d0) {
                const std::uint32_t plain =
                    365 * y0 + y0 / 4 - y0 / 100 + y0 / 400 + (153 * m0 - 457) / 5 + d0;
                REQUIRE(rata_die_comp(CompDate{y0, m0, d0}) == plain);
            }
        }
    }
}

TEST_CASE("inv_rata_die_comp basics") {
    CHECK(inv_rata_die_comp(0) == CompDate{0, 3, 0});
    CHECK(inv_rata_die_comp(337) == CompDate{0, 14, 0});
    // 306 days from the minimum lands on the first rotated January; the sum
    // of the ten fixed month lengths confirms it.
    std::uint32_t to_january = 0;
    for (std::uint32_t m0 = 3; m0 <= 12; ++m0) {
        to_january += comp_month_length(0, m0);
    }
    CHECK(to_january == 306);
    CHECK(inv_rata_die_comp(306) == CompDate{0, 13, 0});
    CHECK_THROWS_AS((void)inv_rata_die_comp(std::uint32_t{1} << 31), std::domain_error);
}

TEST_CASE("comp round trip, including the top of the supported range") {
    // forward bound: every day of kMaxCompYear stays below 2^31
    const std::uint32_t top = rata_die_comp(CompDate{kMaxCompYear, 14, 27});
    CHECK(top < (std::uint32_t{1} << 31));
    CHECK_THROWS_AS((void)rata_die_comp(CompDate{kMaxCompYear + 1, 3, 0}), std::domain_error);

    eaf::SplitMix64 rng(99);
    for (int i = 0; i < 20000; ++i) {
        const auto r0 = static_cast<std::uint32_t>(rng.bounded(top + 1));
        const CompDate c = inv_rata_die_comp(r0);
        REQUIRE(rata_die_comp(c) == r0);
    }
    for (int i = 0; i < 5000; ++i) {
        const auto y0 = static_cast<std::uint32_t>(rng.bounded(kMaxCompYear + 1));
        const auto m0 = static_cast<std::uint32_t>(3 + rng.bounded(12));
        const auto d0 = static_cast<std::uint32_t>(rng.bounded(comp_month_length(y0, m0)));
        const CompDate c{y0, m0, d0};
        REQUIRE(inv_rata_die_comp(rata_die_comp(c)) == c);
    }
}

// The two multiply-shift stages of the inverse, against their plain
// division/remainder counterparts on the full domains the cascade feeds them.
TEST_CASE("inverse stage equivalences") {
    for (std::uint64_t n2 = 3; n2 < 146100; ++n2) {
        const std::uint64_t u2 = 2939745 * n2;
        const auto q2 = static_cast<std::uint32_t>(u2 >> 32);
        const std::uint32_t r2 = static_cast<std::uint32_t>(u2) / 2939745 / 4;
        REQUIRE(q2 == n2 / 1461);
        REQUIRE(r2 == n2 % 1461 / 4);
    }
    for (std::uint32_t r2 = 0; r2 <= 366; ++r2) {
        const std::uint32_t n3 = 2141 * r2 + 197913;
        const std::uint32_t q3 = n3 >> 16;
        const std::uint32_t r3 = (n3 & 0xFFFF) / 2141;
        REQUIRE(q3 == (5 * r2 + 461) / 153);
        REQUIRE(r3 == (5 * r2 + 461) % 153 / 5);
    }
}

TEST_CASE("default configuration") {
    CHECK(cfg().era_shift() == -32800);
    CHECK(cfg().epoch_offset() == 12699422);
    CHECK(cfg().min_year() == -32767);
    CHECK(cfg().max_year() == 32767);
    CHECK(cfg().epoch() == Date{1970, 1, 1});
    CHECK(to_rata_die(cfg(), Date{1970, 1, 1}) == 0);
    CHECK(from_rata_die(cfg(), 0) == Date{1970, 1, 1});
}

TEST_CASE("config construction rejects bad parameters") {
    CHECK_THROWS_AS((void)CalendarConfig::with_epoch(-100, Date{1970, 1, 1}),
                    std::domain_error);
    CHECK_THROWS_AS((void)CalendarConfig::with_epoch(0, Date{1970, 2, 30}), std::domain_error);
    CHECK_THROWS_AS((void)CalendarConfig::with_epoch(0, Date{-5, 1, 1}), std::domain_error);
    // era shifts whose window would leave 32-bit years are refused
    CHECK_THROWS_AS((void)CalendarConfig::with_epoch(2147419200, Date{2147419233, 1, 1}),
                    std::domain_error);
}

TEST_CASE("alternate epochs shift the zero point only") {
    const CalendarConfig mar = CalendarConfig::with_epoch(-32800, Date{2000, 3, 1});
    CHECK(to_rata_die(mar, Date{2000, 3, 1}) == 0);
    CHECK(to_rata_die(mar, Date{2000, 3, 2}) == 1);
    CHECK(to_rata_die(mar, Date{1970, 1, 1}) == -11017);
    const CalendarConfig zero = CalendarConfig::with_epoch(0, Date{400, 1, 1});
    CHECK(from_rata_die(zero, to_rata_die(zero, Date{2024, 2, 29})) == Date{2024, 2, 29});
}

TEST_CASE("to_rata_die examples") {
    CHECK(to_rata_die(cfg(), Date{1970, 1, 1}) == 0);
    CHECK(to_rata_die(cfg(), Date{2000, 3, 1}) == 11017);
    CHECK(to_rata_die(cfg(), Date{1969, 12, 31}) == -1);
    CHECK(to_rata_die(cfg(), Date{1600, 1, 1}) == -135140);
    CHECK_THROWS_AS((void)to_rata_die(cfg(), Date{1970, 2, 30}), std::domain_error);
    CHECK_THROWS_AS((void)to_rata_die(cfg(), Date{32768, 1, 1}), std::domain_error);
    CHECK_THROWS_AS((void)to_rata_die(cfg(), Date{-32768, 12, 31}), std::domain_error);
}

TEST_CASE("from_rata_die examples") {
    CHECK(from_rata_die(cfg(), 0) == Date{1970, 1, 1});
    CHECK(from_rata_die(cfg(), 11017) == Date{2000, 3, 1});
    CHECK(from_rata_die(cfg(), -1) == Date{1969, 12, 31});
    CHECK_THROWS_AS((void)from_rata_die(cfg(), cfg().max_rata_die() + 1), std::domain_error);
    CHECK_THROWS_AS((void)from_rata_die(cfg(), cfg().min_rata_die() - 1), std::domain_error);
}

TEST_CASE("oracle_rata_die examples") {
    CHECK(oracle_rata_die(cfg(), Date{1970, 1, 2}) == 1);
    CHECK(oracle_rata_die(cfg(), Date{1972, 3, 1}) == 790);
    CHECK(oracle_rata_die(cfg(), Date{1969, 1, 1}) == -365);
    CHECK(oracle_rata_die(cfg(), Date{1970, 1, 1}) == 0);
}

TEST_CASE("engine agrees with the day-walking oracle") {
    eaf::SplitMix64 rng(123);
    for (int i = 0; i < 3000; ++i) {
        const Date d = random_date(rng, cfg().min_year(), cfg().max_year());
        REQUIRE(to_rata_die(cfg(), d) == oracle_rata_die(cfg(), d));
    }
}

TEST_CASE("round trip and monotone succession on a window sample") {
    eaf::SplitMix64 rng(321);
    for (int i = 0; i < 20000; ++i) {
        const auto r = static_cast<RataDie>(
            -146097 + static_cast<std::int64_t>(rng.bounded(2 * 146097)));
        const Date d = from_rata_die(cfg(), r);
        REQUIRE(is_valid_date(d));
        REQUIRE(to_rata_die(cfg(), d) == r);
        REQUIRE(to_rata_die(cfg(), next_day(d)) == r + 1);
    }
}

TEST_CASE("shifting by 400 years adds one leap cycle") {
    eaf::SplitMix64 rng(77);
    for (int i = 0; i < 2000; ++i) {
        const Date d = random_date(rng, 1570, 2369);
        const Date shifted{d.year + 400, d.month, d.day};
        REQUIRE(to_rata_die(cfg(), shifted) == to_rata_die(cfg(), d) + 146097);
    }
}

TEST_CASE("whole-window extremes round trip") {
    const RataDie lo = cfg().min_rata_die();
    const RataDie hi = cfg().max_rata_die();
    CHECK(from_rata_die(cfg(), lo) == Date{-32767, 1, 1});
    CHECK(from_rata_die(cfg(), hi) == Date{32767, 12, 31});
    CHECK(to_rata_die(cfg(), Date{-32767, 1, 1}) == lo);
    CHECK(to_rata_die(cfg(), Date{32767, 12, 31}) == hi);
}

TEST_CASE("date parsing") {
    CHECK(parse_date("1970-01-01") == Date{1970, 1, 1});
    CHECK(parse_date("2000-12-31") == Date{2000, 12, 31});
    CHECK(parse_date("-0044-03-15") == Date{-44, 3, 15});
    CHECK(parse_date("+2000-01-02") == Date{2000, 1, 2});
    CHECK(parse_date("12345-06-07") == Date{12345, 6, 7});

    for (const char* bad : {"", "1970", "197-01-01", "1970-1-1", "1970-01-1", "1970-01-001",
                            "1970/01/01", "1970-13-01", "1970-00-10", "1970-01-32",
                            "1970-01-01x", "x1970-01-01", "--1970-01-01", "1970-01"}) {
        CHECK_THROWS_AS((void)parse_date(bad), std::invalid_argument);
    }
}

TEST_CASE("date formatting") {
    CHECK(format_date(Date{1970, 1, 1}) == "1970-01-01");
    CHECK(format_date(Date{-44, 3, 15}) == "-0044-03-15");
    CHECK(format_date(Date{7, 12, 31}) == "0007-12-31");
    CHECK(format_date(Date{12345, 6, 7}) == "12345-06-07");

    eaf::SplitMix64 rng(9);
    for (int i = 0; i < 2000; ++i) {
        const Date d = random_date(rng, -32767, 32767);
        REQUIRE(parse_date(format_date(d)) == d);
    }
}

TEST_SUITE_END();
