#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eaf::cal {

/// Proleptic Gregorian date.
struct Date {
    std::int32_t year;
    std::uint8_t month;  // [1, 12]
    std::uint8_t day;    // [1, month_length(year, month)]

    friend bool operator==(const Date&, const Date&) = default;
    friend auto operator<=>(const Date& a, const Date& b) {
        if (auto c = a.year <=> b.year; c != 0) return c;
        if (auto c = a.month <=> b.month; c != 0) return c;
        return a.day <=> b.day;
    }
};

/// Date in the computational calendar: months are rotated so that February
/// comes last (month 14) and days are zero-based.  Everything is
/// non-negative, so the conversion engine runs on unsigned arithmetic only.
struct CompDate {
    std::uint32_t year;   // >= 0
    std::uint32_t month;  // [3, 14]
    std::uint32_t day;    // [0, length of month - 1]

    friend bool operator==(const CompDate&, const CompDate&) = default;
};

using RataDie = std::int32_t;

/// Largest computational year for which every day count of the year stays
/// below 2^31, keeping the whole forward range invertible.
inline constexpr std::uint32_t kMaxCompYear = 5879609;

/// Gregorian leap year rule, correct for negative years (Euclidean
/// remainders).
[[nodiscard]] constexpr bool is_leap(std::int64_t year) noexcept {
    const auto mod = [](std::int64_t n, std::int64_t d) {
        const std::int64_t r = n % d;
        return r < 0 ? r + d : r;
    };
    return mod(year, 4) == 0 && (mod(year, 100) != 0 || mod(year, 400) == 0);
}

/// Length of a Gregorian month; month must be in [1, 12].
[[nodiscard]] std::uint32_t month_length(std::int64_t year, std::uint32_t month);

/// Days from the start of a computational year to the start of month m0,
/// m0 in [3, 14].  The underlying affine form (153*m0 - 457)/5 is replaced by
/// its multiply-shift equivalent; tests keep the affine form as the oracle.
[[nodiscard]] std::uint32_t month_count(std::uint32_t m0);

/// Length of computational month m0 (of computational year y0).
[[nodiscard]] std::uint32_t comp_month_length(std::uint32_t y0, std::uint32_t m0);

[[nodiscard]] bool is_valid_date(const Date& d);

/// Rotate a (era-shifted) Gregorian date into the computational calendar.
/// Throws std::domain_error when the result would precede its minimum
/// (year 0, March 1).
[[nodiscard]] CompDate to_computational(const Date& d);

/// Inverse rotation.
[[nodiscard]] Date from_computational(const CompDate& c);

/// Day count of a computational date relative to the calendar minimum.
[[nodiscard]] std::uint32_t rata_die_comp(const CompDate& c);

/// Computational date with the given day count; r0 must be in [0, 2^31).
[[nodiscard]] CompDate inv_rata_die_comp(std::uint32_t r0);

/// Era shift plus epoch choice fixing the rata-die zero point.  era_shift is
/// a multiple of 400 so that leap years are preserved by the shift; the
/// supported year window and rata-die window are frozen at construction.
class CalendarConfig {
public:
    /// Config with the given era shift whose rata die is zero at `epoch`.
    /// The epoch offset is computed once through the conversion pipeline
    /// itself and then frozen.
    static CalendarConfig with_epoch(std::int32_t era_shift, const Date& epoch);

    /// Era shift -32800, epoch 1 January 1970 (rata die 0 = Unix epoch day 0).
    /// Supports years [-32767, 32767].
    static const CalendarConfig& unix_epoch();

    [[nodiscard]] std::int32_t era_shift() const { return era_shift_; }
    [[nodiscard]] std::uint32_t epoch_offset() const { return epoch_offset_; }
    [[nodiscard]] Date epoch() const { return epoch_; }
    [[nodiscard]] std::int32_t min_year() const { return min_year_; }
    [[nodiscard]] std::int32_t max_year() const { return max_year_; }
    [[nodiscard]] RataDie min_rata_die() const { return rd_min_; }
    [[nodiscard]] RataDie max_rata_die() const { return rd_max_; }

private:
    CalendarConfig() = default;

    std::int32_t era_shift_ = 0;
    std::uint32_t epoch_offset_ = 0;
    Date epoch_{};
    std::int32_t min_year_ = 0;
    std::int32_t max_year_ = 0;
    RataDie rd_min_ = 0;
    RataDie rd_max_ = 0;
};

/// Conversion engine, no validation: the caller guarantees the date is valid
/// and inside the configured window.  Kept inline so benchmark loops compile
/// it with full optimisation.
[[nodiscard]] inline RataDie to_rata_die_unchecked(const CalendarConfig& cfg,
                                                   const Date& d) noexcept {
    const std::uint32_t jan_or_feb = d.month <= 2;
    const std::uint32_t y0 =
        static_cast<std::uint32_t>(d.year - cfg.era_shift()) - jan_or_feb;
    const std::uint32_t m0 = d.month + 12 * jan_or_feb;
    const std::uint32_t d0 = static_cast<std::uint32_t>(d.day) - 1;

    const std::uint32_t q1 = y0 / 100;
    const std::uint32_t yc =
        static_cast<std::uint32_t>(std::uint64_t{1461} * y0 / 4) - q1 + q1 / 4;
    const std::uint32_t mc = (979 * m0 - 2919) >> 5;

    return static_cast<RataDie>(static_cast<std::int64_t>(yc + mc + d0) -
                                static_cast<std::int64_t>(cfg.epoch_offset()));
}

/// Inverse engine: century, year of century, month and day are peeled off by
/// multiply-shift stages whose low bits carry the next remainder, so the
/// quotient and remainder of each stage can issue in parallel.
[[nodiscard]] inline Date from_rata_die_unchecked(const CalendarConfig& cfg,
                                                  RataDie r) noexcept {
    const std::uint32_t r0 =
        static_cast<std::uint32_t>(r + static_cast<std::int32_t>(cfg.epoch_offset()));

    const std::uint64_t n1 = 4 * std::uint64_t{r0} + 3;
    const std::uint32_t q1 = static_cast<std::uint32_t>(n1 / 146097);
    const std::uint32_t r1 = static_cast<std::uint32_t>(n1 % 146097) / 4;

    const std::uint64_t n2 = 4 * std::uint64_t{r1} + 3;
    const std::uint64_t u2 = std::uint64_t{2939745} * n2;
    const std::uint32_t q2 = static_cast<std::uint32_t>(u2 >> 32);
    const std::uint32_t r2 = static_cast<std::uint32_t>(u2) / 2939745 / 4;

    const std::uint32_t n3 = 2141 * r2 + 197913;
    const std::uint32_t q3 = n3 >> 16;
    const std::uint32_t r3 = (n3 & 0xFFFF) / 2141;

    const std::uint32_t jan_or_feb = r2 >= 306;
    const std::int32_t year =
        static_cast<std::int32_t>(100 * q1 + q2 + jan_or_feb) + cfg.era_shift();
    const auto month = static_cast<std::uint8_t>(q3 - 12 * jan_or_feb);
    const auto day = static_cast<std::uint8_t>(r3 + 1);
    return Date{year, month, day};
}

/// Validating conversions: reject invalid dates and anything outside the
/// configured window with std::domain_error.
[[nodiscard]] RataDie to_rata_die(const CalendarConfig& cfg, const Date& d);
[[nodiscard]] Date from_rata_die(const CalendarConfig& cfg, RataDie r);

/// Independent day-counting oracle: walks whole years (365/366 days) from the
/// epoch and finishes with month lengths.  Bit-for-bit equal to to_rata_die
/// on its domain; spans are capped at 2*10^7 days.
[[nodiscard]] RataDie oracle_rata_die(const CalendarConfig& cfg, const Date& d);

/// ISO 8601 "YYYY-MM-DD" with an optional sign and at least four year digits.
[[nodiscard]] Date parse_date(std::string_view text);
[[nodiscard]] std::string format_date(const Date& d);

}  // namespace eaf::cal
