#include "eaf/calendar.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace eaf::cal {

namespace {

// Relative year window (years above the era shift) accepted by the checked
// conversions.  Chosen so that the default era shift of -32800 yields the
// symmetric range [-32767, 32767] and every day count stays far below 2^31.
constexpr std::int64_t kMinRelYear = 33;
constexpr std::int64_t kMaxRelYear = 65567;

constexpr std::int64_t kMaxOracleSpan = 20000000;

std::uint32_t year_length(std::int64_t year) {
    return is_leap(year) ? 366 : 365;
}

}  // namespace

std::uint32_t month_length(std::int64_t year, std::uint32_t month) {
    static constexpr std::array<std::uint8_t, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                             31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) {
        throw std::domain_error("month_length: month must be in [1, 12]");
    }
    if (month == 2 && is_leap(year)) {
        return 29;
    }
    return lengths[month - 1];
}

std::uint32_t month_count(std::uint32_t m0) {
    if (m0 < 3 || m0 > 14) {
        throw std::domain_error("month_count: month must be in [3, 14]");
    }
    return (979 * m0 - 2919) >> 5;
}

std::uint32_t comp_month_length(std::uint32_t y0, std::uint32_t m0) {
    if (m0 < 3 || m0 > 14) {
        throw std::domain_error("comp_month_length: month must be in [3, 14]");
    }
    if (m0 == 14) {
        return is_leap(std::int64_t{y0} + 1) ? 29 : 28;
    }
    return month_count(m0 + 1) - month_count(m0);
}

bool is_valid_date(const Date& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= month_length(d.year, d.month);
}

CompDate to_computational(const Date& d) {
    if (d.month < 1 || d.month > 12) {
        throw std::domain_error("to_computational: month must be in [1, 12]");
    }
    const std::uint32_t jan_or_feb = d.month <= 2;
    const std::int64_t y0 = std::int64_t{d.year} - jan_or_feb;
    if (y0 < 0 || d.day < 1) {
        throw std::domain_error("to_computational: date precedes the calendar minimum");
    }
    return CompDate{static_cast<std::uint32_t>(y0), d.month + 12u * jan_or_feb,
                    std::uint32_t{d.day} - 1};
}

Date from_computational(const CompDate& c) {
    if (c.month < 3 || c.month > 14) {
        throw std::domain_error("from_computational: month must be in [3, 14]");
    }
    const std::uint32_t jan_or_feb = c.month >= 13;
    return Date{static_cast<std::int32_t>(c.year + jan_or_feb),
                static_cast<std::uint8_t>(c.month - 12 * jan_or_feb),
                static_cast<std::uint8_t>(c.day + 1)};
}

std::uint32_t rata_die_comp(const CompDate& c) {
    if (c.year > kMaxCompYear) {
        throw std::domain_error("rata_die_comp: year out of supported range");
    }
    if (c.month < 3 || c.month > 14 || c.day >= comp_month_length(c.year, c.month)) {
        throw std::domain_error("rata_die_comp: invalid computational date");
    }
    const std::uint32_t q1 = c.year / 100;
    const auto yc = static_cast<std::uint32_t>(std::uint64_t{1461} * c.year / 4) - q1 + q1 / 4;
    const std::uint32_t mc = (979 * c.month - 2919) >> 5;
    return yc + mc + c.day;
}

CompDate inv_rata_die_comp(std::uint32_t r0) {
    if (r0 >= (std::uint32_t{1} << 31)) {
        throw std::domain_error("inv_rata_die_comp: day count must be below 2^31");
    }
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

    return CompDate{100 * q1 + q2, q3, r3};
}

CalendarConfig CalendarConfig::with_epoch(std::int32_t era_shift, const Date& epoch) {
    if (era_shift % 400 != 0) {
        throw std::domain_error("CalendarConfig: era shift must be a multiple of 400");
    }
    if (era_shift > std::numeric_limits<std::int32_t>::max() - static_cast<std::int32_t>(kMaxRelYear)) {
        throw std::domain_error("CalendarConfig: era shift too large for a 32-bit year window");
    }
    CalendarConfig cfg;
    cfg.era_shift_ = era_shift;
    cfg.min_year_ = static_cast<std::int32_t>(era_shift + kMinRelYear);
    cfg.max_year_ = static_cast<std::int32_t>(era_shift + kMaxRelYear);

    const auto rho2 = [&](const Date& d) {
        const Date shifted{static_cast<std::int32_t>(d.year - era_shift), d.month, d.day};
        return rata_die_comp(to_computational(shifted));
    };
    if (!is_valid_date(epoch) || epoch.year < cfg.min_year_ || epoch.year > cfg.max_year_) {
        throw std::domain_error("CalendarConfig: epoch outside the supported window");
    }
    cfg.epoch_ = epoch;
    cfg.epoch_offset_ = rho2(epoch);
    cfg.rd_min_ = static_cast<RataDie>(std::int64_t{rho2(Date{cfg.min_year_, 1, 1})} -
                                       cfg.epoch_offset_);
    cfg.rd_max_ = static_cast<RataDie>(std::int64_t{rho2(Date{cfg.max_year_, 12, 31})} -
                                       cfg.epoch_offset_);
    return cfg;
}

const CalendarConfig& CalendarConfig::unix_epoch() {
    static const CalendarConfig cfg = with_epoch(-32800, Date{1970, 1, 1});
    return cfg;
}

RataDie to_rata_die(const CalendarConfig& cfg, const Date& d) {
    if (!is_valid_date(d)) {
        throw std::domain_error("to_rata_die: invalid date " + format_date(d));
    }
    if (d.year < cfg.min_year() || d.year > cfg.max_year()) {
        throw std::domain_error("to_rata_die: year out of supported range [" +
                                std::to_string(cfg.min_year()) + ", " +
                                std::to_string(cfg.max_year()) + "]");
    }
    return to_rata_die_unchecked(cfg, d);
}

Date from_rata_die(const CalendarConfig& cfg, RataDie r) {
    if (r < cfg.min_rata_die() || r > cfg.max_rata_die()) {
        throw std::domain_error("from_rata_die: value out of supported range [" +
                                std::to_string(cfg.min_rata_die()) + ", " +
                                std::to_string(cfg.max_rata_die()) + "]");
    }
    return from_rata_die_unchecked(cfg, r);
}

RataDie oracle_rata_die(const CalendarConfig& cfg, const Date& d) {
    if (!is_valid_date(d)) {
        throw std::domain_error("oracle_rata_die: invalid date");
    }
    if (d.year < cfg.min_year() || d.year > cfg.max_year()) {
        throw std::domain_error("oracle_rata_die: year out of supported range");
    }
    const Date epoch = cfg.epoch();
    const auto day_of_year = [](const Date& x) {
        std::int64_t n = x.day - 1;
        for (std::uint32_t m = 1; m < x.month; ++m) {
            n += month_length(x.year, m);
        }
        return n;
    };
    std::int64_t days = 0;
    if (d.year >= epoch.year) {
        for (std::int64_t y = epoch.year; y < d.year; ++y) {
            days += year_length(y);
        }
    } else {
        for (std::int64_t y = d.year; y < epoch.year; ++y) {
            days -= year_length(y);
        }
    }
    days += day_of_year(d) - day_of_year(epoch);
    if (days < -kMaxOracleSpan || days > kMaxOracleSpan) {
        throw std::domain_error("oracle_rata_die: span exceeds the supported window");
    }
    return static_cast<RataDie>(days);
}

Date parse_date(std::string_view text) {
    const auto fail = [&]() -> Date {
        throw std::invalid_argument("invalid date '" + std::string(text) +
                                    "' (expected [+|-]YYYY-MM-DD)");
    };
    std::size_t pos = 0;
    bool negative = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        negative = text[0] == '-';
        pos = 1;
    }
    std::size_t year_digits = 0;
    while (pos + year_digits < text.size() &&
           text[pos + year_digits] >= '0' && text[pos + year_digits] <= '9') {
        ++year_digits;
    }
    if (year_digits < 4 || year_digits > 9) {
        return fail();
    }
    std::int64_t year = 0;
    std::from_chars(text.data() + pos, text.data() + pos + year_digits, year);
    pos += year_digits;

    const auto two_digits = [&](std::uint32_t& out) {
        if (pos + 3 > text.size() || text[pos] != '-' ||
            text[pos + 1] < '0' || text[pos + 1] > '9' ||
            text[pos + 2] < '0' || text[pos + 2] > '9') {
            return false;
        }
        out = 10u * (text[pos + 1] - '0') + (text[pos + 2] - '0');
        pos += 3;
        return true;
    };
    std::uint32_t month = 0;
    std::uint32_t day = 0;
    if (!two_digits(month) || !two_digits(day) || pos != text.size()) {
        return fail();
    }
    if (negative) {
        year = -year;
    }
    if (month < 1 || month > 12 || day < 1 || day > 31) {
        return fail();
    }
    return Date{static_cast<std::int32_t>(year), static_cast<std::uint8_t>(month),
                static_cast<std::uint8_t>(day)};
}

std::string format_date(const Date& d) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%s%04lld-%02u-%02u", d.year < 0 ? "-" : "",
                  static_cast<long long>(d.year < 0 ? -std::int64_t{d.year} : d.year),
                  unsigned{d.month}, unsigned{d.day});
    return buf;
}

}  // namespace eaf::cal
