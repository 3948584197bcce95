#include "eaf/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <stdexcept>

#include "eaf/rng.hpp"

namespace eaf::bench {

namespace cal = eaf::cal;

namespace {

const cal::CalendarConfig& cfg() {
    return cal::CalendarConfig::unix_epoch();
}

// ---------------------------------------------------------------------------
// division-baseline: the same era-shifted cascade as the engine, but every
// stage uses the plain division/remainder pair, so each remainder waits on
// its quotient.

cal::RataDie division_to_rata(const cal::CalendarConfig& c, const cal::Date& d) {
    const std::uint32_t jan_or_feb = d.month <= 2;
    const std::uint32_t y0 =
        static_cast<std::uint32_t>(d.year - c.era_shift()) - jan_or_feb;
    const std::uint32_t m0 = d.month + 12 * jan_or_feb;
    const std::uint32_t d0 = std::uint32_t{d.day} - 1;

    const std::uint32_t yc = 365 * y0 + y0 / 4 - y0 / 100 + y0 / 400;
    const std::uint32_t mc = (153 * m0 - 457) / 5;
    return static_cast<cal::RataDie>(static_cast<std::int64_t>(yc + mc + d0) -
                                     static_cast<std::int64_t>(c.epoch_offset()));
}

cal::Date division_from_rata(const cal::CalendarConfig& c, cal::RataDie r) {
    const auto r0 =
        static_cast<std::uint32_t>(r + static_cast<std::int32_t>(c.epoch_offset()));

    const std::uint64_t n1 = 4 * std::uint64_t{r0} + 3;
    const auto q1 = static_cast<std::uint32_t>(n1 / 146097);
    const auto r1 = static_cast<std::uint32_t>(n1 % 146097) / 4;

    const std::uint32_t n2 = 4 * r1 + 3;
    const std::uint32_t q2 = n2 / 1461;
    const std::uint32_t r2 = n2 % 1461 / 4;

    const std::uint32_t n3 = 5 * r2 + 461;
    const std::uint32_t q3 = n3 / 153;
    const std::uint32_t r3 = n3 % 153 / 5;

    const std::uint32_t jan_or_feb = r2 >= 306;
    const auto year =
        static_cast<std::int32_t>(100 * q1 + q2 + jan_or_feb) + c.era_shift();
    return cal::Date{year, static_cast<std::uint8_t>(q3 - 12 * jan_or_feb),
                     static_cast<std::uint8_t>(r3 + 1)};
}

// ---------------------------------------------------------------------------
// table-baseline: month table plus year formula forward, year stepping and a
// backwards month scan for the inverse (the shape used by C library time
// code).

constexpr std::array<std::int32_t, 13> kMonthStarts = {
    0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334, 365};
constexpr std::array<std::int32_t, 13> kMonthStartsLeap = {
    0, 31, 60, 91, 121, 152, 182, 213, 244, 274, 305, 335, 366};

std::int64_t leaps_through(std::int64_t y) {  // leap years in [0, y]
    return y / 4 - y / 100 + y / 400;
}

cal::RataDie table_to_rata(const cal::Date& d) {
    const std::int64_t y = d.year;
    std::int64_t days = 365 * (y - 1970) + leaps_through(y - 1) - leaps_through(1969);
    days += (cal::is_leap(y) ? kMonthStartsLeap : kMonthStarts)[d.month - 1];
    days += d.day - 1;
    return static_cast<cal::RataDie>(days);
}

cal::Date table_from_rata(cal::RataDie r) {
    std::int64_t days = r;
    std::int64_t y = 1970;
    auto year_days = [](std::int64_t yr) { return cal::is_leap(yr) ? 366 : 365; };
    while (days < 0 || days >= year_days(y)) {
        const std::int64_t guess = y + days / 365 - (days % 365 < 0 ? 1 : 0);
        days -= 365 * (guess - y) + leaps_through(guess - 1) - leaps_through(y - 1);
        y = guess;
    }
    const auto& starts = cal::is_leap(y) ? kMonthStartsLeap : kMonthStarts;
    std::uint32_t m = 11;
    while (days < starts[m]) {
        --m;
    }
    return cal::Date{static_cast<std::int32_t>(y), static_cast<std::uint8_t>(m + 1),
                     static_cast<std::uint8_t>(days - starts[m] + 1)};
}

// Registry wrappers with the fixed default configuration.

cal::RataDie fast_to_rata_reg(const cal::Date& d) {
    return cal::to_rata_die_unchecked(cfg(), d);
}
cal::Date fast_from_rata_reg(cal::RataDie r) {
    return cal::from_rata_die_unchecked(cfg(), r);
}
cal::RataDie division_to_rata_reg(const cal::Date& d) {
    return division_to_rata(cfg(), d);
}
cal::Date division_from_rata_reg(cal::RataDie r) {
    return division_from_rata(cfg(), r);
}

// ---------------------------------------------------------------------------
// Harness.

// Forces the computation of `value` to happen inside the measured loop: the
// bytes are funnelled through a register the optimiser must treat as opaque.
// All benchmarked values fit in 8 bytes, so scan and conversion loops pay the
// same per-element cost for this.
template <typename T>
inline void keep(T value) {
    static_assert(std::is_trivially_copyable_v<T> && sizeof(T) <= 8);
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof value);
    asm volatile("" : "+r"(bits));
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// A timing loop: one pass sweeps the input array once.  Measurements are
// taken in interleaved rounds across all loops of a benchmark so that clock
// drift and noisy neighbours hit every algorithm alike instead of whichever
// one happened to run during a slow window.
struct TimedLoop {
    std::function<void()> pass;
    std::uint64_t reps = 1;          // sweeps per measurement, >= 10 ms worth
    std::vector<double> samples_ns;  // per-pass time of each round

    void calibrate() {
        for (;;) {
            const double elapsed = run_once();
            if (elapsed >= 0.010) {
                return;
            }
            const std::uint64_t grown =
                elapsed <= 0
                    ? reps * 16
                    : static_cast<std::uint64_t>(std::ceil(reps * 0.012 / elapsed));
            reps = std::max(reps + 1, grown);
        }
    }

    double run_once() {
        const auto start = Clock::now();
        for (std::uint64_t i = 0; i < reps; ++i) {
            pass();
        }
        return seconds_since(start);
    }

    void measure() { samples_ns.push_back(run_once() / static_cast<double>(reps) * 1e9); }

    [[nodiscard]] double median_ns() {
        std::sort(samples_ns.begin(), samples_ns.end());
        return samples_ns[samples_ns.size() / 2];
    }
};

// One sweep applying `fn` to every input, with a barrier on each result so
// the conversion stays in the loop exactly once per element.  `fn` is a
// distinct callable per algorithm, so every loop compiles with its conversion
// inlined, mirroring how the engines are used in real code.
template <typename In, typename Fn>
std::function<void()> sweep(const std::vector<In>& inputs, Fn fn) {
    return [&inputs, fn] {
        for (const In& x : inputs) {
            keep(fn(x));
        }
    };
}

const Algorithm& find_algorithm(const std::string& name) {
    for (const Algorithm& a : algorithms()) {
        if (name == a.name) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

// Walks whole years, then months, from the epoch; independent of the
// multiply-shift engine so generated inputs do not depend on what is being
// measured.
cal::Date walk_from_rata(cal::RataDie r) {
    const cal::Date epoch = cfg().epoch();
    std::int64_t days = r + epoch.day - 1;
    for (std::uint32_t m = 1; m < epoch.month; ++m) {
        days += cal::month_length(epoch.year, m);
    }
    std::int64_t y = epoch.year;
    auto year_days = [](std::int64_t yr) { return cal::is_leap(yr) ? 366 : 365; };
    while (days < 0) {
        --y;
        days += year_days(y);
    }
    while (days >= year_days(y)) {
        days -= year_days(y);
        ++y;
    }
    std::uint32_t m = 1;
    while (days >= cal::month_length(y, m)) {
        days -= cal::month_length(y, m);
        ++m;
    }
    return cal::Date{static_cast<std::int32_t>(y), static_cast<std::uint8_t>(m),
                     static_cast<std::uint8_t>(days + 1)};
}

std::atomic_flag g_running = ATOMIC_FLAG_INIT;

struct TimingGuard {
    TimingGuard() {
        if (g_running.test_and_set()) {
            throw std::logic_error("run_bench: concurrent timing runs are not allowed");
        }
    }
    ~TimingGuard() { g_running.clear(); }
};

}  // namespace

std::string direction_name(Direction d) {
    return d == Direction::ToRata ? "to" : "from";
}

const std::vector<Algorithm>& algorithms() {
    static const std::vector<Algorithm> algos = {
        {"fast", fast_to_rata_reg, fast_from_rata_reg},
        {"division-baseline", division_to_rata_reg, division_from_rata_reg},
        {"table-baseline", table_to_rata, table_from_rata},
    };
    return algos;
}

std::vector<cal::Date> gen_dates(std::uint64_t seed, std::size_t count) {
    const std::int64_t lo = cal::to_rata_die(cfg(), cal::Date{1570, 1, 1});
    const std::int64_t hi = cal::to_rata_die(cfg(), cal::Date{2370, 1, 1});
    SplitMix64 rng(seed);
    std::vector<cal::Date> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto r = static_cast<cal::RataDie>(
            lo + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(hi - lo))));
        out.push_back(walk_from_rata(r));
    }
    return out;
}

std::vector<cal::RataDie> gen_rata(std::uint64_t seed, std::size_t count) {
    SplitMix64 rng(seed);
    std::vector<cal::RataDie> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(static_cast<cal::RataDie>(
            -146097 + static_cast<std::int64_t>(rng.bounded(2 * 146097))));
    }
    return out;
}

std::vector<BenchReport> run_bench(Direction direction, const std::vector<std::string>& names,
                                   int runs, std::size_t count, std::uint64_t seed) {
    if (runs <= 0) {
        throw std::invalid_argument("run_bench: need at least one run");
    }
    if (count == 0) {
        throw std::invalid_argument("run_bench: need a nonempty input set");
    }
    if (names.empty()) {
        throw std::invalid_argument("run_bench: no algorithms selected");
    }
    std::vector<const Algorithm*> algos;
    algos.reserve(names.size());
    for (const std::string& n : names) {
        algos.push_back(&find_algorithm(n));
    }

    const std::vector<cal::Date> dates =
        direction == Direction::ToRata ? gen_dates(seed, count) : std::vector<cal::Date>{};
    const std::vector<cal::RataDie> rata =
        direction == Direction::FromRata ? gen_rata(seed, count) : std::vector<cal::RataDie>{};

    // Correctness gate: every algorithm must produce identical output on
    // every input before anything is timed.
    for (std::size_t i = 0; i < count; ++i) {
        if (direction == Direction::ToRata) {
            const cal::RataDie want = algos.front()->to_rata(dates[i]);
            for (const Algorithm* a : algos) {
                if (a->to_rata(dates[i]) != want) {
                    throw std::logic_error(std::string("run_bench: '") + a->name +
                                           "' disagrees on " + cal::format_date(dates[i]));
                }
            }
        } else {
            const cal::Date want = algos.front()->from_rata(rata[i]);
            for (const Algorithm* a : algos) {
                if (!(a->from_rata(rata[i]) == want)) {
                    throw std::logic_error(std::string("run_bench: '") + a->name +
                                           "' disagrees on " + std::to_string(rata[i]));
                }
            }
        }
    }

    TimingGuard guard;

    // The timing lambdas capture a copy of the configuration by value so its
    // fields are plain local data inside each loop.  Loop 0 is the scan
    // (load every element through the same barrier, nothing else); the rest
    // follow the requested algorithm order.
    const cal::CalendarConfig conf = cfg();
    std::vector<TimedLoop> loops;
    loops.push_back({direction == Direction::ToRata
                         ? sweep(dates, [](const cal::Date& d) { return d; })
                         : sweep(rata, [](cal::RataDie r) { return r; }),
                     1,
                     {}});
    for (const Algorithm* a : algos) {
        const std::string name = a->name;
        if (direction == Direction::ToRata) {
            if (name == "fast") {
                loops.push_back({sweep(dates,
                                       [conf](const cal::Date& d) {
                                           return cal::to_rata_die_unchecked(conf, d);
                                       }),
                                 1,
                                 {}});
            } else if (name == "division-baseline") {
                loops.push_back({sweep(dates,
                                       [conf](const cal::Date& d) {
                                           return division_to_rata(conf, d);
                                       }),
                                 1,
                                 {}});
            } else {
                loops.push_back(
                    {sweep(dates, [](const cal::Date& d) { return table_to_rata(d); }), 1, {}});
            }
        } else {
            if (name == "fast") {
                loops.push_back({sweep(rata,
                                       [conf](cal::RataDie r) {
                                           return cal::from_rata_die_unchecked(conf, r);
                                       }),
                                 1,
                                 {}});
            } else if (name == "division-baseline") {
                loops.push_back({sweep(rata,
                                       [conf](cal::RataDie r) {
                                           return division_from_rata(conf, r);
                                       }),
                                 1,
                                 {}});
            } else {
                loops.push_back(
                    {sweep(rata, [](cal::RataDie r) { return table_from_rata(r); }), 1, {}});
            }
        }
    }

    // Calibration also warms caches and branch predictors; its timings are
    // discarded.  Then measure in interleaved rounds.
    for (TimedLoop& loop : loops) {
        loop.calibrate();
    }
    for (int round = 0; round < runs; ++round) {
        for (TimedLoop& loop : loops) {
            loop.measure();
        }
    }

    const double scan_ns = loops[0].median_ns();
    std::vector<BenchReport> reports;
    reports.reserve(algos.size());
    for (std::size_t i = 0; i < algos.size(); ++i) {
        const double total = loops[i + 1].median_ns();
        const double adjusted = std::max(0.0, total - scan_ns);
        reports.push_back(
            BenchReport{algos[i]->name, direction, total, scan_ns, adjusted, 0.0});
    }

    // Relative timings against "fast" when present, else the first row.
    std::size_t ref = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (reports[i].algorithm == "fast") {
            ref = i;
            break;
        }
    }
    const double base = reports[ref].adjusted_ns;
    for (BenchReport& r : reports) {
        r.relative = base > 0 ? r.adjusted_ns / base : (r.adjusted_ns == 0 ? 1.0 : 0.0);
    }
    return reports;
}

std::string format_table(const std::vector<BenchReport>& reports) {
    char line[160];
    std::string out;
    std::snprintf(line, sizeof line, "%-20s %-5s %14s %12s %14s %10s\n", "algorithm", "dir",
                  "total_ns", "scan_ns", "adjusted_ns", "relative");
    out += line;
    for (const BenchReport& r : reports) {
        std::snprintf(line, sizeof line, "%-20s %-5s %14.1f %12.1f %14.1f %10.2f\n",
                      r.algorithm.c_str(), direction_name(r.direction).c_str(), r.total_ns,
                      r.scan_ns, r.adjusted_ns, r.relative);
        out += line;
    }
    return out;
}

std::string format_csv(const std::vector<BenchReport>& reports) {
    std::string out = "algorithm,direction,total_ns,scan_ns,adjusted_ns,relative\n";
    char line[160];
    for (const BenchReport& r : reports) {
        std::snprintf(line, sizeof line, "%s,%s,%.1f,%.1f,%.1f,%.4f\n", r.algorithm.c_str(),
                      direction_name(r.direction).c_str(), r.total_ns, r.scan_ns, r.adjusted_ns,
                      r.relative);
        out += line;
    }
    return out;
}

}  // namespace eaf::bench
