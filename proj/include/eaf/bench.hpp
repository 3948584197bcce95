#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eaf/calendar.hpp"

namespace eaf::bench {

enum class Direction { ToRata, FromRata };

[[nodiscard]] std::string direction_name(Direction d);

/// One timing row.  total_ns and scan_ns are the median wall time of a full
/// pass over the input array; adjusted_ns = total_ns - scan_ns isolates the
/// conversion work; relative is against the reference algorithm's adjusted
/// time.
struct BenchReport {
    std::string algorithm;
    Direction direction;
    double total_ns;
    double scan_ns;
    double adjusted_ns;
    double relative;
};

/// A registered conversion pair.  All algorithms use the default Unix-epoch
/// configuration and must agree output-for-output on every benchmark input.
struct Algorithm {
    const char* name;
    cal::RataDie (*to_rata)(const cal::Date&);
    cal::Date (*from_rata)(cal::RataDie);
};

/// Registered algorithms: "fast" (the multiply-shift engine),
/// "division-baseline" (the same cascade with plain divisions) and
/// "table-baseline" (cumulative month table forward, linear search back).
[[nodiscard]] const std::vector<Algorithm>& algorithms();

/// `count` dates drawn uniformly from [1570-01-01, 2370-01-01), reproducible
/// for a fixed seed.  Dates are materialised through an independent
/// day-walking conversion, not the engine under test.
[[nodiscard]] std::vector<cal::Date> gen_dates(std::uint64_t seed, std::size_t count);

/// `count` day numbers drawn uniformly from [-146097, 146097).
[[nodiscard]] std::vector<cal::RataDie> gen_rata(std::uint64_t seed, std::size_t count);

/// Times each named algorithm over the same generated inputs.  Every measured
/// loop is repeated until it runs for at least 10 ms and the median of `runs`
/// samples is reported; the scan-only time over the inputs is measured the
/// same way and subtracted.  Refuses to run concurrently with itself.
[[nodiscard]] std::vector<BenchReport> run_bench(Direction direction,
                                                 const std::vector<std::string>& names,
                                                 int runs = 9, std::size_t count = 16384,
                                                 std::uint64_t seed = 1);

[[nodiscard]] std::string format_table(const std::vector<BenchReport>& reports);

/// CSV with header algorithm,direction,total_ns,scan_ns,adjusted_ns,relative.
[[nodiscard]] std::string format_csv(const std::vector<BenchReport>& reports);

}  // namespace eaf::bench
