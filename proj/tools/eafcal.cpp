// eafcal: constant search, verification, date conversion and benchmarks on
// top of the EAF library.  Division and remainder follow the Euclidean
// convention (remainders are never negative), which differs from hardware
// truncating division for negative operands.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eaf/bench.hpp"
#include "eaf/calendar.hpp"
#include "eaf/core.hpp"
#include "eaf/fast.hpp"
#include "eaf/serialize.hpp"

namespace {

using nlohmann::json;

void print_fast_eaf(const eaf::FastEaf& c, bool as_json) {
    if (as_json) {
        std::cout << json(c).dump() << "\n";
        return;
    }
    std::cout << "rounding: " << (c.rounding == eaf::Rounding::Up ? "up" : "down")
              << (c.epsilon == 0 ? " (exact)" : "") << "\n"
              << "alpha_p:  " << c.alpha_p << "\n"
              << "beta_p:   " << c.beta_p << "\n"
              << "k:        " << c.k << "\n"
              << "epsilon:  " << c.epsilon << "\n";
    if (c.n_bound == eaf::kUnboundedN) {
        std::cout << "n_bound:  unbounded\n";
    } else {
        std::cout << "n_bound:  " << c.n_bound << "\n";
    }
}

void print_div(const eaf::DivConstants& c, bool as_json) {
    if (as_json) {
        std::cout << json(c).dump() << "\n";
        return;
    }
    std::cout << "delta:    " << c.delta << "\n"
              << "k:        " << c.k << "\n"
              << "alpha_p:  " << c.alpha_p << "\n"
              << "epsilon:  " << c.epsilon << "\n"
              << "n_bound:  " << c.n_bound << "\n";
}

void print_rem(const eaf::RemConstants& c, bool as_json) {
    if (as_json) {
        std::cout << json(c).dump() << "\n";
        return;
    }
    std::cout << "delta:    " << c.delta << "\n"
              << "k:        " << c.k << "\n"
              << "alpha_p:  " << c.alpha_p << "\n"
              << "m_bound:  " << c.m_bound << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euclidean affine function toolkit: multiply-shift constants "
                 "with proven validity ranges, and a Gregorian calendar engine "
                 "built from them"};
    app.require_subcommand(1);

    // find-div ---------------------------------------------------------
    auto* find_div = app.add_subcommand("find-div", "Multiply-shift constants for n/delta");
    std::int64_t fd_delta = 0;
    std::uint32_t fd_k = 0;
    std::uint64_t fd_min_n = 0;
    std::uint32_t fd_k_max = 62;
    bool fd_json = false;
    find_div->add_option("delta", fd_delta, "divisor")->required();
    auto* fd_k_opt = find_div->add_option("--k", fd_k, "shift exponent");
    auto* fd_min_opt =
        find_div->add_option("--min-n", fd_min_n, "find the smallest k valid on [0, N)");
    find_div->add_option("--k-max", fd_k_max, "largest shift tried with --min-n");
    find_div->add_flag("--json", fd_json, "print as JSON");
    fd_k_opt->excludes(fd_min_opt);

    // find-eaf ---------------------------------------------------------
    auto* find_eaf =
        app.add_subcommand("find-eaf", "Multiply-shift constants for (alpha*r + beta)/delta");
    std::int64_t fe_alpha = 0, fe_beta = 0, fe_delta = 0;
    std::uint32_t fe_k = 0;
    std::string fe_rounding = "best";
    bool fe_heuristic = false;
    bool fe_json = false;
    find_eaf->add_option("alpha", fe_alpha, "slope numerator")->required();
    find_eaf->add_option("beta", fe_beta, "offset numerator")->required();
    find_eaf->add_option("delta", fe_delta, "divisor")->required();
    find_eaf->add_option("--k", fe_k, "shift exponent")->required();
    find_eaf->add_option("--rounding", fe_rounding, "up, down or best")
        ->check(CLI::IsMember({"up", "down", "best"}));
    find_eaf->add_flag("--heuristic", fe_heuristic,
                       "with best: pick by smaller epsilon instead of searching both");
    find_eaf->add_flag("--json", fe_json, "print as JSON");

    // find-rem ---------------------------------------------------------
    auto* find_rem =
        app.add_subcommand("find-rem", "Constants for direct remainder computation n%delta");
    std::int64_t fr_delta = 0;
    std::uint32_t fr_k = 0, fr_w = 0, fr_l_max = 32;
    bool fr_json = false;
    find_rem->add_option("delta", fr_delta, "divisor")->required();
    auto* fr_k_opt = find_rem->add_option("--k", fr_k, "shift exponent");
    auto* fr_w_opt = find_rem->add_option(
        "--bitwidth", fr_w, "find the smallest shift covering all w-bit inputs");
    find_rem->add_option("--l-max", fr_l_max, "largest extra shift tried with --bitwidth");
    find_rem->add_flag("--json", fr_json, "print as JSON");
    fr_k_opt->excludes(fr_w_opt);

    // verify -----------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "Check claimed constants against the exact function by scanning");
    std::int64_t v_alpha = 0, v_beta = 0, v_delta = 0;
    std::int64_t v_alpha_p = 0, v_beta_p = 0;
    std::uint32_t v_k = 0;
    std::uint64_t v_n = 0;
    bool v_exhaustive = false;
    std::uint64_t v_samples = 100000;
    verify->add_option("alpha", v_alpha, "slope numerator")->required();
    verify->add_option("beta", v_beta, "offset numerator")->required();
    verify->add_option("delta", v_delta, "divisor")->required();
    verify->add_option("--alpha-p", v_alpha_p, "claimed multiplier")->required();
    verify->add_option("--beta-p", v_beta_p, "claimed additive constant")->required();
    verify->add_option("--k", v_k, "claimed shift")->required();
    verify->add_option("--n", v_n, "claimed validity bound (exclusive)")->required();
    auto* v_ex_opt = verify->add_flag("--exhaustive", v_exhaustive, "scan every r in [0, N)");
    verify->add_option("--samples", v_samples, "sample count (default mode)")
        ->excludes(v_ex_opt);

    // to-rata / from-rata ------------------------------------------------
    auto* to_rata = app.add_subcommand("to-rata", "Date (YYYY-MM-DD) to rata die");
    std::string tr_date;
    to_rata->add_option("date", tr_date, "ISO 8601 date, optionally signed")->required();

    auto* from_rata = app.add_subcommand("from-rata", "Rata die to date");
    std::int64_t fr_value = 0;
    from_rata->add_option("value", fr_value, "day count relative to 1970-01-01")->required();

    // bench --------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Time the conversion algorithms");
    std::string b_direction = "both";
    std::size_t b_count = 16384;
    std::uint64_t b_seed = 1;
    int b_runs = 9;
    bool b_csv = false;
    bench->add_option("--direction", b_direction, "both, to or from")
        ->check(CLI::IsMember({"both", "to", "from"}));
    bench->add_option("--count", b_count, "inputs per direction (default 16384)");
    bench->add_option("--seed", b_seed, "input generator seed");
    bench->add_option("--runs", b_runs, "measurement runs per loop (median reported)");
    bench->add_flag("--csv", b_csv, "CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (find_div->parsed()) {
            if (fd_min_opt->count() > 0) {
                const auto r = eaf::find_min_k(eaf::Eaf(1, 0, fd_delta), fd_min_n, fd_k_max);
                if (!fd_json) {
                    std::cout << "k:        " << r.k << "\n";
                }
                if (std::holds_alternative<eaf::DivConstants>(r.constants)) {
                    print_div(std::get<eaf::DivConstants>(r.constants), fd_json);
                } else {
                    print_fast_eaf(std::get<eaf::FastEaf>(r.constants), fd_json);
                }
            } else if (fd_k_opt->count() > 0) {
                print_div(eaf::fast_division(fd_delta, fd_k), fd_json);
            } else {
                std::cerr << "find-div: one of --k or --min-n is required\n";
                return 2;
            }
        } else if (find_eaf->parsed()) {
            const eaf::Eaf f(fe_alpha, fe_beta, fe_delta);
            eaf::FastEaf c{};
            if (fe_rounding == "up") {
                c = eaf::fast_eaf_up(f, fe_k);
            } else if (fe_rounding == "down") {
                c = eaf::fast_eaf_down(f, fe_k);
            } else {
                c = eaf::best_fast_eaf(f, fe_k, fe_heuristic);
            }
            print_fast_eaf(c, fe_json);
        } else if (find_rem->parsed()) {
            if (fr_w_opt->count() > 0) {
                print_rem(eaf::remainder_for_bitwidth(fr_delta, fr_w, fr_l_max), fr_json);
            } else if (fr_k_opt->count() > 0) {
                print_rem(eaf::fast_remainder(fr_delta, fr_k), fr_json);
            } else {
                std::cerr << "find-rem: one of --k or --bitwidth is required\n";
                return 2;
            }
        } else if (verify->parsed()) {
            const eaf::Eaf f(v_alpha, v_beta, v_delta);
            const eaf::FastEaf claimed{v_alpha_p, v_beta_p, v_k, v_n, 0, eaf::Rounding::Up};
            const auto r = eaf::verify_fast_eaf(f, claimed, v_exhaustive, v_samples);
            if (r.ok) {
                std::cout << "ok: (" << v_alpha << "*r + " << v_beta << ")/" << v_delta
                          << " == (" << v_alpha_p << "*r + " << v_beta_p << ")/2^" << v_k
                          << " on [0, " << v_n << ")\n";
            } else {
                const eaf::Eaf check(v_alpha, v_beta, v_delta);
                std::cout << "counterexample: r = " << r.counterexample << ", exact "
                          << check.eval(static_cast<std::int64_t>(r.counterexample))
                          << " != fast "
                          << eaf::eval_fast(claimed,
                                            static_cast<std::int64_t>(r.counterexample))
                          << "\n";
                return 1;
            }
        } else if (to_rata->parsed()) {
            const auto d = eaf::cal::parse_date(tr_date);
            std::cout << eaf::cal::to_rata_die(eaf::cal::CalendarConfig::unix_epoch(), d)
                      << "\n";
        } else if (from_rata->parsed()) {
            const auto& cfg = eaf::cal::CalendarConfig::unix_epoch();
            if (fr_value < cfg.min_rata_die() || fr_value > cfg.max_rata_die()) {
                throw std::domain_error("from-rata: value out of supported range");
            }
            std::cout << eaf::cal::format_date(
                             eaf::cal::from_rata_die(cfg, static_cast<eaf::cal::RataDie>(fr_value)))
                      << "\n";
        } else if (bench->parsed()) {
            std::vector<eaf::bench::Direction> dirs;
            if (b_direction != "from") {
                dirs.push_back(eaf::bench::Direction::ToRata);
            }
            if (b_direction != "to") {
                dirs.push_back(eaf::bench::Direction::FromRata);
            }
            const std::vector<std::string> names = {"fast", "division-baseline",
                                                    "table-baseline"};
            std::vector<eaf::bench::BenchReport> all;
            for (const auto dir : dirs) {
                auto rep = eaf::bench::run_bench(dir, names, b_runs, b_count, b_seed);
                all.insert(all.end(), rep.begin(), rep.end());
            }
            std::cout << (b_csv ? eaf::bench::format_csv(all) : eaf::bench::format_table(all));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
