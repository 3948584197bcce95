#include "eaf/fast.hpp"

#include <algorithm>
#include <string>

#include "eaf/rng.hpp"

namespace eaf {

namespace {

using i128 = __int128;

// O(delta) searches walk every residue class; cap the divisor so a single
// call stays well under a second.
constexpr std::int64_t kMaxSearchDelta = std::int64_t{1} << 26;
constexpr std::uint32_t kMaxShift = 62;

// Euclidean quotient/remainder for d > 0.
i128 floor_div(i128 n, i128 d) {
    i128 q = n / d;
    if (n % d < 0) {
        --q;
    }
    return q;
}

i128 floor_mod(i128 n, i128 d) {
    i128 r = n % d;
    if (r < 0) {
        r += d;
    }
    return r;
}

i128 mul_checked(i128 a, i128 b) {
    i128 out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("fast-eaf search: 128-bit intermediate overflow");
    }
    return out;
}

std::int64_t narrow_i64(i128 v, const char* what) {
    if (v < i128(std::numeric_limits<std::int64_t>::min()) ||
        v > i128(std::numeric_limits<std::int64_t>::max())) {
        throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

std::uint64_t narrow_u64(i128 v, const char* what) {
    if (v < 0 || v > i128(std::numeric_limits<std::uint64_t>::max())) {
        throw std::overflow_error(std::string(what) + " does not fit in unsigned 64 bits");
    }
    return static_cast<std::uint64_t>(v);
}

void check_search_inputs(const Eaf& f, std::uint32_t k) {
    if (f.delta() <= 0) {
        throw std::domain_error("fast-eaf search: requires delta > 0");
    }
    if (f.delta() > kMaxSearchDelta) {
        throw std::domain_error("fast-eaf search: delta too large for the O(delta) search");
    }
    if (k > kMaxShift) {
        throw std::domain_error("fast-eaf search: shift k must be <= 62");
    }
}

i128 eval_wide(const Eaf& f, i128 r) {
    return floor_div(mul_checked(f.alpha(), r) + f.beta(), f.delta());
}

// Shared skeleton of the two searches.  `err(r) = alpha_p*r - 2^k*f(r)`
// drives both the offset pass and the bound pass.
FastEaf run_search(const Eaf& f, std::uint32_t k, Rounding mode) {
    check_search_inputs(f, k);
    const i128 delta = f.delta();
    const i128 two_k = i128(1) << k;
    const i128 scaled_alpha = mul_checked(two_k, f.alpha());

    i128 alpha_p = 0;
    i128 epsilon = 0;
    if (mode == Rounding::Up) {
        alpha_p = floor_div(scaled_alpha, delta) + 1;
        epsilon = delta - floor_mod(scaled_alpha, delta);
    } else {
        epsilon = floor_mod(scaled_alpha, delta);
        if (epsilon == 0) {
            throw std::domain_error(
                "fast_eaf_down: 2^k*alpha is a multiple of delta; "
                "the exact shift reduction applies (see best_fast_eaf)");
        }
        alpha_p = floor_div(scaled_alpha, delta);
    }

    const auto err = [&](i128 r) { return mul_checked(alpha_p, r) - two_k * eval_wide(f, r); };

    // Pass 1: the additive constant comes from the extremal error over one
    // residue period.
    i128 extremal = err(0);
    for (i128 r = 1; r < delta; ++r) {
        const i128 e = err(r);
        if (mode == Rounding::Up ? e < extremal : e > extremal) {
            extremal = e;
        }
    }
    const i128 beta_p = mode == Rounding::Up ? -extremal : two_k - 1 - extremal;

    // Pass 2: per residue, the first failing period index in closed form,
    // then the bound is the smallest failing input overall.
    i128 n_bound = i128(1) << 126;
    for (i128 r = 0; r < delta; ++r) {
        const i128 gap = err(r) + beta_p;
        i128 q = 0;
        if (mode == Rounding::Up) {
            // first p >= 0 with epsilon*p + gap >= 2^k
            q = gap >= two_k ? 0 : floor_div(two_k - gap + epsilon - 1, epsilon);
        } else {
            // first p >= 0 with gap - epsilon*p < 0
            q = gap < 0 ? 0 : gap / epsilon + 1;
        }
        n_bound = std::min(n_bound, mul_checked(delta, q) + r);
    }

    return FastEaf{narrow_i64(alpha_p, "alpha_p"), narrow_i64(beta_p, "beta_p"), k,
                   narrow_u64(n_bound, "n_bound"), narrow_i64(epsilon, "epsilon"), mode};
}

FastEaf exact_reduction(const Eaf& f, std::uint32_t k) {
    const i128 two_k = i128(1) << k;
    const i128 alpha_p = floor_div(mul_checked(two_k, f.alpha()), f.delta());
    const i128 beta_p = floor_div(mul_checked(two_k, f.beta()), f.delta());
    return FastEaf{narrow_i64(alpha_p, "alpha_p"), narrow_i64(beta_p, "beta_p"), k, kUnboundedN,
                   0, Rounding::Down};
}

}  // namespace

namespace {

// Constants may arrive from the CLI or JSON; reject shifts the 128-bit
// evaluation cannot represent before they reach the shift operators.
void check_shift(std::uint32_t k) {
    if (k > kMaxShift) {
        throw std::domain_error("fast form: shift k must be <= 62");
    }
}

}  // namespace

std::int64_t eval_fast(const FastEaf& c, std::int64_t r) {
    check_shift(c.k);
    const i128 t = mul_checked(c.alpha_p, r) + c.beta_p;
    return narrow_i64(t >> c.k, "fast quotient");
}

std::int64_t residual_fast(const FastEaf& c, std::int64_t r) {
    check_shift(c.k);
    const i128 t = mul_checked(c.alpha_p, r) + c.beta_p;
    return narrow_i64(floor_mod(t, i128(1) << c.k), "fast residual");
}

FastEaf fast_eaf_up(const Eaf& f, std::uint32_t k) {
    return run_search(f, k, Rounding::Up);
}

FastEaf fast_eaf_down(const Eaf& f, std::uint32_t k) {
    return run_search(f, k, Rounding::Down);
}

FastEaf best_fast_eaf(const Eaf& f, std::uint32_t k, bool heuristic) {
    check_search_inputs(f, k);
    const i128 scaled_alpha = mul_checked(i128(1) << k, f.alpha());
    const i128 eps_down = floor_mod(scaled_alpha, f.delta());
    if (eps_down == 0) {
        return exact_reduction(f, k);
    }
    if (heuristic) {
        const i128 eps_up = f.delta() - eps_down;
        // Smaller defect tends to validate a longer range; ties go to Up to
        // match the usual compiler choice.
        return eps_up <= eps_down ? fast_eaf_up(f, k) : fast_eaf_down(f, k);
    }
    const FastEaf up = fast_eaf_up(f, k);
    const FastEaf down = fast_eaf_down(f, k);
    return up.n_bound >= down.n_bound ? up : down;
}

DivConstants fast_division(std::int64_t delta, std::uint32_t k) {
    if (delta <= 0) {
        throw std::domain_error("fast_division: requires delta > 0");
    }
    if (k > kMaxShift) {
        throw std::domain_error("fast_division: shift k must be <= 62");
    }
    const i128 two_k = i128(1) << k;
    const i128 alpha_p = two_k / delta + 1;
    const i128 epsilon = delta - two_k % delta;
    if (epsilon > alpha_p) {
        throw std::domain_error(
            "fast_division: unsupported parameters (epsilon > alpha_p); try a larger k");
    }
    const i128 n_bound = mul_checked(floor_div(alpha_p + epsilon - 1, epsilon), delta) - 1;
    return DivConstants{delta, k, narrow_i64(alpha_p, "alpha_p"), narrow_i64(epsilon, "epsilon"),
                        narrow_u64(n_bound, "n_bound")};
}

RemConstants fast_remainder(std::int64_t delta, std::uint32_t k) {
    const DivConstants d = fast_division(delta, k);
    const i128 two_k = i128(1) << k;
    const i128 m_bound = floor_div(two_k + d.epsilon - 1, d.epsilon);
    return RemConstants{delta, k, d.alpha_p, narrow_u64(m_bound, "m_bound")};
}

RemConstants remainder_for_bitwidth(std::int64_t delta, std::uint32_t w, std::uint32_t l_max) {
    if (delta <= 0) {
        throw std::domain_error("remainder_for_bitwidth: requires delta > 0");
    }
    if (w == 0 || w > kMaxShift) {
        throw std::domain_error("remainder_for_bitwidth: requires 0 < w <= 62");
    }
    std::uint64_t best_m = 0;
    for (std::uint32_t l = 0; l <= l_max && w + l <= kMaxShift; ++l) {
        const std::uint32_t k = w + l;
        const i128 two_k = i128(1) << k;
        const i128 epsilon = delta - two_k % delta;
        if (epsilon > (i128(1) << l)) {
            continue;
        }
        // The shortcut inequality guarantees the remainder constants exist
        // and cover [0, 2^w) whenever delta < 2^w; re-check both so that
        // larger divisors are handled too instead of returning bad constants.
        if (epsilon > two_k / delta + 1) {
            continue;
        }
        const RemConstants r = fast_remainder(delta, k);
        if (r.m_bound < (std::uint64_t{1} << w)) {
            best_m = std::max(best_m, r.m_bound);
            continue;
        }
        return r;
    }
    throw NotFoundError("remainder_for_bitwidth: no admissible l <= " + std::to_string(l_max),
                        best_m);
}

MinKResult find_min_k(const Eaf& f, std::uint64_t required_n, std::uint32_t k_max) {
    if (required_n == 0) {
        throw std::domain_error("find_min_k: required_n must be positive");
    }
    if (k_max > kMaxShift) {
        throw std::domain_error("find_min_k: k_max must be <= 62");
    }
    if (f.delta() <= 0) {
        throw std::domain_error("find_min_k: requires delta > 0");
    }
    const bool plain_division = f.alpha() == 1 && f.beta() == 0;
    std::uint64_t best_seen = 0;
    for (std::uint32_t k = 0; k <= k_max; ++k) {
        if (floor_mod(mul_checked(i128(1) << k, f.alpha()), f.delta()) == 0) {
            return MinKResult{k, exact_reduction(f, k)};
        }
        if (plain_division) {
            DivConstants c{};
            try {
                c = fast_division(f.delta(), k);
            } catch (const std::domain_error&) {
                continue;  // epsilon > alpha_p at this k
            }
            best_seen = std::max(best_seen, c.n_bound);
            if (c.n_bound >= required_n) {
                return MinKResult{k, c};
            }
        } else {
            const FastEaf c = best_fast_eaf(f, k);
            best_seen = std::max(best_seen, c.n_bound);
            if (c.n_bound >= required_n) {
                return MinKResult{k, c};
            }
        }
    }
    throw NotFoundError("find_min_k: no k <= " + std::to_string(k_max) +
                            " reaches the required bound (best seen " +
                            std::to_string(best_seen) + ")",
                        best_seen);
}

ResidualCertificate certify_residual(const Eaf& f, const FastEaf& fast, std::int64_t lo,
                                     std::int64_t hi) {
    if (!(f.delta() >= f.alpha() && f.alpha() > 0)) {
        throw std::domain_error("certify_residual: requires delta >= alpha > 0");
    }
    if (lo >= hi) {
        throw std::domain_error("certify_residual: empty interval");
    }
    const Eaf inverse = f.minimal_right_inverse();
    if (inverse.eval(f.eval(lo)) != lo) {
        throw CertificateRefused(
            "certificate refused: interval start is not the minimal preimage of its value");
    }
    if (!(eval_fast(fast, lo - 1) < eval_fast(fast, lo))) {
        throw CertificateRefused(
            "certificate refused: fast form does not step up at the interval start");
    }

    // The caller asserts f == fast on [lo, hi); re-check endpoints plus a
    // deterministic sample (exhaustive when the span is small).
    const auto check = [&](std::int64_t r) {
        if (f.eval(r) != eval_fast(fast, r)) {
            throw CertificateRefused(
                "certificate refused: fast form diverges from the exact form at r = " +
                std::to_string(r));
        }
    };
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
    if (span <= (std::uint64_t{1} << 20)) {
        for (std::int64_t r = lo; r < hi; ++r) {
            check(r);
        }
    } else {
        check(lo);
        check(lo + 1);
        check(hi - 2);
        check(hi - 1);
        SplitMix64 rng(0x5eedc0de);
        for (int i = 0; i < 10000; ++i) {
            check(lo + static_cast<std::int64_t>(rng.bounded(span)));
        }
    }
    return ResidualCertificate{f, fast, lo, hi};
}

std::uint64_t oracle_max_n(const Eaf& f, const FastEaf& candidate, std::uint64_t cap) {
    for (std::uint64_t r = 0; r < cap; ++r) {
        const auto x = static_cast<std::int64_t>(r);
        if (f.eval(x) != eval_fast(candidate, x)) {
            return r;
        }
    }
    return cap;
}

VerifyResult verify_fast_eaf(const Eaf& f, const FastEaf& c, bool exhaustive,
                             std::uint64_t samples, std::uint64_t seed) {
    const auto agree = [&](std::uint64_t r) {
        const auto x = static_cast<std::int64_t>(r);
        return f.eval(x) == eval_fast(c, x);
    };
    if (c.n_bound == 0) {
        return {true, 0};
    }
    // The exact reduction claims every r >= 0; probe a wide fixed window.
    const std::uint64_t limit =
        c.n_bound == kUnboundedN ? (std::uint64_t{1} << 32) : c.n_bound;
    if (exhaustive) {
        if (limit > (std::uint64_t{1} << 32)) {
            throw std::domain_error(
                "verify: bound too large for an exhaustive scan; use sampling");
        }
        const std::uint64_t miss = oracle_max_n(f, c, limit);
        return {miss == limit, miss};
    }
    for (std::uint64_t r : {std::uint64_t{0}, std::uint64_t{1}, limit - 2, limit - 1}) {
        if (r < limit && !agree(r)) {
            return {false, r};
        }
    }
    SplitMix64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::uint64_t r = rng.bounded(limit);
        if (!agree(r)) {
            return {false, r};
        }
    }
    return {true, 0};
}

}  // namespace eaf
