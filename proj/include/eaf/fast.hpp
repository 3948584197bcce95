#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>

#include "eaf/core.hpp"

namespace eaf {

enum class Rounding { Up, Down };

/// n_bound value meaning "valid for every r >= 0": used for the exact
/// power-of-two reduction, where the multiply-shift form is not an
/// approximation at all.
inline constexpr std::uint64_t kUnboundedN = std::numeric_limits<std::uint64_t>::max();

/// A multiply-shift form (alpha_p*r + beta_p)/2^k proved equal to some EAF on
/// [0, n_bound).  epsilon is the rounding defect of the multiplier:
///   Up:   alpha_p = 2^k*alpha/delta + 1, epsilon = delta - 2^k*alpha%delta
///   Down: alpha_p = 2^k*alpha/delta,     epsilon = 2^k*alpha%delta
/// epsilon == 0 marks the exact reduction available when 2^k*alpha%delta == 0;
/// in that case n_bound is kUnboundedN.
struct FastEaf {
    std::int64_t alpha_p;
    std::int64_t beta_p;
    std::uint32_t k;
    std::uint64_t n_bound;
    std::int64_t epsilon;
    Rounding rounding;

    friend bool operator==(const FastEaf&, const FastEaf&) = default;
};

/// Round-up constants for plain division n/delta: alpha_p*delta = 2^k + epsilon
/// and n/delta = alpha_p*n/2^k for all n in [0, n_bound).
struct DivConstants {
    std::int64_t delta;
    std::uint32_t k;
    std::int64_t alpha_p;
    std::int64_t epsilon;
    std::uint64_t n_bound;

    friend bool operator==(const DivConstants&, const DivConstants&) = default;
};

/// Constants for direct remainder computation:
/// n%delta = delta*(alpha_p*n%2^k)/2^k for all n in [0, m_bound).
struct RemConstants {
    std::int64_t delta;
    std::uint32_t k;
    std::int64_t alpha_p;
    std::uint64_t m_bound;

    friend bool operator==(const RemConstants&, const RemConstants&) = default;
};

/// Witness that the residual of f may be read off the residual of its fast
/// form: residual(f, r)/alpha == residual_fast(fast, r)/alpha_p on [lo, hi).
struct ResidualCertificate {
    Eaf f;
    FastEaf fast;
    std::int64_t lo;
    std::int64_t hi;
};

/// Thrown when a search exhausts its parameter space; best_n carries the
/// largest validity bound that was seen.
class NotFoundError : public std::runtime_error {
public:
    NotFoundError(const std::string& msg, std::uint64_t best_n)
        : std::runtime_error(msg), best_n_(best_n) {}
    [[nodiscard]] std::uint64_t best_n() const { return best_n_; }

private:
    std::uint64_t best_n_;
};

/// Thrown by certify_residual when one of its hypotheses fails; the message
/// names the failed hypothesis.
class CertificateRefused : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// (alpha_p*r + beta_p)/2^k under Euclidean division, evaluated in 128 bits.
[[nodiscard]] std::int64_t eval_fast(const FastEaf& c, std::int64_t r);

/// (alpha_p*r + beta_p)%2^k, always in [0, 2^k).
[[nodiscard]] std::int64_t residual_fast(const FastEaf& c, std::int64_t r);

/// Round-up multiply-shift form for f at shift k (delta > 0).  beta_p and the
/// validity bound come from an O(delta) search; n_bound may be 0 when no
/// positive range validates.
[[nodiscard]] FastEaf fast_eaf_up(const Eaf& f, std::uint32_t k);

/// Round-down counterpart; additionally requires 2^k*alpha%delta > 0 (when it
/// is zero the exact shift reduction applies instead and this throws).
[[nodiscard]] FastEaf fast_eaf_down(const Eaf& f, std::uint32_t k);

/// Picks between the round-up and round-down forms.  Exact mode runs both
/// searches and keeps the larger n_bound (ties go to Up); heuristic mode
/// selects by smaller epsilon without searching twice.  When 2^k*alpha%delta
/// == 0 returns the exact reduction with n_bound = kUnboundedN.
[[nodiscard]] FastEaf best_fast_eaf(const Eaf& f, std::uint32_t k, bool heuristic = false);

/// O(1) round-up constants for plain division by delta.  Requires
/// epsilon <= alpha_p; throws std::domain_error suggesting a larger k
/// otherwise.
[[nodiscard]] DivConstants fast_division(std::int64_t delta, std::uint32_t k);

/// Constants for direct remainder computation, m_bound = ceil(2^k/epsilon).
[[nodiscard]] RemConstants fast_remainder(std::int64_t delta, std::uint32_t k);

/// Smallest l <= l_max such that the constants at k = w + l compute n%delta
/// for every n in [0, 2^w).  Throws NotFoundError when no l qualifies.
[[nodiscard]] RemConstants remainder_for_bitwidth(std::int64_t delta, std::uint32_t w,
                                                  std::uint32_t l_max);

struct MinKResult {
    std::uint32_t k;
    std::variant<DivConstants, FastEaf> constants;
};

/// Smallest k <= k_max whose constants are valid on [0, required_n).  Uses the
/// O(1) division path when f is r/delta, the full search otherwise.  Throws
/// NotFoundError carrying the best bound seen when no k suffices.
[[nodiscard]] MinKResult find_min_k(const Eaf& f, std::uint64_t required_n, std::uint32_t k_max);

/// Verifies the hypotheses of the residual transfer: lo is the minimal
/// preimage of its value under f, the fast form steps up at lo, and f agrees
/// with the fast form on [lo, hi) (exhaustively for small spans, sampled plus
/// endpoints otherwise).  Throws CertificateRefused naming the failed
/// hypothesis.
[[nodiscard]] ResidualCertificate certify_residual(const Eaf& f, const FastEaf& fast,
                                                   std::int64_t lo, std::int64_t hi);

/// Independent scan oracle: smallest r in [0, cap) where f and the candidate
/// disagree, or cap when they agree everywhere below it.
[[nodiscard]] std::uint64_t oracle_max_n(const Eaf& f, const FastEaf& candidate,
                                         std::uint64_t cap);

struct VerifyResult {
    bool ok;
    std::uint64_t counterexample;  // meaningful only when !ok
};

/// Checks the claimed bound of a fast form against f: exhaustively over
/// [0, n_bound) or, when exhaustive is false, at `samples` uniform points plus
/// the boundary points {0, 1, n_bound-2, n_bound-1}.
[[nodiscard]] VerifyResult verify_fast_eaf(const Eaf& f, const FastEaf& c, bool exhaustive,
                                           std::uint64_t samples = 100000, std::uint64_t seed = 1);

}  // namespace eaf
