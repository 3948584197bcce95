#pragma once

#include <cstdint>
#include <stdexcept>

namespace eaf {

/// Result of Euclidean division: n = quotient * d + remainder with
/// 0 <= remainder < |d|.  For negative dividends this differs from the
/// truncating division of C++'s built-in operators.
struct DivModResult {
    std::int64_t quotient;
    std::int64_t remainder;

    friend bool operator==(const DivModResult&, const DivModResult&) = default;
};

/// Euclidean quotient and remainder of n by d.
/// Throws std::domain_error if d == 0 and std::overflow_error for the one
/// non-representable case (INT64_MIN / -1).
[[nodiscard]] DivModResult euclidean_divmod(std::int64_t n, std::int64_t d);

[[nodiscard]] std::int64_t euclidean_div(std::int64_t n, std::int64_t d);
[[nodiscard]] std::int64_t euclidean_mod(std::int64_t n, std::int64_t d);

/// A Euclidean affine function f(r) = (alpha*r + beta)/delta, where / is the
/// Euclidean quotient.  Construction only requires delta != 0; operations
/// with stronger needs (delta >= alpha > 0) validate at call time.
class Eaf {
public:
    Eaf(std::int64_t alpha, std::int64_t beta, std::int64_t delta);

    [[nodiscard]] std::int64_t alpha() const { return alpha_; }
    [[nodiscard]] std::int64_t beta() const { return beta_; }
    [[nodiscard]] std::int64_t delta() const { return delta_; }

    /// (alpha*r + beta)/delta.  Throws std::overflow_error if the numerator
    /// does not fit in 64 bits; never wraps silently.
    [[nodiscard]] std::int64_t eval(std::int64_t r) const;

    /// (alpha*r + beta)%delta, the remainder counterpart of eval.
    [[nodiscard]] std::int64_t residual(std::int64_t r) const;

    /// The minimal right inverse g(q) = (delta*q + alpha - beta - 1)/alpha,
    /// i.e. the smallest r with eval(r) = q.  Requires delta >= alpha > 0;
    /// throws std::domain_error naming the violated constraint otherwise.
    [[nodiscard]] Eaf minimal_right_inverse() const;

    friend bool operator==(const Eaf&, const Eaf&) = default;

private:
    std::int64_t alpha_;
    std::int64_t beta_;
    std::int64_t delta_;
};

}  // namespace eaf
