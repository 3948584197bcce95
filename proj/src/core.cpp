#include "eaf/core.hpp"

#include <limits>
#include <string>

namespace eaf {

DivModResult euclidean_divmod(std::int64_t n, std::int64_t d) {
    if (d == 0) {
        throw std::domain_error("euclidean_divmod: divisor is zero");
    }
    if (n == std::numeric_limits<std::int64_t>::min() && d == -1) {
        throw std::overflow_error("euclidean_divmod: quotient does not fit in 64 bits");
    }
    std::int64_t q = n / d;
    std::int64_t r = n % d;
    if (r < 0) {
        if (d > 0) {
            r += d;
            q -= 1;
        } else {
            r -= d;
            q += 1;
        }
    }
    return {q, r};
}

std::int64_t euclidean_div(std::int64_t n, std::int64_t d) {
    return euclidean_divmod(n, d).quotient;
}

std::int64_t euclidean_mod(std::int64_t n, std::int64_t d) {
    return euclidean_divmod(n, d).remainder;
}

namespace {

std::int64_t checked_affine(std::int64_t a, std::int64_t r, std::int64_t b) {
    std::int64_t prod = 0;
    std::int64_t sum = 0;
    if (__builtin_mul_overflow(a, r, &prod) || __builtin_add_overflow(prod, b, &sum)) {
        throw std::overflow_error("Eaf: alpha*r + beta does not fit in 64 bits");
    }
    return sum;
}

}  // namespace

Eaf::Eaf(std::int64_t alpha, std::int64_t beta, std::int64_t delta)
    : alpha_(alpha), beta_(beta), delta_(delta) {
    if (delta == 0) {
        throw std::domain_error("Eaf: delta must be nonzero");
    }
}

std::int64_t Eaf::eval(std::int64_t r) const {
    return euclidean_divmod(checked_affine(alpha_, r, beta_), delta_).quotient;
}

std::int64_t Eaf::residual(std::int64_t r) const {
    return euclidean_divmod(checked_affine(alpha_, r, beta_), delta_).remainder;
}

Eaf Eaf::minimal_right_inverse() const {
    if (alpha_ <= 0) {
        throw std::domain_error("minimal_right_inverse: requires alpha > 0, got alpha = " +
                                std::to_string(alpha_));
    }
    if (delta_ < alpha_) {
        throw std::domain_error("minimal_right_inverse: requires delta >= alpha, got delta = " +
                                std::to_string(delta_) + ", alpha = " + std::to_string(alpha_));
    }
    std::int64_t b = 0;
    if (__builtin_sub_overflow(alpha_ - 1, beta_, &b)) {
        throw std::overflow_error("minimal_right_inverse: alpha - beta - 1 does not fit in 64 bits");
    }
    return Eaf(delta_, b, alpha_);
}

}  // namespace eaf
