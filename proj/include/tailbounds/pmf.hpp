#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tailbounds/rational.hpp"

namespace tailbounds {

/// Finite-support probability mass function on the integers.
///
/// Weights are exact, nonnegative, and sum to exactly one. The first and last
/// stored weights are nonzero, so `offset()` is the smallest support point and
/// two Pmfs describe the same distribution iff they compare equal.
class Pmf {
public:
    /// Builds a canonical Pmf, rescaling by the exact sum when it is not 1.
    /// Throws ValidationError on empty, negative, or all-zero weights.
    static Pmf make(std::int64_t offset, std::vector<Rational> weights);

    /// Uniform on {lo, ..., hi}.
    static Pmf uniform(std::int64_t lo, std::int64_t hi);
    static Pmf point(std::int64_t k);

    std::int64_t offset() const noexcept { return offset_; }
    std::int64_t max_support() const noexcept {
        return offset_ + static_cast<std::int64_t>(weights_.size()) - 1;
    }
    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const Rational> weights() const noexcept { return weights_; }

    /// P(X = x); zero outside the support.
    Rational at(std::int64_t x) const;

    friend bool operator==(const Pmf&, const Pmf&) = default;

private:
    Pmf(std::int64_t offset, std::vector<Rational> weights)
        : offset_(offset), weights_(std::move(weights)) {}

    std::int64_t offset_ = 0;
    std::vector<Rational> weights_;
};

struct ShapeReport {
    bool is_decreasing = false;
    bool is_unimodal = false;
    // Smallest support point m with weights nondecreasing up to m and
    // nonincreasing after it.
    std::optional<std::int64_t> mode;
};

Rational mean(const Pmf& p);
Rational variance(const Pmf& p);

/// P(X >= a).
Rational tail(const Pmf& p, std::int64_t a);

/// P(|X - E[X]| >= a). Throws DomainError unless a > 0.
Rational two_sided_tail(const Pmf& p, const Rational& a);

ShapeReport shape(const Pmf& p);

} // namespace tailbounds
