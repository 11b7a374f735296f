#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tailbounds/pmf.hpp"
#include "tailbounds/rational.hpp"

namespace tailbounds {

enum class Formula {
    MarkovClassical,
    ChebyshevClassical,
    MarkovDecreasingDiscrete,
    ChebyshevUnimodalDiscrete,
    MarkovContinuousDecreasing,
    ChebyshevContinuousUnimodal,
};

std::string_view formula_name(Formula f);

enum class TailMode { OneSidedUpper, TwoSided };

/// Exact for discrete formulas, double for the continuous reference formulas.
using BoundValue = std::variant<Rational, double>;

double to_double(const BoundValue& v);

/// Raw right-hand side of a tail inequality. The value is never clamped to 1.
struct BoundResult {
    Formula formula;
    BoundValue value;
    // Preconditions checked against the data.
    std::vector<std::string> verified;
    // Preconditions the caller vouches for but that cannot be checked here.
    std::vector<std::string> asserted;
};

/// P(X >= a) <= mu / a for nonnegative X.
BoundResult markov_classical(const Rational& mu, const Rational& a);

/// P(|X - E X| >= a) <= var / a^2.
BoundResult chebyshev_classical(const Rational& var, const Rational& a);

/// P(X >= a) <= mu / (2a - 1) for X on {0, 1, ...} with a decreasing pmf and
/// integer a >= 1.
BoundResult markov_decreasing(const Rational& mu, std::int64_t a);

/// P(|X - E X| >= a) <= (var + 1/12) / (2 (a - 1/2)^2) for integer X with a
/// unimodal pmf and integer a >= 1.
BoundResult chebyshev_unimodal(const Rational& var, std::int64_t a);

/// mu / (2a): continuous nonnegative X with decreasing density.
BoundResult markov_continuous_decreasing(double mu, double a);

/// var / (2 a^2): continuous X whose density decreases on [a/2, 3a/2] and
/// increases on [-3a/2, -a/2] about the mean.
BoundResult chebyshev_continuous_unimodal(double var, double a);

/// Every bound whose preconditions hold for `p`, sorted by value, best first.
/// Classical Markov is offered when the support is nonnegative; classical
/// Chebyshev always. Ties keep the sharpened formula first.
std::vector<BoundResult> best_bound(const Pmf& p, std::int64_t a, TailMode mode);

} // namespace tailbounds
