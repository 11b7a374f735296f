#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "tailbounds/pmf.hpp"
#include "tailbounds/rational.hpp"

namespace tailbounds {

/// Convex combination of discrete uniforms on {0..i}, keyed by i.
///
/// Represents X through P(X = k) = sum_{i >= k} d_i / (i + 1). Zero-weight
/// atoms are never stored.
struct UniformMixture {
    std::map<std::int64_t, Rational> atoms;

    friend bool operator==(const UniformMixture&, const UniformMixture&) = default;
};

/// Convex combination of discrete uniforms on {l..r}, keyed by (l, r). All
/// intervals share a common point, so the mixture is unimodal.
struct IntervalMixture {
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> atoms;

    friend bool operator==(const IntervalMixture&, const IntervalMixture&) = default;
};

/// Throws ValidationError unless indices are >= 0, weights > 0, and sum is 1.
void validate(const UniformMixture& m);
/// Throws ValidationError unless l <= r, weights > 0, sum is 1, and the
/// intervals intersect.
void validate(const IntervalMixture& m);

/// E[D] = sum i * d_i. The represented X has mean E[D] / 2.
Rational mixture_index_mean(const UniformMixture& m);

/// P(X >= a) for the X represented by `m`, without materializing the pmf.
Rational mixture_tail(const UniformMixture& m, std::int64_t a);

/// Requires a decreasing pmf; throws ShapeError otherwise. A negative
/// coefficient (i+1)(p_i - p_{i+1}) is how a non-decreasing input is detected.
UniformMixture to_uniform_mixture(const Pmf& p);
Pmf from_uniform_mixture(const UniformMixture& m);

/// Layer decomposition over the super-level sets of a unimodal pmf. Throws
/// ShapeError for non-unimodal input.
IntervalMixture unimodal_to_interval_mixture(const Pmf& p);
Pmf from_interval_mixture(const IntervalMixture& m);

// Mean-preserving transforms that push a decreasing distribution toward the
// worst case for P(X >= a). Each `*_step` performs a single move and returns
// nullopt at a fixed point; the loop versions iterate to the fixed point.

/// One head-flattening move at the smallest i in {1..a-1} with p_{i+1} < p_i:
/// with g = p_i - p_{i+1}, add g*i/(i+2) at 0 and at i+1, and take 2g/(i+2)
/// off each of 1..i.
std::optional<Pmf> flatten_head_step(const Pmf& p, std::int64_t a);

/// Flattens until p_1 = ... = p_a. Requires a decreasing pmf and a >= 1.
Pmf flatten_head(const Pmf& p, std::int64_t a);

/// Moves min(d_i, d_j) from i to i+1 and from j to j-1, for the smallest
/// i >= a and largest j >= i + 2 carrying weight.
std::optional<UniformMixture> merge_tail_step(const UniformMixture& m, std::int64_t a);

/// Iterates merge_tail_step. Throws std::logic_error if the iteration cap
/// (support size squared) is exceeded.
UniformMixture merge_tail_atoms(const UniformMixture& m, std::int64_t a);

/// Collapses a mixture supported on {0, i, i+1} (i >= a) to at most two
/// atoms along the mean-preserving direction (-1/i, 1 + 1/i, -1), taken in
/// whichever sign does not lower P(X >= a). Throws ValidationError when the
/// support is not of that form.
UniformMixture reduce_three_atoms(const UniformMixture& m, std::int64_t a);

} // namespace tailbounds
