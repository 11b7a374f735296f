#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tailbounds/decompose.hpp"
#include "tailbounds/pmf.hpp"
#include "tailbounds/rational.hpp"

namespace tailbounds {

enum class ExtremalKind { DiscreteTwoAtom, ContinuousEpsilonMixture };

/// Worst case for P(X >= a) among decreasing pmfs with mean mu: a point mass
/// at 0 mixed with uniform{0..top}.
struct DiscreteExtremal {
    std::int64_t a = 1;
    Rational mu;
    std::int64_t top = 1;  // 2a - 1, or 2a - 2 for the alternate maximizer
    UniformMixture mixture;
    Rational achieved_tail;
    Rational bound_value;  // mu / (2a - 1)
};

/// X = (1 - B) U[0, eps] + B U[0, 2a] with B ~ Bernoulli(p).
struct ContinuousExtremal {
    double a = 1;
    double mu = 0;
    double epsilon = 0;
    double p = 0;
    double achieved_tail = 0;  // (mu - eps/2) / (2a - eps)
    double bound_value = 0;    // mu / (2a)
};

enum class ExtremalTop { Upper, Lower };

/// Feasible for 0 < mu <= (2a - 1) / 2 (Upper) or 0 < mu <= a - 1 (Lower,
/// a >= 2); throws InfeasibleError otherwise.
DiscreteExtremal extremal_markov_discrete(std::int64_t a, const Rational& mu,
                                          ExtremalTop top = ExtremalTop::Upper);

/// Requires 0 < eps < a and eps/2 <= mu <= a.
ContinuousExtremal extremal_markov_continuous(double a, double mu, double epsilon);

template <typename Argmax>
struct OracleResult {
    Rational max_tail;
    Argmax argmax;
    std::uint64_t enumerated = 0;  // candidate bases examined
};

/// max P(X >= a) over decreasing pmfs on {0..N} with mean exactly mu, by
/// enumerating every basis of the two-row LP in uniform-mixture coordinates.
/// Throws InfeasibleError unless 0 <= mu <= N/2.
OracleResult<UniformMixture> lp_max_tail_decreasing(std::int64_t a, const Rational& mu, std::int64_t n);

/// max P(|X - mu| >= a) over unimodal pmfs on the integers within distance
/// `radius` of mu, with mean mu and variance var. Works in interval-mixture
/// coordinates: every set of at most three intervals with a common point is
/// a candidate basis. Throws InfeasibleError when no such pmf exists.
OracleResult<IntervalMixture> lp_max_two_sided_unimodal(std::int64_t a, const Rational& mu,
                                                        const Rational& var, std::int64_t radius);

enum class CellStatus {
    Tight,       // two-atom construction fits: oracle must equal the bound
    Slack,       // mu above the construction cap: oracle must stay below
    Infeasible,  // no decreasing pmf on {0..N} has this mean
};

struct TightnessRow {
    std::int64_t a = 1;
    Rational mu;
    std::optional<Rational> oracle;
    Rational bound;
    bool equal = false;
    CellStatus status = CellStatus::Infeasible;
};

/// One row per (a, mu) cell. Throws SoundnessViolation if any oracle value
/// exceeds mu / (2a - 1).
std::vector<TightnessRow> verify_tightness_theorem2(std::int64_t a_first, std::int64_t a_last,
                                                    const std::vector<Rational>& mu_grid, std::int64_t n);

} // namespace tailbounds
