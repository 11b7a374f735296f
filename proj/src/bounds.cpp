#include "tailbounds/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "tailbounds/errors.hpp"

namespace tailbounds {

namespace {

void require_positive(const Rational& a, std::string_view op) {
    if (a <= 0)
        throw DomainError(std::string(op) + " needs a > 0, got " + to_string(a));
}

void require_positive(double a, std::string_view op) {
    if (!(a > 0) || !std::isfinite(a))
        throw DomainError(std::string(op) + " needs a > 0, got " + format_double(a));
}

void require_at_least_one(std::int64_t a, std::string_view op) {
    if (a < 1)
        throw DomainError(std::string(op) + " needs integer a >= 1, got " + std::to_string(a));
}

template <typename T>
void require_nonnegative(const T& v, std::string_view what, std::string_view op) {
    if (v < 0)
        throw DomainError(std::string(op) + " needs " + std::string(what) + " >= 0");
}

} // namespace

std::string_view formula_name(Formula f) {
    switch (f) {
    case Formula::MarkovClassical: return "MarkovClassical";
    case Formula::ChebyshevClassical: return "ChebyshevClassical";
    case Formula::MarkovDecreasingDiscrete: return "MarkovDecreasingDiscrete";
    case Formula::ChebyshevUnimodalDiscrete: return "ChebyshevUnimodalDiscrete";
    case Formula::MarkovContinuousDecreasing: return "MarkovContinuousDecreasing";
    case Formula::ChebyshevContinuousUnimodal: return "ChebyshevContinuousUnimodal";
    }
    return "unknown";
}

double to_double(const BoundValue& v) {
    return std::visit(
        [](const auto& x) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Rational>)
                return tailbounds::to_double(x);
            else
                return x;
        },
        v);
}

BoundResult markov_classical(const Rational& mu, const Rational& a) {
    require_positive(a, "markov_classical");
    require_nonnegative(mu, "mu", "markov_classical");
    return {Formula::MarkovClassical, Rational(mu / a), {}, {}};
}

BoundResult chebyshev_classical(const Rational& var, const Rational& a) {
    require_positive(a, "chebyshev_classical");
    require_nonnegative(var, "var", "chebyshev_classical");
    return {Formula::ChebyshevClassical, Rational(var / (a * a)), {}, {}};
}

BoundResult markov_decreasing(const Rational& mu, std::int64_t a) {
    require_at_least_one(a, "markov_decreasing");
    require_nonnegative(mu, "mu", "markov_decreasing");
    return {Formula::MarkovDecreasingDiscrete, Rational(mu / (2 * a - 1)), {}, {}};
}

BoundResult chebyshev_unimodal(const Rational& var, std::int64_t a) {
    require_at_least_one(a, "chebyshev_unimodal");
    require_nonnegative(var, "var", "chebyshev_unimodal");
    const Rational half_shift = Rational(a) - make_rational(1, 2);
    return {Formula::ChebyshevUnimodalDiscrete,
            Rational((var + make_rational(1, 12)) / (2 * half_shift * half_shift)), {}, {}};
}

BoundResult markov_continuous_decreasing(double mu, double a) {
    require_positive(a, "markov_continuous_decreasing");
    require_nonnegative(mu, "mu", "markov_continuous_decreasing");
    return {Formula::MarkovContinuousDecreasing,
            mu / (2.0 * a),
            {},
            {"nonnegative continuous distribution", "decreasing density"}};
}

BoundResult chebyshev_continuous_unimodal(double var, double a) {
    require_positive(a, "chebyshev_continuous_unimodal");
    require_nonnegative(var, "var", "chebyshev_continuous_unimodal");
    return {Formula::ChebyshevContinuousUnimodal,
            var / (2.0 * a * a),
            {},
            {"continuous distribution", "density decreasing on [mean + a/2, mean + 3a/2]",
             "density increasing on [mean - 3a/2, mean - a/2]"}};
}

std::vector<BoundResult> best_bound(const Pmf& p, std::int64_t a, TailMode mode) {
    require_at_least_one(a, "best_bound");
    const ShapeReport s = shape(p);
    std::vector<BoundResult> out;
    if (mode == TailMode::OneSidedUpper) {
        const Rational mu = mean(p);
        if (s.is_decreasing) {
            auto r = markov_decreasing(mu, a);
            r.verified = {"support starts at 0", "decreasing pmf"};
            out.push_back(std::move(r));
        }
        if (p.offset() >= 0) {
            auto r = markov_classical(mu, Rational(a));
            r.verified = {"nonnegative support"};
            out.push_back(std::move(r));
        }
    } else {
        const Rational var = variance(p);
        if (s.is_unimodal) {
            auto r = chebyshev_unimodal(var, a);
            r.verified = {"integer support", "unimodal pmf"};
            out.push_back(std::move(r));
        }
        auto r = chebyshev_classical(var, Rational(a));
        r.verified = {"finite variance"};
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const BoundResult& x, const BoundResult& y) {
        return std::get<Rational>(x.value) < std::get<Rational>(y.value);
    });
    return out;
}

} // namespace tailbounds
