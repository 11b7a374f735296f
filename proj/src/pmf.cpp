#include "tailbounds/pmf.hpp"

#include <algorithm>

#include "tailbounds/errors.hpp"

namespace tailbounds {

Pmf Pmf::make(std::int64_t offset, std::vector<Rational> weights) {
    if (weights.empty())
        throw ValidationError("pmf needs at least one weight");
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0)
            throw ValidationError("pmf weight " + to_string(w) + " is negative");
        total += w;
    }
    if (total == 0)
        throw ValidationError("pmf weights are all zero");

    auto first = std::find_if(weights.begin(), weights.end(), [](const Rational& w) { return w != 0; });
    auto last = std::find_if(weights.rbegin(), weights.rend(), [](const Rational& w) { return w != 0; }).base();
    offset += std::distance(weights.begin(), first);
    std::vector<Rational> canonical(first, last);
    if (total != 1) {
        for (auto& w : canonical)
            w /= total;
    }
    return Pmf(offset, std::move(canonical));
}

Pmf Pmf::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo)
        throw ValidationError("uniform needs lo <= hi");
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    return Pmf(lo, std::vector<Rational>(n, make_rational(1, static_cast<std::int64_t>(n))));
}

Pmf Pmf::point(std::int64_t k) {
    return Pmf(k, {Rational(1)});
}

Rational Pmf::at(std::int64_t x) const {
    if (x < offset_ || x > max_support())
        return 0;
    return weights_[static_cast<std::size_t>(x - offset_)];
}

Rational mean(const Pmf& p) {
    Rational sum = 0;
    std::int64_t x = p.offset();
    for (const auto& w : p.weights())
        sum += w * x++;
    return sum;
}

Rational variance(const Pmf& p) {
    const Rational mu = mean(p);
    Rational sum = 0;
    std::int64_t x = p.offset();
    for (const auto& w : p.weights()) {
        const Rational d = Rational(x++) - mu;
        sum += w * d * d;
    }
    return sum;
}

Rational tail(const Pmf& p, std::int64_t a) {
    if (a <= p.offset())
        return 1;
    Rational sum = 0;
    for (std::int64_t x = a; x <= p.max_support(); ++x)
        sum += p.at(x);
    return sum;
}

Rational two_sided_tail(const Pmf& p, const Rational& a) {
    if (a <= 0)
        throw DomainError("two-sided tail needs a > 0, got " + to_string(a));
    const Rational mu = mean(p);
    const Rational upper = mu + a;
    const Rational lower = mu - a;
    Rational sum = 0;
    std::int64_t x = p.offset();
    for (const auto& w : p.weights()) {
        if (x >= upper || x <= lower)
            sum += w;
        ++x;
    }
    return sum;
}

ShapeReport shape(const Pmf& p) {
    const auto w = p.weights();
    ShapeReport report;

    std::size_t peak = 0;
    while (peak + 1 < w.size() && w[peak + 1] >= w[peak])
        ++peak;
    // Back up over a plateau so the reported mode is the smallest one.
    std::size_t mode = peak;
    while (mode > 0 && w[mode - 1] == w[mode])
        --mode;
    bool descending = true;
    for (std::size_t i = peak; i + 1 < w.size(); ++i) {
        if (w[i + 1] > w[i]) {
            descending = false;
            break;
        }
    }
    report.is_unimodal = descending;
    if (descending)
        report.mode = p.offset() + static_cast<std::int64_t>(mode);
    report.is_decreasing = descending && p.offset() == 0 && mode == 0;
    return report;
}

} // namespace tailbounds
