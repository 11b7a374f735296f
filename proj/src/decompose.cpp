#include "tailbounds/decompose.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tailbounds/errors.hpp"

namespace tailbounds {

namespace {

void add_weight(std::map<std::int64_t, Rational>& atoms, std::int64_t i, const Rational& delta) {
    auto& w = atoms[i];
    w += delta;
    if (w == 0)
        atoms.erase(i);
}

// Weight of uniform{0..i} at or above a.
Rational uniform_prefix_tail(std::int64_t i, std::int64_t a) {
    if (a <= 0)
        return 1;
    if (i < a)
        return 0;
    return make_rational(i - a + 1, i + 1);
}

std::vector<Rational> dense_weights(const Pmf& p) {
    return {p.weights().begin(), p.weights().end()};
}

} // namespace

void validate(const UniformMixture& m) {
    Rational total = 0;
    for (const auto& [i, d] : m.atoms) {
        if (i < 0)
            throw ValidationError("uniform mixture index " + std::to_string(i) + " is negative");
        if (d <= 0)
            throw ValidationError("uniform mixture weight at " + std::to_string(i) + " is not positive");
        total += d;
    }
    if (total != 1)
        throw ValidationError("uniform mixture weights sum to " + to_string(total));
}

void validate(const IntervalMixture& m) {
    Rational total = 0;
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    for (const auto& [interval, w] : m.atoms) {
        const auto [l, r] = interval;
        if (l > r)
            throw ValidationError("interval {" + std::to_string(l) + ".." + std::to_string(r) + "} is empty");
        if (w <= 0)
            throw ValidationError("interval mixture weight is not positive");
        lo = std::max(lo, l);
        hi = std::min(hi, r);
        total += w;
    }
    if (total != 1)
        throw ValidationError("interval mixture weights sum to " + to_string(total));
    if (lo > hi)
        throw ValidationError("interval mixture atoms share no common point");
}

Rational mixture_index_mean(const UniformMixture& m) {
    Rational sum = 0;
    for (const auto& [i, d] : m.atoms)
        sum += d * i;
    return sum;
}

Rational mixture_tail(const UniformMixture& m, std::int64_t a) {
    Rational sum = 0;
    for (const auto& [i, d] : m.atoms)
        sum += d * uniform_prefix_tail(i, a);
    return sum;
}

UniformMixture to_uniform_mixture(const Pmf& p) {
    if (p.offset() != 0)
        throw ShapeError("uniform-mixture form needs support starting at 0");
    UniformMixture m;
    const auto w = p.weights();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Rational next = i + 1 < w.size() ? w[i + 1] : Rational(0);
        const Rational d = Rational(static_cast<std::int64_t>(i + 1)) * (w[i] - next);
        if (d < 0)
            throw ShapeError("pmf is not decreasing at " + std::to_string(i) + ": p_" + std::to_string(i) + " = " +
                             to_string(w[i]) + " < p_" + std::to_string(i + 1) + " = " + to_string(next));
        if (d != 0)
            m.atoms.emplace(static_cast<std::int64_t>(i), d);
    }
    return m;
}

Pmf from_uniform_mixture(const UniformMixture& m) {
    validate(m);
    const std::int64_t top = m.atoms.rbegin()->first;
    std::vector<Rational> weights(static_cast<std::size_t>(top + 1));
    Rational running = 0;
    auto it = m.atoms.rbegin();
    for (std::int64_t k = top; k >= 0; --k) {
        if (it != m.atoms.rend() && it->first == k) {
            running += it->second / (k + 1);
            ++it;
        }
        weights[static_cast<std::size_t>(k)] = running;
    }
    return Pmf::make(0, std::move(weights));
}

IntervalMixture unimodal_to_interval_mixture(const Pmf& p) {
    if (!shape(p).is_unimodal)
        throw ShapeError("layer decomposition needs a unimodal pmf");
    const auto w = p.weights();
    std::vector<Rational> levels(w.begin(), w.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    IntervalMixture m;
    Rational below = 0;
    std::size_t l = 0;
    std::size_t r = w.size() - 1;
    for (const auto& level : levels) {
        // Super-level sets of a unimodal sequence shrink from both ends.
        while (w[l] < level)
            ++l;
        while (w[r] < level)
            --r;
        const auto lo = p.offset() + static_cast<std::int64_t>(l);
        const auto hi = p.offset() + static_cast<std::int64_t>(r);
        m.atoms.emplace(std::pair{lo, hi}, (level - below) * (hi - lo + 1));
        below = level;
    }
    return m;
}

Pmf from_interval_mixture(const IntervalMixture& m) {
    validate(m);
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& [interval, w] : m.atoms) {
        lo = std::min(lo, interval.first);
        hi = std::max(hi, interval.second);
    }
    std::vector<Rational> weights(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [interval, w] : m.atoms) {
        const Rational each = w / (interval.second - interval.first + 1);
        for (auto x = interval.first; x <= interval.second; ++x)
            weights[static_cast<std::size_t>(x - lo)] += each;
    }
    return Pmf::make(lo, std::move(weights));
}

std::optional<Pmf> flatten_head_step(const Pmf& p, std::int64_t a) {
    auto w = dense_weights(p);
    for (std::int64_t i = 1; i < a; ++i) {
        const Rational pi = p.at(i);
        const Rational next = p.at(i + 1);
        if (!(next < pi))
            continue;
        const Rational g = pi - next;
        const Rational outer = g * make_rational(i, i + 2);
        const Rational inner = g * make_rational(2, i + 2);
        if (w.size() < static_cast<std::size_t>(i + 2))
            w.resize(static_cast<std::size_t>(i + 2));
        w[0] += outer;
        for (std::int64_t j = 1; j <= i; ++j)
            w[static_cast<std::size_t>(j)] -= inner;
        w[static_cast<std::size_t>(i + 1)] += outer;
        return Pmf::make(0, std::move(w));
    }
    return std::nullopt;
}

Pmf flatten_head(const Pmf& p, std::int64_t a) {
    if (a < 1)
        throw DomainError("flatten_head needs a >= 1");
    if (!shape(p).is_decreasing)
        throw ShapeError("flatten_head needs a decreasing pmf");
    Pmf current = p;
    // Each move removes the leftmost jump in {1..a}; at most a - 1 moves.
    while (auto next = flatten_head_step(current, a))
        current = std::move(*next);
    return current;
}

std::optional<UniformMixture> merge_tail_step(const UniformMixture& m, std::int64_t a) {
    auto lower = m.atoms.lower_bound(a);
    if (lower == m.atoms.end())
        return std::nullopt;
    const auto [i, di] = *lower;
    const auto [j, dj] = *m.atoms.rbegin();
    if (j < i + 2)
        return std::nullopt;
    const Rational moved = std::min(di, dj);
    UniformMixture out = m;
    add_weight(out.atoms, i, -moved);
    add_weight(out.atoms, i + 1, moved);
    add_weight(out.atoms, j - 1, moved);
    add_weight(out.atoms, j, -moved);
    return out;
}

UniformMixture merge_tail_atoms(const UniformMixture& m, std::int64_t a) {
    validate(m);
    const std::int64_t support = m.atoms.rbegin()->first + 1;
    const std::int64_t cap = std::max<std::int64_t>(support * support, 1);
    UniformMixture current = m;
    for (std::int64_t step = 0;; ++step) {
        auto next = merge_tail_step(current, a);
        if (!next)
            return current;
        if (step >= cap)
            throw std::logic_error("merge_tail_atoms exceeded " + std::to_string(cap) + " iterations");
        current = std::move(*next);
    }
}

UniformMixture reduce_three_atoms(const UniformMixture& m, std::int64_t a) {
    validate(m);
    std::optional<std::int64_t> base;
    for (const auto& [idx, d] : m.atoms) {
        if (idx == 0)
            continue;
        if (!base)
            base = idx;
        else if (idx != *base + 1)
            throw ValidationError("reduce_three_atoms needs support within {0, i, i+1}");
    }
    if (base && *base < a)
        throw ValidationError("reduce_three_atoms needs i >= a, got i = " + std::to_string(*base));

    const std::int64_t i = base.value_or(0);
    auto find = [&](std::int64_t k) {
        auto it = m.atoms.find(k);
        return it == m.atoms.end() ? Rational(0) : it->second;
    };
    const Rational d0 = find(0);
    const Rational di = find(i);
    const Rational dnext = find(i + 1);
    if (!base || d0 == 0 || di == 0 || dnext == 0)
        return m;

    UniformMixture out = m;
    // Along (-1/i, 1 + 1/i, -1) the tail of X at a changes at rate
    // (i - 2a + 2) / (i (i + 2)), so the move reverses when i < 2a - 2.
    if (i - 2 * a + 2 >= 0) {
        const Rational step = std::min(Rational(d0 * i), dnext);
        add_weight(out.atoms, 0, -step / i);
        add_weight(out.atoms, i, step * make_rational(i + 1, i));
        add_weight(out.atoms, i + 1, -step);
    } else {
        const Rational step = di * make_rational(i, i + 1);
        add_weight(out.atoms, 0, step / i);
        add_weight(out.atoms, i, -di);
        add_weight(out.atoms, i + 1, step);
    }
    return out;
}

} // namespace tailbounds
