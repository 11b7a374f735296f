// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances and time limits are fixed here, not taken from the command line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "tailbounds/bounds.hpp"
#include "tailbounds/decompose.hpp"
#include "tailbounds/extremal.hpp"
#include "tailbounds/pmf.hpp"

using namespace tailbounds;
using namespace tailbounds::testing;

namespace {

constexpr double kFormulaTolerance = 1e-12;
constexpr double kLimitTolerance = 1e-5;
constexpr int kRandomPmfs = 10'000;
constexpr int kTransformInputs = 1'000;

struct Outcome {
    bool ok = true;
    std::string detail;
};

Rational exact(const BoundResult& b) { return std::get<Rational>(b.value); }
double real(const BoundResult& b) { return std::get<double>(b.value); }

// Runs one criterion, times it, and prints its line. Exceptions count as FAIL.
bool criterion(int number, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < limit_seconds;
    const bool pass = out.ok && in_time;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / limit %.0fs", elapsed, limit_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << number << "] " << title << " (" << timing << ")";
    if (!in_time)
        std::cout << " time limit exceeded;";
    if (!out.detail.empty())
        std::cout << " " << out.detail;
    std::cout << std::endl;
    return pass;
}

Outcome regression_example() {
    const Pmf u = Pmf::uniform(0, 10);
    std::ostringstream why;
    bool ok = true;
    auto expect = [&](const char* what, const Rational& got, const Rational& want) {
        if (got != want) {
            ok = false;
            why << what << " = " << to_string(got) << " (want " << to_string(want) << "); ";
        }
    };
    expect("tail", tail(u, 9), make_rational(2, 11));
    expect("mean", mean(u), 5);
    expect("variance", variance(u), 10);
    expect("markov", exact(markov_classical(mean(u), 9)), make_rational(5, 9));
    expect("chebyshev", exact(chebyshev_classical(variance(u), 4)), make_rational(5, 8));
    expect("sharpened markov", exact(markov_decreasing(mean(u), 9)), make_rational(5, 17));
    const auto best = best_bound(u, 9, TailMode::OneSidedUpper);
    if (best.empty() || best.front().formula != Formula::MarkovDecreasingDiscrete) {
        ok = false;
        why << "best_bound does not lead with the decreasing bound; ";
    }
    if (ok)
        why << "2/11, 5/9, 5/8, 5/17 exact";
    return {ok, why.str()};
}

Outcome continuous_examples() {
    std::ostringstream why;
    // Exponential with rate 2: mean 1/2, P(X >= 1.5) = exp(-3).
    const double expo = real(markov_continuous_decreasing(0.5, 1.5));
    const bool expo_ok = std::abs(expo - 1.0 / 6.0) <= kFormulaTolerance && std::exp(-3.0) <= expo;
    // Uniform on [1, 10]: mean 5.5, variance 81/12, P(X >= 9) = 1/9; by
    // symmetry the one-sided tail is half the two-sided one at distance 3.5.
    const double unif = real(chebyshev_continuous_unimodal(81.0 / 12.0, 3.5)) / 2;
    const double unif_ref = (6.75 / (3.5 * 3.5)) / 4;
    const bool unif_ok = std::abs(unif - unif_ref) <= kFormulaTolerance && 1.0 / 9.0 <= unif &&
                         std::abs(unif - 0.1377) < 1e-4;
    char buf[160];
    std::snprintf(buf, sizeof buf, "exponential %.12f vs true %.5f; uniform %.12f vs true %.5f", expo,
                  std::exp(-3.0), unif, 1.0 / 9.0);
    why << buf;
    return {expo_ok && unif_ok, why.str()};
}

Outcome tightness_grid() {
    const std::vector<Rational> grid{make_rational(1, 2), 1, 2, 4};
    const auto rows = verify_tightness_theorem2(1, 10, grid, 50);
    int tight = 0;
    int slack = 0;
    std::ostringstream bad;
    for (const auto& row : rows) {
        const bool feasible = 2 * row.mu <= 2 * row.a - 1;
        if (!row.oracle) {
            bad << "no oracle at a=" << row.a << " mu=" << to_string(row.mu) << "; ";
            continue;
        }
        if (feasible) {
            ++tight;
            if (*row.oracle != row.bound || row.status != CellStatus::Tight)
                bad << "a=" << row.a << " mu=" << to_string(row.mu) << " oracle " << to_string(*row.oracle)
                    << " != " << to_string(row.bound) << "; ";
        } else {
            ++slack;
            if (!(*row.oracle < row.bound))
                bad << "slack cell a=" << row.a << " mu=" << to_string(row.mu) << " not below bound; ";
        }
    }
    std::ostringstream why;
    if (rows.size() != 40)
        bad << rows.size() << " rows instead of 40; ";
    why << tight << " cells equal mu/(2a-1) exactly, " << slack
        << " cells with 2mu > 2a-1 strictly below it";
    if (!bad.str().empty())
        why << "; " << bad.str();
    return {bad.str().empty(), why.str()};
}

Outcome decreasing_soundness() {
    std::mt19937_64 rng(20240601);
    long checks = 0;
    long violations = 0;
    Rational worst = 0;
    for (int trial = 0; trial < kRandomPmfs; ++trial) {
        const CountPmf c = random_decreasing(rng, 60);
        const Pmf p = c.pmf();
        const Rational mu = mean(p);
        if (mu != count_mean(c))
            ++violations;
        for (std::int64_t a = 1; a <= p.max_support() + 1; ++a) {
            const Rational t = tail(p, a);
            const Rational b = exact(markov_decreasing(mu, a));
            ++checks;
            if (t > b || t != count_tail(c, a))
                ++violations;
            else if (b > 0 && t / b > worst)
                worst = t / b;
        }
    }
    std::ostringstream why;
    why << kRandomPmfs << " pmfs, " << checks << " (pmf, a) pairs, " << violations
        << " violations, max tail/bound " << format_double(to_double(worst));
    return {violations == 0, why.str()};
}

Outcome unimodal_soundness() {
    std::mt19937_64 rng(20240602);
    long checks = 0;
    long violations = 0;
    Rational worst = 0;
    for (int trial = 0; trial < kRandomPmfs; ++trial) {
        const CountPmf c = random_unimodal(rng, 60, 30);
        const Pmf p = c.pmf();
        const Rational var = variance(p);
        if (var != count_variance(c))
            ++violations;
        const std::int64_t span = p.max_support() - p.offset();
        for (std::int64_t a = 1; a <= span + 1; ++a) {
            const Rational t = two_sided_tail(p, Rational(a));
            const Rational b = exact(chebyshev_unimodal(var, a));
            ++checks;
            if (t > b || t != count_two_sided_tail(c, a))
                ++violations;
            else if (b > 0 && t / b > worst)
                worst = t / b;
        }
    }
    std::ostringstream why;
    why << kRandomPmfs << " pmfs, " << checks << " (pmf, a) pairs, " << violations
        << " violations, max tail/bound " << format_double(to_double(worst));
    return {violations == 0, why.str()};
}

Outcome two_sided_gap() {
    struct Config {
        std::int64_t a;
        Rational mu;
        Rational var;
        std::int64_t radius;
    };
    const std::vector<Config> configs{
        {4, 5, 10, 15},
        {1, 0, make_rational(1, 2), 10},
        {2, 0, make_rational(3, 2), 12},
        {3, make_rational(1, 3), 4, 15},
        {5, make_rational(1, 2), 9, 15},
        {6, 0, 12, 15},
        {2, make_rational(1, 4), make_rational(7, 3), 15},
    };
    std::ostringstream why;
    bool ok = true;
    for (const auto& cfg : configs) {
        const auto r = lp_max_two_sided_unimodal(cfg.a, cfg.mu, cfg.var, cfg.radius);
        const Rational bound = exact(chebyshev_unimodal(cfg.var, cfg.a));
        const Pmf p = from_interval_mixture(r.argmax);
        const bool witness = shape(p).is_unimodal && mean(p) == cfg.mu && variance(p) == cfg.var &&
                             two_sided_tail(p, Rational(cfg.a)) == r.max_tail;
        const bool below = r.max_tail < bound;
        ok = ok && witness && below;
        why << "(a=" << cfg.a << " mu=" << to_string(cfg.mu) << " var=" << to_string(cfg.var) << " r=" << cfg.radius
            << ": max " << to_string(r.max_tail) << " bound " << to_string(bound) << " gap "
            << format_double(to_double(bound - r.max_tail)) << (witness ? "" : " BAD WITNESS")
            << (below ? "" : " NOT BELOW") << ") ";
    }
    return {ok, why.str()};
}

Outcome epsilon_limit() {
    struct Config {
        double a;
        double mu;
    };
    const std::vector<Config> configs{{1.0, 0.5}, {1.5, 0.5}, {9.0, 5.0}, {4.0, 4.0}, {2.5, 0.75}};
    std::ostringstream why;
    bool ok = true;
    for (const auto& cfg : configs) {
        double previous = -1;
        bool monotone = true;
        double last_gap = 0;
        for (int k = 1; k <= 20; ++k) {
            const double eps = cfg.a * std::ldexp(1.0, -k);
            const auto ex = extremal_markov_continuous(cfg.a, cfg.mu, eps);
            // Strictly increasing when mu < a; at mu = a the tail is 1/2 for every epsilon.
            if (cfg.mu < cfg.a ? !(ex.achieved_tail > previous) : !(ex.achieved_tail == ex.bound_value))
                monotone = false;
            previous = ex.achieved_tail;
            last_gap = std::abs(ex.bound_value - ex.achieved_tail);
        }
        ok = ok && monotone && last_gap <= kLimitTolerance;
        char buf[96];
        std::snprintf(buf, sizeof buf, "(a=%g mu=%g: gap %.3g%s) ", cfg.a, cfg.mu, last_gap,
                      monotone ? "" : " NOT MONOTONE");
        why << buf;
    }
    return {ok, why.str()};
}

Outcome roundtrips() {
    std::mt19937_64 rng(20240603);
    long failures = 0;
    for (int trial = 0; trial < kRandomPmfs; ++trial) {
        const Pmf p = random_decreasing(rng, 60).pmf();
        const UniformMixture m = to_uniform_mixture(p);
        Rational index_mean = 0;
        for (const auto& [i, d] : m.atoms)
            index_mean += i * d;
        if (from_uniform_mixture(m) != p || mean(p) != index_mean / 2)
            ++failures;
    }
    for (int trial = 0; trial < kRandomPmfs; ++trial) {
        const Pmf p = random_unimodal(rng, 60, 30).pmf();
        if (from_interval_mixture(unimodal_to_interval_mixture(p)) != p)
            ++failures;
    }
    std::ostringstream why;
    why << kRandomPmfs << " decreasing + " << kRandomPmfs << " unimodal pmfs, " << failures << " failures";
    return {failures == 0, why.str()};
}

UniformMixture random_mixture(std::mt19937_64& rng, std::int64_t max_index) {
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_int_distribution<std::int64_t> index(0, max_index);
    std::uniform_int_distribution<std::int64_t> weight(1, 30);
    std::map<std::int64_t, std::int64_t> raw;
    std::int64_t total = 0;
    for (int k = count(rng); k > 0; --k) {
        const auto w = weight(rng);
        raw[index(rng)] += w;
        total += w;
    }
    UniformMixture m;
    for (auto [i, w] : raw)
        m.atoms[i] = make_rational(w, total);
    return m;
}

// Tail of the pmf a mixture represents, evaluated on the pmf itself.
Rational represented_tail(const UniformMixture& m, std::int64_t a) { return tail(from_uniform_mixture(m), a); }
Rational represented_mean(const UniformMixture& m) { return mean(from_uniform_mixture(m)); }

Outcome transform_invariants() {
    std::mt19937_64 rng(20240604);
    std::uniform_int_distribution<std::int64_t> pick_a(1, 20);
    std::uniform_int_distribution<std::int64_t> weight(0, 12);
    long failures = 0;
    long merge_moves = 0;

    for (int trial = 0; trial < kTransformInputs; ++trial) {
        const Pmf p = random_decreasing(rng, 40).pmf();
        const auto a = pick_a(rng);
        const Pmf q = flatten_head(p, a);
        if (mean(q) != mean(p) || tail(q, a) < tail(p, a))
            ++failures;
    }

    for (int trial = 0; trial < kTransformInputs; ++trial) {
        const auto m = random_mixture(rng, 50);
        const auto a = pick_a(rng);
        UniformMixture current = m;
        while (auto next = merge_tail_step(current, a)) {
            ++merge_moves;
            if (represented_mean(*next) != represented_mean(current) ||
                !(represented_tail(*next, a) > represented_tail(current, a)))
                ++failures;
            current = std::move(*next);
        }
        const auto out = merge_tail_atoms(m, a);
        if (out != current || represented_mean(out) != represented_mean(m) ||
            represented_tail(out, a) < represented_tail(m, a))
            ++failures;
    }

    for (int trial = 0; trial < kTransformInputs; ++trial) {
        const auto a = pick_a(rng);
        std::uniform_int_distribution<std::int64_t> pick_i(a, 3 * a + 2);
        const auto i = pick_i(rng);
        std::int64_t w0 = weight(rng), wi = weight(rng), wn = weight(rng);
        if (w0 + wi + wn == 0)
            wi = 1;
        const auto total = w0 + wi + wn;
        UniformMixture m;
        for (auto [idx, w] : {std::pair{std::int64_t{0}, w0}, {i, wi}, {i + 1, wn}})
            if (w > 0)
                m.atoms[idx] = make_rational(w, total);
        const auto r = reduce_three_atoms(m, a);
        if (r.atoms.size() > 2 || represented_mean(r) != represented_mean(m) ||
            represented_tail(r, a) < represented_tail(m, a))
            ++failures;
    }

    std::ostringstream why;
    why << kTransformInputs << " inputs per transform, " << merge_moves << " merge moves, " << failures
        << " failures";
    return {failures == 0, why.str()};
}

} // namespace

int main() {
    int failed = 0;
    auto run = [&](int n, const std::string& title, double limit, const std::function<Outcome()>& body) {
        if (!criterion(n, title, limit, body))
            ++failed;
    };
    run(1, "uniform {0..10} regression", 1, regression_example);
    run(2, "continuous reference formulas", 1, continuous_examples);
    run(3, "decreasing bound tightness grid", 10, tightness_grid);
    run(4, "decreasing bound soundness", 60, decreasing_soundness);
    run(5, "unimodal two-sided bound soundness", 60, unimodal_soundness);
    run(6, "two-sided bound non-tightness probe", 300, two_sided_gap);
    run(7, "continuous epsilon limit", 1, epsilon_limit);
    run(8, "decomposition roundtrips", 60, roundtrips);
    run(9, "proof transform invariants", 60, transform_invariants);
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
