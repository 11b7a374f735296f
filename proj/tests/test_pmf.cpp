#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "tailbounds/errors.hpp"
#include "tailbounds/pmf.hpp"

using namespace tailbounds;
using namespace tailbounds::testing;

namespace {

std::vector<Rational> ints(std::initializer_list<std::int64_t> xs) {
    std::vector<Rational> out;
    for (auto x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("make_pmf canonicalizes") {
    const Pmf point = Pmf::make(0, ints({1}));
    CHECK(point.offset() == 0);
    CHECK(point.size() == 1);

    const Pmf u = Pmf::make(0, ints({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
    CHECK(u == Pmf::uniform(0, 10));
    for (const auto& w : u.weights())
        CHECK(w == make_rational(1, 11));

    const Pmf tri = Pmf::make(-2, ints({1, 2, 1}));
    CHECK(tri.offset() == -2);
    CHECK(tri.at(-2) == make_rational(1, 4));
    CHECK(tri.at(-1) == make_rational(1, 2));
    CHECK(tri.at(0) == make_rational(1, 4));
    CHECK(tri.at(1) == 0);

    // Leading and trailing zeros are trimmed; offset tracks the first atom.
    const Pmf padded = Pmf::make(3, ints({0, 0, 1, 1, 0}));
    CHECK(padded.offset() == 5);
    CHECK(padded.max_support() == 6);
    CHECK(padded == Pmf::uniform(5, 6));
}

TEST_CASE("make_pmf rejects invalid weights") {
    CHECK_THROWS_AS(Pmf::make(0, {}), ValidationError);
    CHECK_THROWS_AS(Pmf::make(0, ints({0, 0})), ValidationError);
    CHECK_THROWS_AS(Pmf::make(0, ints({1, -1, 1})), ValidationError);
}

TEST_CASE("mean and variance on the worked example") {
    const Pmf u = Pmf::uniform(0, 10);
    CHECK(mean(u) == 5);
    CHECK(variance(u) == 10);
    CHECK(mean(Pmf::point(0)) == 0);
    CHECK(variance(Pmf::point(-7)) == 0);
}

TEST_CASE("variance of uniform{0..n} matches brute force and n(n+2)/12") {
    for (std::int64_t n = 0; n <= 50; ++n) {
        CountPmf counts{0, std::vector<std::int64_t>(static_cast<std::size_t>(n + 1), 1)};
        const Rational brute = count_variance(counts);
        CHECK(brute == make_rational(n * (n + 2), 12));
        CHECK(variance(Pmf::uniform(0, n)) == brute);
    }
}

TEST_CASE("tail") {
    const Pmf u = Pmf::uniform(0, 10);
    CHECK(tail(u, 9) == make_rational(2, 11));
    CHECK(tail(u, 0) == 1);
    CHECK(tail(u, -4) == 1);
    CHECK(tail(u, 11) == 0);
    CHECK(tail(Pmf::uniform(0, 17), 9) == make_rational(1, 2));
    const Pmf shifted = Pmf::make(-3, ints({1, 2, 3}));
    CHECK(tail(shifted, shifted.offset()) == 1);
}

TEST_CASE("two_sided_tail") {
    CHECK(two_sided_tail(Pmf::uniform(0, 10), 4) == make_rational(4, 11));
    CHECK(two_sided_tail(Pmf::point(3), make_rational(1, 2)) == 0);
    CHECK(two_sided_tail(Pmf::make(-1, ints({1, 0, 1})), 1) == 1);
    CHECK_THROWS_AS(two_sided_tail(Pmf::point(0), 0), DomainError);
}

TEST_CASE("shape") {
    const auto u = shape(Pmf::uniform(0, 10));
    CHECK(u.is_decreasing);
    CHECK(u.is_unimodal);
    CHECK(u.mode == 0);

    const auto tri = shape(Pmf::make(0, ints({1, 2, 1})));
    CHECK_FALSE(tri.is_decreasing);
    CHECK(tri.is_unimodal);
    CHECK(tri.mode == 1);

    const auto two_peaks = shape(Pmf::make(0, ints({2, 1, 2, 1})));
    CHECK_FALSE(two_peaks.is_unimodal);
    CHECK_FALSE(two_peaks.is_decreasing);
    CHECK_FALSE(two_peaks.mode.has_value());

    // Nonincreasing weights off zero are unimodal but not "decreasing".
    const auto shifted = shape(Pmf::make(2, ints({3, 2, 1})));
    CHECK_FALSE(shifted.is_decreasing);
    CHECK(shifted.is_unimodal);
    CHECK(shifted.mode == 2);

    // Plateau at the peak reports the leftmost mode.
    const auto plateau = shape(Pmf::make(-1, ints({1, 3, 3, 2})));
    CHECK(plateau.mode == 0);

    // Interior zero breaks unimodality.
    CHECK_FALSE(shape(Pmf::make(0, ints({1, 0, 1}))).is_unimodal);
}

TEST_CASE("property: moments and tails agree with integer-count oracles") {
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 500; ++trial) {
        const CountPmf c = trial % 2 ? random_unimodal(rng, 30, 10) : random_arbitrary(rng, 30);
        const Pmf p = c.pmf();
        Rational total = 0;
        for (const auto& w : p.weights())
            total += w;
        REQUIRE(total == 1);
        CHECK(mean(p) == count_mean(c));
        const Rational v = variance(p);
        CHECK(v == count_variance(c));
        CHECK(v >= 0);
        CHECK((v == 0) == (p.size() == 1));
        CHECK(tail(p, p.offset()) == 1);
        Rational previous = 1;
        for (std::int64_t a = p.offset() - 2; a <= p.max_support() + 2; ++a) {
            const Rational t = tail(p, a);
            CHECK(t == count_tail(c, a));
            CHECK(t <= previous);
            previous = t;
        }
        const Rational mu = mean(p);
        for (std::int64_t a = 1; a <= p.max_support() - p.offset() + 1; ++a) {
            const Rational two = two_sided_tail(p, Rational(a));
            CHECK(two == count_two_sided_tail(c, a));
            // Upper and lower pieces summed directly.
            Rational split = 0;
            for (std::int64_t x = p.offset(); x <= p.max_support(); ++x)
                if (x >= mu + a)
                    split += p.at(x);
            for (std::int64_t x = p.offset(); x <= p.max_support(); ++x)
                if (x <= mu - a)
                    split += p.at(x);
            CHECK(two == split);
        }
    }
}

TEST_CASE("property: decreasing implies unimodal with mode at 0") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto s = shape(random_decreasing(rng).pmf());
        CHECK(s.is_decreasing);
        CHECK(s.is_unimodal);
        CHECK(s.mode == 0);
    }
    for (int trial = 0; trial < 1000; ++trial) {
        const CountPmf c = random_unimodal(rng);
        const Pmf p = c.pmf();
        const auto s = shape(p);
        REQUIRE(s.is_unimodal);
        const auto w = p.weights();
        const auto m = static_cast<std::size_t>(*s.mode - p.offset());
        for (std::size_t i = 0; i + 1 <= m; ++i)
            CHECK(w[i] <= w[i + 1]);
        for (std::size_t i = m; i + 1 < w.size(); ++i)
            CHECK(w[i] >= w[i + 1]);
    }
}
