#include "tailbounds/extremal.hpp"

#include <array>
#include <cmath>
#include <string>

#include "tailbounds/bounds.hpp"
#include "tailbounds/errors.hpp"

namespace tailbounds {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Integer to_integer(const Integer& v) { return v; }

Integer to_integer(__int128 v) {
    const bool negative = v < 0;
    unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer out(static_cast<std::uint64_t>(mag >> 64));
    out <<= 64;
    out += Integer(static_cast<std::uint64_t>(mag));
    return negative ? Integer(-out) : out;
}

double as_double(const Integer& v) { return v.convert_to<double>(); }
double as_double(__int128 v) { return static_cast<double>(v); }

Integer floor_of(const Rational& q) {
    Integer n = numerator(q);
    Integer d = denominator(q);
    Integer f = n / d;
    if (n < 0 && f * d != n)
        f -= 1;
    return f;
}

Integer ceil_of(const Rational& q) {
    return -floor_of(Rational(-q));
}

// One candidate interval {l..r} in scaled moment coordinates. With
// mu = P/Q and var = vn/vd:
//   mid = 2Q (E_I[X] - mu)
//   low = 12 Q^2 vd E_I[(X - mu)^2]
// so the constraints read sum w = 1, sum w mid = 0, sum w low = 12 Q^2 vn.
template <typename S>
struct IntervalColumn {
    std::int64_t l = 0;
    std::int64_t r = 0;
    S mid{};
    S low{};
    std::int64_t hits = 0;  // points with |x - mu| >= a
};

template <typename W>
W det3(const std::array<W, 3>& top, const std::array<W, 3>& mid, const std::array<W, 3>& low) {
    return top[0] * (mid[1] * low[2] - mid[2] * low[1]) - top[1] * (mid[0] * low[2] - mid[2] * low[0]) +
           top[2] * (mid[0] * low[1] - mid[1] * low[0]);
}

template <typename S, typename W>
class TwoSidedSearch {
public:
    TwoSidedSearch(std::vector<IntervalColumn<S>> cols, W rhs) : cols_(std::move(cols)), rhs_(std::move(rhs)) {}

    void run() {
        const std::size_t k_count = cols_.size();
        std::vector<std::size_t> cand;
        for (std::size_t k = 0; k < k_count; ++k) {
            const auto& ck = cols_[k];
            ++enumerated_;
            if (ck.mid == 0 && W(ck.low) == rhs_)
                consider<1>({k}, {W(1)}, W(1));

            // Columns sorted by (l, r), so ck.l is the largest left end and
            // every earlier interval reaching ck.l shares that point.
            cand.clear();
            for (std::size_t i = 0; i < k; ++i)
                if (cols_[i].r >= ck.l)
                    cand.push_back(i);

            for (std::size_t i : cand)
                try_pair(i, k);
            for (std::size_t x = 0; x < cand.size(); ++x)
                for (std::size_t y = x + 1; y < cand.size(); ++y)
                    try_triple(cand[x], cand[y], k);
        }
    }

    bool found() const { return best_.has_value(); }
    std::uint64_t enumerated() const { return enumerated_; }
    const Rational& best_value() const { return *best_; }
    const IntervalMixture& best_argmax() const { return argmax_; }

private:
    void try_pair(std::size_t i, std::size_t j) {
        ++enumerated_;
        const auto& a = cols_[i];
        const auto& b = cols_[j];
        const W am(a.mid), bm(b.mid), al(a.low), bl(b.low);
        if (am != bm) {
            W den = am - bm;
            W wa = -bm;
            W wb = am;
            if (den < 0) {
                den = -den;
                wa = -wa;
                wb = -wb;
            }
            if (wa < 0 || wb < 0)
                return;
            if (wa * al + wb * bl != rhs_ * den)
                return;
            consider<2>({i, j}, {wa, wb}, den);
        } else if (am == 0 && al != bl) {
            W den = al - bl;
            W wa = rhs_ - bl;
            W wb = al - rhs_;
            if (den < 0) {
                den = -den;
                wa = -wa;
                wb = -wb;
            }
            if (wa < 0 || wb < 0)
                return;
            consider<2>({i, j}, {wa, wb}, den);
        }
    }

    void try_triple(std::size_t i, std::size_t j, std::size_t k) {
        ++enumerated_;
        const std::array<W, 3> top{W(1), W(1), W(1)};
        const std::array<W, 3> mid{W(cols_[i].mid), W(cols_[j].mid), W(cols_[k].mid)};
        const std::array<W, 3> low{W(cols_[i].low), W(cols_[j].low), W(cols_[k].low)};
        W den = det3(top, mid, low);
        if (den == 0)
            return;
        const std::array<W, 3> b_top{W(1), W(0), rhs_};
        std::array<W, 3> num{};
        for (std::size_t c = 0; c < 3; ++c) {
            auto t = top;
            auto m = mid;
            auto l = low;
            t[c] = b_top[0];
            m[c] = b_top[1];
            l[c] = b_top[2];
            num[c] = det3(t, m, l);
        }
        if (den < 0) {
            den = -den;
            for (auto& v : num)
                v = -v;
        }
        for (const auto& v : num)
            if (v < 0)
                return;
        consider<3>({i, j, k}, num, den);
    }

    template <std::size_t K>
    void consider(const std::array<std::size_t, K>& idx, const std::array<W, K>& num, const W& den) {
        double approx = 0;
        const double dd = as_double(den);
        for (std::size_t c = 0; c < K; ++c) {
            const auto& col = cols_[idx[c]];
            approx += as_double(num[c]) / dd * static_cast<double>(col.hits) / static_cast<double>(col.r - col.l + 1);
        }
        if (best_ && approx < best_approx_ - 1e-9)
            return;

        Rational exact = 0;
        const Integer den_exact = to_integer(den);
        for (std::size_t c = 0; c < K; ++c) {
            const auto& col = cols_[idx[c]];
            exact += Rational(to_integer(num[c]), den_exact) * make_rational(col.hits, col.r - col.l + 1);
        }
        if (best_ && !(exact > *best_))
            return;

        best_ = exact;
        best_approx_ = to_double(exact);
        argmax_.atoms.clear();
        for (std::size_t c = 0; c < K; ++c) {
            if (num[c] == 0)
                continue;
            const auto& col = cols_[idx[c]];
            argmax_.atoms[{col.l, col.r}] += Rational(to_integer(num[c]), den_exact);
        }
    }

    std::vector<IntervalColumn<S>> cols_;
    W rhs_;
    std::optional<Rational> best_;
    double best_approx_ = 0;
    IntervalMixture argmax_;
    std::uint64_t enumerated_ = 0;
};

template <typename S, typename W>
OracleResult<IntervalMixture> run_search(const std::vector<IntervalColumn<Integer>>& exact_cols,
                                         const Integer& rhs) {
    std::vector<IntervalColumn<S>> cols;
    cols.reserve(exact_cols.size());
    for (const auto& c : exact_cols) {
        if constexpr (std::is_same_v<S, Integer>)
            cols.push_back(c);
        else
            cols.push_back({c.l, c.r, c.mid.template convert_to<S>(), c.low.template convert_to<S>(), c.hits});
    }
    W w_rhs;
    if constexpr (std::is_same_v<W, Integer>)
        w_rhs = rhs;
    else
        w_rhs = rhs.convert_to<std::int64_t>();
    TwoSidedSearch<S, W> search(std::move(cols), w_rhs);
    search.run();
    if (!search.found())
        throw InfeasibleError("no unimodal pmf within the window has the requested mean and variance");
    return {search.best_value(), search.best_argmax(), search.enumerated()};
}

} // namespace

DiscreteExtremal extremal_markov_discrete(std::int64_t a, const Rational& mu, ExtremalTop top) {
    if (a < 1)
        throw DomainError("extremal_markov_discrete needs integer a >= 1");
    if (mu <= 0)
        throw InfeasibleError("extremal_markov_discrete needs mu > 0, got " + to_string(mu));
    const std::int64_t i = top == ExtremalTop::Upper ? 2 * a - 1 : 2 * a - 2;
    if (i < 1)
        throw InfeasibleError("the uniform{0..2a-2} maximizer needs a >= 2");
    // d_i = 2 mu / i must not exceed 1.
    const Rational cap = make_rational(i, 2);
    if (mu > cap)
        throw InfeasibleError("mu = " + to_string(mu) + " exceeds the feasibility cap " + to_string(cap) +
                              " of the point-mass plus uniform{0.." + std::to_string(i) + "} construction");

    DiscreteExtremal out;
    out.a = a;
    out.mu = mu;
    out.top = i;
    const Rational di = 2 * mu / i;
    out.mixture.atoms[i] = di;
    if (di != 1)
        out.mixture.atoms[0] = 1 - di;
    out.achieved_tail = mixture_tail(out.mixture, a);
    out.bound_value = std::get<Rational>(markov_decreasing(mu, a).value);
    return out;
}

ContinuousExtremal extremal_markov_continuous(double a, double mu, double epsilon) {
    if (!(a > 0) || !std::isfinite(a))
        throw DomainError("extremal_markov_continuous needs a > 0");
    if (!(epsilon > 0) || !(epsilon < a))
        throw DomainError("extremal_markov_continuous needs 0 < epsilon < a");
    if (mu < epsilon / 2 || mu > a)
        throw InfeasibleError("extremal_markov_continuous needs epsilon/2 <= mu <= a, got mu = " +
                              format_double(mu));
    ContinuousExtremal out;
    out.a = a;
    out.mu = mu;
    out.epsilon = epsilon;
    out.p = (mu - epsilon / 2) / (a - epsilon / 2);
    out.achieved_tail = (mu - epsilon / 2) / (2 * a - epsilon);
    out.bound_value = mu / (2 * a);
    return out;
}

OracleResult<UniformMixture> lp_max_tail_decreasing(std::int64_t a, const Rational& mu, std::int64_t n) {
    if (a < 1)
        throw DomainError("lp_max_tail_decreasing needs integer a >= 1");
    if (n < 0)
        throw DomainError("lp_max_tail_decreasing needs N >= 0");
    if (mu < 0 || mu > make_rational(n, 2))
        throw InfeasibleError("no decreasing pmf on {0.." + std::to_string(n) + "} has mean " + to_string(mu) +
                              " (feasible range is [0, N/2])");

    // Uniform{0..i} contributes max(0, i - a + 1) / (i + 1) to the tail.
    std::vector<Rational> gain(static_cast<std::size_t>(n + 1));
    for (std::int64_t i = a; i <= n; ++i)
        gain[static_cast<std::size_t>(i)] = make_rational(i - a + 1, i + 1);
    const Rational target = 2 * mu;  // E[D]

    OracleResult<UniformMixture> out;
    std::optional<Rational> best;
    auto offer = [&](Rational value, UniformMixture m) {
        if (best && !(value > *best))
            return;
        best = std::move(value);
        out.argmax = std::move(m);
    };

    for (std::int64_t i = 0; i <= n; ++i) {
        ++out.enumerated;
        if (target == i)
            offer(gain[static_cast<std::size_t>(i)], UniformMixture{{{i, Rational(1)}}});
        for (std::int64_t j = i + 1; j <= n; ++j) {
            ++out.enumerated;
            if (!(i < target && target < j))
                continue;
            const Rational di = (Rational(j) - target) / (j - i);
            const Rational dj = (target - i) / (j - i);
            offer(di * gain[static_cast<std::size_t>(i)] + dj * gain[static_cast<std::size_t>(j)],
                  UniformMixture{{{i, di}, {j, dj}}});
        }
    }
    out.max_tail = *best;
    return out;
}

OracleResult<IntervalMixture> lp_max_two_sided_unimodal(std::int64_t a, const Rational& mu, const Rational& var,
                                                        std::int64_t radius) {
    if (a < 1)
        throw DomainError("lp_max_two_sided_unimodal needs integer a >= 1");
    if (var < 0)
        throw DomainError("lp_max_two_sided_unimodal needs var >= 0");
    if (radius < 0)
        throw DomainError("lp_max_two_sided_unimodal needs a nonnegative window radius");

    const Integer lo_i = ceil_of(mu - radius);
    const Integer hi_i = floor_of(mu + radius);
    if (lo_i > hi_i)
        throw InfeasibleError("the window around mu contains no integer");
    const auto lo = lo_i.convert_to<std::int64_t>();
    const auto hi = hi_i.convert_to<std::int64_t>();

    const Integer p = numerator(mu);
    const Integer q = denominator(mu);
    const Integer vn = numerator(var);
    const Integer vd = denominator(var);
    const Integer upper = ceil_of(mu + a);
    const Integer lower = floor_of(mu - a);

    std::vector<IntervalColumn<Integer>> cols;
    Integer largest = 12 * vn * q * q;
    const Integer rhs = largest;
    for (std::int64_t l = lo; l <= hi; ++l) {
        for (std::int64_t r = l; r <= hi; ++r) {
            IntervalColumn<Integer> c;
            c.l = l;
            c.r = r;
            const std::int64_t n = r - l + 1;
            c.mid = Integer(l + r) * q - 2 * p;
            c.low = vd * (Integer(n * n - 1) * q * q + 3 * c.mid * c.mid);
            std::int64_t hits = 0;
            for (std::int64_t x = l; x <= r; ++x)
                if (x >= upper || x <= lower)
                    ++hits;
            c.hits = hits;
            largest = std::max({largest, Integer(abs(c.mid)), c.low});
            cols.push_back(std::move(c));
        }
    }

    // 3x3 determinants of entries below 2^60 stay below 2^123.
    if (largest < (Integer(1) << 60))
        return run_search<std::int64_t, __int128>(cols, rhs);
    return run_search<Integer, Integer>(cols, rhs);
}

std::vector<TightnessRow> verify_tightness_theorem2(std::int64_t a_first, std::int64_t a_last,
                                                    const std::vector<Rational>& mu_grid, std::int64_t n) {
    if (a_first < 1 || a_last < a_first)
        throw DomainError("verify needs a range 1 <= first <= last");
    if (mu_grid.empty())
        throw DomainError("verify needs at least one mu");

    std::vector<TightnessRow> rows;
    for (std::int64_t a = a_first; a <= a_last; ++a) {
        for (const auto& mu : mu_grid) {
            TightnessRow row;
            row.a = a;
            row.mu = mu;
            row.bound = mu / (2 * a - 1);
            try {
                row.oracle = lp_max_tail_decreasing(a, mu, n).max_tail;
            } catch (const InfeasibleError&) {
                row.status = CellStatus::Infeasible;
                rows.push_back(std::move(row));
                continue;
            }
            if (*row.oracle > row.bound)
                throw SoundnessViolation("oracle " + to_string(*row.oracle) + " exceeds mu/(2a-1) = " +
                                         to_string(row.bound) + " at a = " + std::to_string(a) +
                                         ", mu = " + to_string(mu));
            row.equal = *row.oracle == row.bound;
            const bool fits = 2 * mu <= 2 * a - 1 && n >= 2 * a - 1;
            row.status = fits ? CellStatus::Tight : CellStatus::Slack;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace tailbounds
