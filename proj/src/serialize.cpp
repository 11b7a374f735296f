#include "tailbounds/serialize.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <string>

#include "tailbounds/errors.hpp"

namespace tailbounds {

using nlohmann::json;

namespace {

class LiteralReader {
public:
    explicit LiteralReader(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool done() const { return pos_ == text_.size(); }

    void expect(std::string_view token) {
        if (text_.substr(pos_, token.size()) != token)
            throw ParseError("expected '" + std::string(token) + "'", pos_);
        pos_ += token.size();
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::int64_t integer() {
        const std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-')
            ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::int64_t value = 0;
        auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || end != text_.data() + pos_)
            throw ParseError("expected an integer", start);
        return value;
    }

    // Rational token up to the next ',' or end of input.
    Rational rational() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ',')
            ++pos_;
        const auto token = text_.substr(start, pos_ - start);
        if (token.empty())
            throw ParseError("empty weight", start);
        try {
            return parse_rational(token);
        } catch (const ParseError& e) {
            throw ParseError("bad weight '" + std::string(token) + "'", start + e.position());
        }
    }

    void finish() {
        if (!done())
            throw ParseError("trailing characters", pos_);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Rational rational_from_json(const json& j, std::string_view field) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    throw ValidationError(std::string(field) + " must be a \"num/den\" string or an integer");
}

std::int64_t int_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw ValidationError(std::string("missing integer field '") + key + "'");
    return j.at(key).get<std::int64_t>();
}

} // namespace

Pmf parse_pmf_literal(std::string_view text) {
    LiteralReader in(text);
    if (text.starts_with("uniform:")) {
        in.expect("uniform:");
        const auto range_start = in.pos();
        const auto lo = in.integer();
        in.expect("..");
        const auto hi = in.integer();
        in.finish();
        if (hi < lo)
            throw ParseError("uniform range needs lo <= hi", range_start);
        return Pmf::uniform(lo, hi);
    }
    if (text.starts_with("point:")) {
        in.expect("point:");
        const auto k = in.integer();
        in.finish();
        return Pmf::point(k);
    }
    if (text.starts_with("weights:")) {
        in.expect("weights:");
        const auto offset = in.integer();
        in.expect(";");
        std::vector<Rational> weights;
        do {
            weights.push_back(in.rational());
        } while (in.accept(','));
        in.finish();
        return Pmf::make(offset, std::move(weights));
    }
    throw ParseError("expected 'uniform:', 'point:' or 'weights:'", 0);
}

json render(const Rational& v, NumberStyle style) {
    if (style == NumberStyle::Exact)
        return to_string(v);
    return to_double(v);
}

json render(const BoundValue& v, NumberStyle style) {
    if (const auto* q = std::get_if<Rational>(&v))
        return render(*q, style);
    return std::get<double>(v);
}

json to_json(const Pmf& p, NumberStyle style) {
    json weights = json::array();
    for (const auto& w : p.weights())
        weights.push_back(render(w, style));
    return {{"offset", p.offset()}, {"weights", std::move(weights)}};
}

Pmf pmf_from_json(const json& j) {
    if (!j.is_object())
        throw ValidationError("pmf JSON must be an object");
    const auto offset = int_field(j, "offset");
    if (!j.contains("weights") || !j.at("weights").is_array())
        throw ValidationError("pmf JSON needs a 'weights' array");
    std::vector<Rational> weights;
    for (const auto& w : j.at("weights"))
        weights.push_back(rational_from_json(w, "weight"));
    return Pmf::make(offset, std::move(weights));
}

json to_json(const UniformMixture& m, NumberStyle style) {
    json atoms = json::object();
    for (const auto& [i, d] : m.atoms)
        atoms[std::to_string(i)] = render(d, style);
    return {{"atoms", std::move(atoms)}};
}

UniformMixture uniform_mixture_from_json(const json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_object())
        throw ValidationError("uniform mixture JSON needs an 'atoms' object");
    UniformMixture m;
    for (const auto& [key, value] : j.at("atoms").items()) {
        std::int64_t i = 0;
        auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), i);
        if (ec != std::errc{} || end != key.data() + key.size())
            throw ValidationError("uniform mixture key '" + key + "' is not an integer");
        m.atoms[i] = rational_from_json(value, "atom weight");
    }
    validate(m);
    return m;
}

json to_json(const IntervalMixture& m, NumberStyle style) {
    json atoms = json::array();
    for (const auto& [interval, w] : m.atoms)
        atoms.push_back({{"l", interval.first}, {"r", interval.second}, {"w", render(w, style)}});
    return {{"atoms", std::move(atoms)}};
}

IntervalMixture interval_mixture_from_json(const json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array())
        throw ValidationError("interval mixture JSON needs an 'atoms' array");
    IntervalMixture m;
    for (const auto& atom : j.at("atoms")) {
        if (!atom.is_object() || !atom.contains("w"))
            throw ValidationError("interval atom needs 'l', 'r' and 'w'");
        m.atoms[{int_field(atom, "l"), int_field(atom, "r")}] += rational_from_json(atom.at("w"), "w");
    }
    validate(m);
    return m;
}

json to_json(const BoundResult& b, NumberStyle style) {
    return {{"formula", formula_name(b.formula)},
            {"value", render(b.value, style)},
            {"verified", b.verified},
            {"asserted", b.asserted}};
}

json to_json(const DiscreteExtremal& e, NumberStyle style) {
    return {{"kind", "DiscreteTwoAtom"},
            {"a", e.a},
            {"mu", render(e.mu, style)},
            {"atoms", to_json(e.mixture, style)["atoms"]},
            {"pmf", to_json(from_uniform_mixture(e.mixture), style)},
            {"achieved_tail", render(e.achieved_tail, style)},
            {"bound_value", render(e.bound_value, style)}};
}

json to_json(const ContinuousExtremal& e) {
    return {{"kind", "ContinuousEpsilonMixture"},
            {"a", e.a},
            {"mu", e.mu},
            {"epsilon", e.epsilon},
            {"p", e.p},
            {"achieved_tail", e.achieved_tail},
            {"bound_value", e.bound_value}};
}

std::string_view status_name(CellStatus s) {
    switch (s) {
    case CellStatus::Tight: return "tight";
    case CellStatus::Slack: return "slack";
    case CellStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

json to_json(const TightnessRow& row, NumberStyle style) {
    return {{"a", row.a},
            {"mu", render(row.mu, style)},
            {"oracle", row.oracle ? render(*row.oracle, style) : json(nullptr)},
            {"bound", render(row.bound, style)},
            {"equal", row.equal},
            {"status", status_name(row.status)}};
}

std::string tightness_csv(const std::vector<TightnessRow>& rows, NumberStyle style) {
    auto cell = [style](const Rational& v) {
        return style == NumberStyle::Exact ? to_string(v) : format_double(to_double(v));
    };
    std::ostringstream out;
    out << "a,mu,oracle,bound,equal,status\n";
    for (const auto& row : rows) {
        out << row.a << ',' << cell(row.mu) << ',' << (row.oracle ? cell(*row.oracle) : std::string("infeasible"))
            << ',' << cell(row.bound) << ',' << (row.equal ? "true" : "false") << ',' << status_name(row.status)
            << '\n';
    }
    return out.str();
}

} // namespace tailbounds
