#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "tailbounds/bounds.hpp"
#include "tailbounds/decompose.hpp"
#include "tailbounds/extremal.hpp"
#include "tailbounds/pmf.hpp"

namespace tailbounds {

/// How rationals are rendered: "num/den" strings, or shortest round-trip
/// decimals.
enum class NumberStyle { Exact, Float };

/// Parses `uniform:l..r`, `point:k`, or `weights:o;w0,w1,...` (weights are
/// integers or num/den). Throws ParseError with the offending position, or
/// ValidationError when the weights do not form a pmf.
Pmf parse_pmf_literal(std::string_view text);

nlohmann::json render(const Rational& v, NumberStyle style);
nlohmann::json render(const BoundValue& v, NumberStyle style);

nlohmann::json to_json(const Pmf& p, NumberStyle style = NumberStyle::Exact);
/// Accepts {"offset": int, "weights": ["num/den", ...]}; weights may also be
/// JSON integers. Throws ValidationError on schema violations.
Pmf pmf_from_json(const nlohmann::json& j);

nlohmann::json to_json(const UniformMixture& m, NumberStyle style = NumberStyle::Exact);
UniformMixture uniform_mixture_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IntervalMixture& m, NumberStyle style = NumberStyle::Exact);
IntervalMixture interval_mixture_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundResult& b, NumberStyle style = NumberStyle::Exact);
nlohmann::json to_json(const DiscreteExtremal& e, NumberStyle style = NumberStyle::Exact);
nlohmann::json to_json(const ContinuousExtremal& e);
nlohmann::json to_json(const TightnessRow& row, NumberStyle style = NumberStyle::Exact);

std::string_view status_name(CellStatus s);

/// Header "a,mu,oracle,bound,equal,status" followed by one line per row.
std::string tightness_csv(const std::vector<TightnessRow>& rows, NumberStyle style = NumberStyle::Exact);

} // namespace tailbounds
