#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tailbounds {

// GMP-backed exact arithmetic. Expression templates are disabled so that
// `auto` always binds to a value.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

/// Thrown for malformed textual input. `position` is the byte offset of the
/// offending character within the parsed text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses "7", "-3/4", or a terminating decimal such as "4.25" into an exact
/// rational. Surrounding whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// "num/den" in lowest terms, or "num" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational& value) {
    return boost::multiprecision::denominator(value) == 1;
}

} // namespace tailbounds
