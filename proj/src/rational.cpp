#include "tailbounds/rational.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace tailbounds {

namespace {

// Reads an optionally signed run of digits starting at `pos`.
Integer read_integer(std::string_view text, std::size_t& pos, bool allow_sign) {
    bool negative = false;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos == start)
        throw ParseError("expected digits in rational '" + std::string(text) + "'", pos);
    Integer value{std::string(text.substr(start, pos - start))};
    return negative ? Integer(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::size_t pos = 0;
    const bool negative = !text.empty() && text[0] == '-';
    Integer whole = read_integer(text, pos, true);
    if (pos == text.size())
        return Rational(whole);

    if (text[pos] == '/') {
        ++pos;
        Integer den = read_integer(text, pos, false);
        if (pos != text.size())
            throw ParseError("trailing characters in rational '" + std::string(text) + "'", pos);
        if (den == 0)
            throw ParseError("zero denominator in rational '" + std::string(text) + "'", pos - 1);
        return Rational(whole, den);
    }

    if (text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start || pos != text.size())
            throw ParseError("malformed decimal '" + std::string(text) + "'", pos);
        const auto digits = text.substr(start, pos - start);
        Integer frac{std::string(digits)};
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits.size()));
        Rational magnitude = Rational(boost::multiprecision::abs(whole)) + Rational(frac, scale);
        return negative ? Rational(-magnitude) : magnitude;
    }

    throw ParseError("unexpected character in rational '" + std::string(text) + "'", pos);
}

std::string to_string(const Rational& value) {
    return value.str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
        return std::to_string(value);
    return std::string(buf.data(), end);
}

} // namespace tailbounds
