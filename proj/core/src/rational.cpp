#include "scop/rational.hpp"

#include "scop/error.hpp"

#include <cctype>
#include <cmath>

namespace scop {

namespace {

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rational rational_from_string(const std::string& text) {
    if (text.empty()) raise(errc::parse_error, "empty rational literal");

    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!is_integer_text(num) || !is_integer_text(den))
            raise(errc::parse_error, "bad rational literal '" + text + "'");
        BigInt d(den);
        if (d == 0) raise(errc::parse_error, "zero denominator in '" + text + "'");
        return Rational(BigInt(num), d);
    }

    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 12)
            raise(errc::parse_error, "more than 12 fractional digits in '" + text + "'");
        const bool negative = !whole.empty() && whole[0] == '-';
        const std::string whole_digits =
            (whole.empty() || whole == "-" || whole == "+") ? "0" : whole;
        if (!is_integer_text(whole_digits) || (!frac.empty() && !is_integer_text(frac)))
            raise(errc::parse_error, "bad decimal literal '" + text + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt whole_part(whole_digits);
        BigInt frac_part = frac.empty() ? BigInt(0) : BigInt(frac);
        BigInt numerator = whole_part * scale + (negative ? -frac_part : frac_part);
        return Rational(numerator, scale);
    }

    if (!is_integer_text(text)) raise(errc::parse_error, "bad rational literal '" + text + "'");
    return Rational(BigInt(text));
}

std::string rational_to_string(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) raise(errc::parse_error, "non-finite double");
    return Rational(value);
}

double rational_to_double(const Rational& value) { return value.convert_to<double>(); }

} // namespace scop
