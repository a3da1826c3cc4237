#include "prodinfluence/rational.hpp"

#include "prodinfluence/errors.hpp"

#include <algorithm>
#include <cctype>

namespace prodinfluence {

std::string to_fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        negative = num.front() == '-';
        num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        throw InputError("malformed rational '" + std::string(text) +
                         "': expected \"p/q\" or \"p\" with integer p and positive integer q");
    }
    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0) {
        throw InputError("malformed rational '" + std::string(text) + "': zero denominator");
    }
    if (negative) {
        n = -n;
    }
    return Rational(n, d);
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

long double to_long_double(const Rational& value) {
    return value.convert_to<long double>();
}

} // namespace prodinfluence
