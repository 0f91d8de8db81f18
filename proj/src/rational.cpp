#include "fkg/rational.hpp"

#include "fkg/errors.hpp"

#include <charconv>
#include <cmath>

namespace fkg {

namespace {

long long parse_ll(std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("not an integer: '" + std::string(s) + "'");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ConfigError("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        long long num = parse_ll(text.substr(0, slash));
        long long den = parse_ll(text.substr(slash + 1));
        if (den == 0) throw ConfigError("rational with zero denominator: '" + std::string(text) + "'");
        return {num, den};
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 9) throw ConfigError("too many decimal digits in rational: '" + std::string(text) + "'");
        long long den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        long long whole = dot == 0 ? 0 : parse_ll(text.substr(0, dot));
        bool negative = !text.empty() && text.front() == '-';
        long long fpart = frac.empty() ? 0 : parse_ll(frac);
        long long num = whole * den + (negative ? -fpart : fpart);
        return {num, den};
    }
    return {parse_ll(text), 1};
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace fkg
