#ifndef FKG_RATIONAL_HPP
#define FKG_RATIONAL_HPP

#include <boost/rational.hpp>
#include <string>
#include <string_view>

namespace fkg {

// Dilation weights and homogeneous degrees are kept as exact rationals so
// homogeneity identities like 2*m_j*v_j == nu are equality checks, not
// float comparisons.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "3", "3/2", "0.5" (decimals with up to 9 fractional digits).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

} // namespace fkg

#endif
