#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace pact {

/// Exact rational scalar. Expression templates are off so the type composes
/// with Eigen's dense kernels.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// "p/q" with q > 0; integers are written as "p/1".
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_fraction(std::string_view text);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace pact
