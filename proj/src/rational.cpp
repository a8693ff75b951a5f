#include "pact/rational.hpp"

#include "pact/error.hpp"

namespace pact {

Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(std::string(text));
    Rational num(std::string(text.substr(0, slash)));
    Rational den(std::string(text.substr(slash + 1)));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return num / den;
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
}

}  // namespace pact
