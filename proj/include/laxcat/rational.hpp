#pragma once

// Exact rational scalars. All model arithmetic in this library is exact;
// there are no floating-point code paths and no tolerance parameters.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace laxcat {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += "/";
    s += denominator(q).str();
  }
  return s;
}

// Accepts "p", "-p", "p/q". Used by the model-file reader and the CLI.
inline Rational parse_rational(std::string_view tok) {
  auto bad = [&] { throw std::runtime_error("bad rational token '" + std::string(tok) + "'"); };
  if (tok.empty()) bad();
  std::size_t slash = tok.find('/');
  try {
    if (slash == std::string_view::npos)
      return Rational(boost::multiprecision::cpp_int(std::string(tok)));
    boost::multiprecision::cpp_int num{std::string(tok.substr(0, slash))};
    boost::multiprecision::cpp_int den{std::string(tok.substr(slash + 1))};
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    bad();
  }
  return Rational(0);  // unreachable
}

}  // namespace laxcat
