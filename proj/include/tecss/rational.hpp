#pragma once

#include <boost/rational.hpp>
#include <string>

namespace tecss {

using Rational = boost::rational<long long>;

// "5/4", or "3" for integers.
inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "a/b", "a" or a decimal such as "1.25".
Rational parse_rational(const std::string& text);

inline long long floor_of(const Rational& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

}  // namespace tecss
