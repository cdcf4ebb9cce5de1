#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <string>

namespace koszul {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::rational<Integer>;

inline Rational rat(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

inline bool is_zero(const Rational& r) { return r.numerator() == 0; }

inline std::string to_string(const Rational& r) {
  std::string s = r.numerator().str();
  if (r.denominator() != 1) s += "/" + r.denominator().str();
  return s;
}

}  // namespace koszul
