#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "dualgap/errors.hpp"

namespace dualgap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const BigInt& n) { return n.sign(); }
inline int sign_of(const Rational& r) { return r.sign(); }

// Floor division, any signs, b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DomainError("floor_div by zero");
  BigInt q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt rat_floor(const Rational& r) { return floor_div(num(r), den(r)); }
inline BigInt rat_ceil(const Rational& r) { return -rat_floor(-r); }

// Integer square root, n >= 0: largest t with t*t <= n.
inline BigInt int_sqrt(const BigInt& n) {
  if (n < 0) throw DomainError("int_sqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline std::string to_string(const BigInt& n) { return n.str(); }

inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline BigInt pow10(unsigned k) {
  BigInt p = 1;
  while (k--) p *= 10;
  return p;
}

}  // namespace dualgap
