// Exact integer and rational scalars used throughout the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace qr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

// floor(a/b) for exact integers, b != 0
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// Serialize canonically: plain integer when the denominator is 1, else "p/q".
inline std::string rat_to_string(const Rat& q) {
  if (is_integer(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

// Accepts "p", "p/q", with optional sign; rejects anything else.
inline Rat rat_from_string(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("bad fraction literal: '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) bad();
    return Rat(p, q);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rat();  // unreachable
}

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

// Least positive integer n with n*q integral for every coordinate.
inline Int common_denominator(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& q : v) l = lcm(l, den(q));
  return l;
}

}  // namespace qr
