#pragma once

// Exact rational scalars for the brace-tree kernel.
//
// Everything downstream (differentials, rank computations, witnesses) runs
// over Q with no floating point and no modular shortcuts, so results are
// exact by construction.  boost::multiprecision::cpp_rational is a pure
// header implementation: no GMP linkage required.

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace braceops {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;  // canonical "p" or "p/q", q > 0, gcd(p,q) = 1
  return os.str();
}

// Parses "p", "-p", "p/q", "+p/q" (whitespace-free).
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  std::string t = s[0] == '+' ? s.substr(1) : s;
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(t));
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  }
}

}  // namespace braceops
