#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "spencer/core/error.hpp"

namespace spencer {

/* All cohomology-path arithmetic is exact.  cpp_rational keeps values
 * normalized (gcd reduced, positive denominator). */
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/* Parses "p/q" or "p".  Whitespace is not accepted. */
inline Rat rat_parse(std::string_view s) {
  if (s.empty()) throw input_error("rational: empty string");
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
    Int num(std::string(s.substr(0, slash)));
    Int den(std::string(s.substr(slash + 1)));
    if (den == 0) throw input_error("rational: zero denominator in '" + std::string(s) + "'");
    if (den < 0) { /* cpp_rational wants a positive denominator */
      num = -num;
      den = -den;
    }
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw input_error("rational: cannot parse '" + std::string(s) + "'");
  }
}

/* Canonical form "p/q", q >= 1, used by every JSON emitter so reports
 * are byte-stable. */
inline std::string rat_str(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double rat_double(const Rat& r) { return r.template convert_to<double>(); }

}  // namespace spencer
