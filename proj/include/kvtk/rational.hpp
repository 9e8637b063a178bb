#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kvtk {

/// Exact rational scalar used throughout the symbolic layers.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational: '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

/// Formats as "p/q", or "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace kvtk
