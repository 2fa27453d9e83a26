#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace frlab {

/// Exact rational used for every variance and closed-form computation.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline bool is_integer(const Rational& q) { return q.denominator() == 1; }

}  // namespace frlab
