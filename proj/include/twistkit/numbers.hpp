#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>

namespace twistkit {

// Exact arithmetic used throughout: quarter-integer effect sums and their
// relatives stay in Rat; tiling counts can exceed 2^63 and live in BigInt.
using Rat = boost::rational<long long>;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

// Exact conversion; refuses to round.
inline long long to_integer(const Rat& r) {
  if (!is_integer(r)) throw std::domain_error("rational is not an integer");
  return r.numerator();
}

}  // namespace twistkit
