#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "bmatch/errors.hpp"

namespace bmatch {

// All fractional values, weights and thresholds are exact rationals so that
// comparisons against constants like 0.05 or eps^12 never depend on rounding.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den) { return Rat(Int(num), Int(den)); }

inline double to_double(const Rat& x) { return static_cast<double>(x); }

// Parses a decimal literal ("3", "-0.25", "1e-3", "2.5e2") into an exact rational.
Rat rat_from_decimal(const std::string& text);

// "p/q" for non-integers, plain integer otherwise. Exact, locale-independent.
std::string rat_to_string(const Rat& x);

// Round-trippable decimal where the denominator allows it, else "p/q".
std::string rat_to_decimal_or_fraction(const Rat& x);

// floor(x * 2^64) clamped to [0, 2^64-1]; used to turn exact rational
// probabilities into 64-bit sampling thresholds.
std::uint64_t prob_to_u64_threshold(const Rat& p);

// floor(log2(x)) for x >= 1.
int floor_log2(const Int& x);

inline int ceil_log2_int(long long x) {
  int r = 0;
  long long p = 1;
  while (p < x) {
    p <<= 1;
    ++r;
  }
  return r;
}

}  // namespace bmatch
