#include "bmatch/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace bmatch {

Rat rat_from_decimal(const std::string& text) {
  check(!text.empty(), "empty numeric field");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  Int num = 0;
  long long frac_digits = 0;
  bool seen_digit = false, seen_dot = false;
  long long exponent = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      check(!seen_dot, "malformed number '" + text + "'");
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      check(seen_digit, "malformed number '" + text + "'");
      char* end = nullptr;
      exponent = std::strtoll(text.c_str() + i + 1, &end, 10);
      check(end == text.c_str() + text.size() && end != text.c_str() + i + 1,
            "malformed exponent in '" + text + "'");
      break;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      num = num * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else {
      throw InvalidInput("malformed number '" + text + "'");
    }
  }
  check(seen_digit, "malformed number '" + text + "'");
  Int den = 1;
  long long down = frac_digits - exponent;
  if (down > 0) {
    for (long long j = 0; j < down; ++j) den *= 10;
  } else {
    for (long long j = 0; j < -down; ++j) num *= 10;
  }
  Rat r(num, den);
  return neg ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

std::string rat_to_decimal_or_fraction(const Rat& x) {
  Int den = denominator(x);
  // Decimal terminates iff den = 2^a * 5^b.
  Int d = den;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  if (d != 1) return rat_to_string(x);
  Int num = numerator(x);
  bool neg = num < 0;
  if (neg) num = -num;
  Int ip = num / den, rem = num % den;
  std::string out = (neg ? "-" : "") + ip.str();
  if (rem != 0) {
    out += '.';
    while (rem != 0) {
      rem *= 10;
      out += static_cast<char>('0' + static_cast<int>(rem / den));
      rem %= den;
    }
  }
  return out;
}

std::uint64_t prob_to_u64_threshold(const Rat& p) {
  if (p <= 0) return 0;
  if (p >= 1) return ~0ULL;
  Int scaled = (numerator(p) << 64) / denominator(p);
  return static_cast<std::uint64_t>(scaled);
}

int floor_log2(const Int& x) {
  check(x >= 1, "floor_log2 needs x >= 1");
  return static_cast<int>(boost::multiprecision::msb(x));
}

}  // namespace bmatch
