#pragma once

#include <cstdint>
#include <initializer_list>

#include "bmatch/rational.hpp"

namespace bmatch {

// splitmix64 finalizer; the workhorse for counter-based stream derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b) ^ c);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return mix64(mix64(a, b, c) ^ d);
}

// Small counter-based generator. Streams derived from (seed, labels...) are
// independent of host scheduling, which is what makes simulated machines and
// parallel repetitions reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix64(seed)) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, n) by rejection; exact for any n >= 1.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = ~0ULL - (~0ULL % n);
    for (;;) {
      std::uint64_t v = next();
      if (v < limit || limit == 0) return v % n;
    }
  }

  bool coin() { return next() & 1; }

  // True with probability floor(p*2^64)/2^64; exact when den(p) divides 2^64.
  bool chance(const Rat& p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    return next() < prob_to_u64_threshold(p);
  }

  Rng fork(std::uint64_t label) { return Rng(mix64(state_, 0x5eedf02cull, label)); }

 private:
  std::uint64_t state_;
};

inline Rng derived_rng(std::uint64_t seed, std::uint64_t a) { return Rng(mix64(seed, a)); }
inline Rng derived_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return Rng(mix64(seed, a, b));
}
inline Rng derived_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return Rng(mix64(seed, a, b, c));
}

}  // namespace bmatch
