#pragma once

#include <stdexcept>
#include <string>

namespace bmatch {

// Input or contract violation (bad walk, infeasible budget, parse error, ...).
struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A simulated machine exceeded its local memory or message budget.
struct ModelViolation : std::runtime_error {
  explicit ModelViolation(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver hit its iteration cap without reaching its exit condition.
struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

inline void check(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInput(msg);
}

}  // namespace bmatch
