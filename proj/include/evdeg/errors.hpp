#ifndef EVDEG_ERRORS_HPP
#define EVDEG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace evdeg {

// Malformed or out-of-contract input (bad vertex ids, non-permutations,
// probabilities outside (0,1), singular transforms, ...).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Instance exceeds a configured exact-computation limit, or a partition /
// size bound cannot be met at this n. The message names the violated limit.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A conditioning constraint admits no satisfying outcome.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evdeg

#endif
