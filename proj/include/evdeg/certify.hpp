#ifndef EVDEG_CERTIFY_HPP
#define EVDEG_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "evdeg/degeneracy.hpp"
#include "evdeg/double_removal.hpp"

namespace evdeg {

struct CertifyParams {
  int dpLimit = kDefaultDpLimit;
  int maxAttempts = 3;       // fresh B/C split per attempt
  double sFactor = kDefaultSFactor;
  int eta = 0;               // 0 = default
  int greedyTries = 32;      // randomized greedy fallback budget per level
};

struct CertifyDiagnostics {
  int levels = 0;
  int removalRuns = 0;
  int removalFailures = 0;
  int greedyFallbacks = 0;
  int dpCalls = 0;
  std::vector<std::string> trail;
};

// The recursive certifier: subset DP at or below dpLimit, otherwise dual
// removal attempts with recursion on the surviving side; exhausted attempts
// fall back to multi-policy greedy at the current level. Any returned order
// passes verify_ordering; absence means every route was exhausted.
std::optional<EliminationOrder> recursive_even_degenerate(
    const Graph& g, const Revelation& rev, double alpha, const CertifyParams& params,
    RandomSource& rng, CertifyDiagnostics* diag = nullptr);

}  // namespace evdeg

#endif
