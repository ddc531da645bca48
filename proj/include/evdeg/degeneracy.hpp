#ifndef EVDEG_DEGENERACY_HPP
#define EVDEG_DEGENERACY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "evdeg/graph.hpp"
#include "evdeg/revelation.hpp"
#include "evdeg/rng.hpp"

namespace evdeg {

struct EliminationOrder {
  std::vector<int> order;  // a permutation of 0..n-1
};

struct DecompositionChain {
  std::vector<std::vector<int>> chain;  // V_1 ⊇ V_2 ⊇ ... ⊇ V_k = ∅
};

// True iff for every 1 <= i <= n-2, the i-th vertex has an even number of
// neighbors among the later ones. Non-permutations are an input error.
bool verify_ordering(const Graph& g, const EliminationOrder& o);

// True iff the chain is nested, starts at V, ends empty, every G[V_i] has an
// even number of edges, and every difference set is independent.
bool verify_decomposition(const Graph& g, const DecompositionChain& c);

inline constexpr int kDefaultDpLimit = 22;
inline constexpr int kDefaultDecomposeLimit = 14;

// Exact decision by reachability DP over vertex subsets; n past the limit is
// a capacity error (callers fall back to the recursive certifier).
std::optional<EliminationOrder> exact_even_degenerate(const Graph& g,
                                                      int dpLimit = kDefaultDpLimit);

enum class GreedyPolicy { FirstIndex, Random, MinDegree, MaxDegree };

// Repeatedly removes an even-degree vertex chosen by the policy until at
// most two remain; any returned order passes verify_ordering.
std::optional<EliminationOrder> greedy_even_degenerate(const Graph& g,
                                                       GreedyPolicy policy,
                                                       RandomSource& rng);

// Exact decision over subset states with even induced edge count, stepping
// by removal of a nonempty independent set.
std::optional<DecompositionChain> exact_even_decomposable(
    const Graph& g, int limit = kDefaultDecomposeLimit);

// Builds a graph on n vertices matching a prescribed revelation (induced
// subgraph on A, degree parities, edge-count parity), together with an
// elimination order witnessing even-degeneracy. Gadget vertices take the
// lowest unused labels outside A: the x_a ascending in a, then the y_a, then
// the hub, two triangle mates, and the parity pad. Requires n >= 3|A| + 4.
std::pair<Graph, EliminationOrder> build_prescribed_witness(const Revelation& rev,
                                                            int n);

}  // namespace evdeg

#endif
