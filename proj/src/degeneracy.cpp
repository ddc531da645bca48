#include "evdeg/degeneracy.hpp"

#include <algorithm>
#include <bit>

#include "evdeg/errors.hpp"

namespace evdeg {

namespace {

void check_permutation(int n, const std::vector<int>& order) {
  if (int(order.size()) != n) throw InputError("ordering: wrong length");
  std::vector<uint8_t> seen(size_t(n), 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[size_t(v)]) throw InputError("ordering: not a permutation");
    seen[size_t(v)] = 1;
  }
}

}  // namespace

bool verify_ordering(const Graph& g, const EliminationOrder& o) {
  int n = g.vertex_count();
  check_permutation(n, o.order);
  VertexSet remaining(n, true);
  for (int i = 0; i + 2 < n; ++i) {
    int v = o.order[size_t(i)];
    if (g.par_star(v, remaining)) return false;
    remaining.reset(v);
  }
  return true;
}

bool verify_decomposition(const Graph& g, const DecompositionChain& c) {
  int n = g.vertex_count();
  if (c.chain.empty()) return false;
  if (int(c.chain.front().size()) != n) return false;
  if (!c.chain.back().empty()) return false;
  VertexSet prev = VertexSet::of(n, c.chain.front());
  if (prev.count() != n) return false;
  for (size_t i = 0; i < c.chain.size(); ++i) {
    VertexSet cur = VertexSet::of(n, c.chain[i]);
    if (i > 0) {
      if (!prev.contains_all(cur)) return false;
      VertexSet removed = difference(prev, cur);
      auto rv = removed.to_vector();
      for (size_t x = 0; x < rv.size(); ++x)
        for (size_t y = x + 1; y < rv.size(); ++y)
          if (g.has_edge(rv[x], rv[y])) return false;
      prev = cur;
    }
    long long e = 0;
    auto cv = cur.to_vector();
    for (size_t x = 0; x < cv.size(); ++x)
      for (size_t y = x + 1; y < cv.size(); ++y)
        if (g.has_edge(cv[x], cv[y])) ++e;
    if (e & 1) return false;
  }
  return true;
}

std::optional<EliminationOrder> exact_even_degenerate(const Graph& g, int dpLimit) {
  int n = g.vertex_count();
  if (n > dpLimit || n > 28)
    throw CapacityError("exact_even_degenerate: n exceeds the subset-DP limit");
  std::vector<int> identity(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) identity[size_t(i)] = i;
  if (n <= 2) return EliminationOrder{identity};

  std::vector<uint32_t> adj(size_t(n), 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (v != u && g.has_edge(u, v)) adj[size_t(u)] |= 1u << v;

  uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  size_t states = size_t(1) << n;
  std::vector<uint64_t> reach((states + 63) / 64, 0);
  std::vector<uint8_t> removedToReach(states, 0);  // vertex+1 removed to arrive
  auto mark = [&](size_t s) { reach[s >> 6] |= 1ull << (s & 63); };
  auto seen = [&](size_t s) { return (reach[s >> 6] >> (s & 63)) & 1; };

  std::vector<uint32_t> stack;
  stack.push_back(full);
  mark(full);
  uint32_t accept = 0;
  bool found = false;
  while (!stack.empty() && !found) {
    uint32_t t = stack.back();
    stack.pop_back();
    if (std::popcount(t) == 2) {
      accept = t;
      found = true;
      break;
    }
    uint32_t iter = t;
    while (iter) {
      int v = std::countr_zero(iter);
      iter &= iter - 1;
      if (std::popcount(adj[size_t(v)] & t) & 1) continue;
      uint32_t next = t & ~(1u << v);
      if (!seen(next)) {
        mark(next);
        removedToReach[next] = uint8_t(v + 1);
        stack.push_back(next);
      }
    }
  }
  if (!found) return std::nullopt;

  std::vector<int> order;
  uint32_t cur = accept;
  while (cur != full) {
    int v = removedToReach[cur] - 1;
    order.push_back(v);
    cur |= 1u << v;
  }
  std::reverse(order.begin(), order.end());
  uint32_t rest = accept;
  while (rest) {
    order.push_back(std::countr_zero(rest));
    rest &= rest - 1;
  }
  return EliminationOrder{order};
}

std::optional<EliminationOrder> greedy_even_degenerate(const Graph& g,
                                                       GreedyPolicy policy,
                                                       RandomSource& rng) {
  int n = g.vertex_count();
  VertexSet remaining(n, true);
  std::vector<int> deg(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) deg[size_t(v)] = g.degree(v);

  std::vector<int> order;
  order.reserve(size_t(n));
  std::vector<int> candidates;
  int left = n;
  while (left > 2) {
    candidates.clear();
    remaining.for_each([&](int v) {
      if ((deg[size_t(v)] & 1) == 0) candidates.push_back(v);
    });
    if (candidates.empty()) return std::nullopt;
    int pick = candidates.front();
    switch (policy) {
      case GreedyPolicy::FirstIndex:
        break;
      case GreedyPolicy::Random:
        pick = candidates[size_t(rng.below(candidates.size()))];
        break;
      case GreedyPolicy::MinDegree:
        for (int c : candidates)
          if (deg[size_t(c)] < deg[size_t(pick)]) pick = c;
        break;
      case GreedyPolicy::MaxDegree:
        for (int c : candidates)
          if (deg[size_t(c)] > deg[size_t(pick)]) pick = c;
        break;
    }
    order.push_back(pick);
    remaining.reset(pick);
    --left;
    VertexSet nbrs = g.neighbors(pick);
    nbrs &= remaining;
    nbrs.for_each([&](int u) { --deg[size_t(u)]; });
  }
  remaining.for_each([&](int v) { order.push_back(v); });
  return EliminationOrder{order};
}

std::optional<DecompositionChain> exact_even_decomposable(const Graph& g, int limit) {
  int n = g.vertex_count();
  if (n > limit || n > 24)
    throw CapacityError("exact_even_decomposable: n exceeds the subset-search limit");
  if (g.edge_count() & 1) return std::nullopt;

  std::vector<uint32_t> adj(size_t(n), 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (v != u && g.has_edge(u, v)) adj[size_t(u)] |= 1u << v;
  size_t states = size_t(1) << n;
  std::vector<int> edgeCount(states, 0);
  for (size_t s = 1; s < states; ++s) {
    int v = std::countr_zero(uint32_t(s));
    uint32_t rest = uint32_t(s) & ~(1u << v);
    edgeCount[s] = edgeCount[rest] + std::popcount(adj[size_t(v)] & rest);
  }

  // 0 unknown, 1 decomposable, 2 not
  std::vector<uint8_t> memo(states, 0);
  std::vector<uint32_t> choice(states, 0);
  memo[0] = 1;

  auto solve = [&](auto&& self, uint32_t s) -> bool {
    if (memo[s]) return memo[s] == 1;
    if (edgeCount[s] & 1) {
      memo[s] = 2;
      return false;
    }
    // Walk subsets of s in descending mask order (larger candidates first).
    for (uint32_t i = s;; i = (i - 1) & s) {
      if (i == 0) break;
      if (edgeCount[i] == 0 && edgeCount[s & ~i] % 2 == 0 && self(self, s & ~i)) {
        memo[s] = 1;
        choice[s] = i;
        return true;
      }
    }
    memo[s] = 2;
    return false;
  };

  uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
  if (!solve(solve, full)) return std::nullopt;

  DecompositionChain out;
  uint32_t cur = full;
  for (;;) {
    std::vector<int> vs;
    uint32_t it = cur;
    while (it) {
      vs.push_back(std::countr_zero(it));
      it &= it - 1;
    }
    out.chain.push_back(vs);
    if (cur == 0) break;
    cur &= ~choice[cur];
  }
  return out;
}

std::pair<Graph, EliminationOrder> build_prescribed_witness(const Revelation& rev, int n) {
  rev.validate(n);
  int na = int(rev.a.size());
  if (n < 3 * na + 4)
    throw CapacityError("build_prescribed_witness: need n >= 3|A| + 4");

  std::vector<int> free;
  for (int v = 0; v < n; ++v)
    if (!rev.has(v)) free.push_back(v);

  std::vector<int> xa(static_cast<size_t>(na)), ya(static_cast<size_t>(na));
  size_t next = 0;
  for (int i = 0; i < na; ++i) xa[size_t(i)] = free[next++];
  for (int i = 0; i < na; ++i) ya[size_t(i)] = free[next++];
  int hub = free[next++];
  int t1 = free[next++];
  int t2 = free[next++];
  int pad = free[next++];

  auto mk = [](int u, int v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
  std::vector<std::pair<int, int>> es = rev.h;
  for (int i = 0; i < na; ++i) {
    int a = rev.a[size_t(i)];
    es.push_back(mk(a, xa[size_t(i)]));
    if ((rev.deg_in_h(a) & 1) == rev.degParity[size_t(i)]) es.push_back(mk(a, ya[size_t(i)]));
  }
  for (int i = 0; i < na; ++i) es.push_back(mk(hub, xa[size_t(i)]));
  es.push_back(mk(hub, t1));
  es.push_back(mk(hub, t2));
  es.push_back(mk(t1, t2));
  if ((es.size() & 1) != rev.edgeParity) es.push_back(mk(pad, hub));

  Graph g = Graph::from_edges(n, es);

  // Elimination schedule from the construction: each a, preceded by its x
  // gadget when its live degree is odd; then the hub, whose star resolves
  // through t1 when odd. Everything left is isolated by then.
  VertexSet remaining(n, true);
  std::vector<int> order;
  auto remove = [&](int v) {
    order.push_back(v);
    remaining.reset(v);
  };
  for (int i = 0; i < na; ++i) {
    int a = rev.a[size_t(i)];
    if (g.degree_in(a, remaining) & 1) remove(xa[size_t(i)]);
    remove(a);
  }
  if (g.degree_in(hub, remaining) & 1) remove(t1);
  remove(hub);
  // Tail: isolated vertices ascending; keep t1, t2 last so a surviving
  // triangle edge sits among the final two.
  std::vector<int> tail;
  remaining.for_each([&](int v) {
    if (v != t1 && v != t2) tail.push_back(v);
  });
  for (int v : tail) order.push_back(v);
  if (remaining.test(t1)) order.push_back(t1);
  if (remaining.test(t2)) order.push_back(t2);

  return {g, EliminationOrder{order}};
}

}  // namespace evdeg
