#ifndef EVDEG_GRAPH_HPP
#define EVDEG_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "evdeg/bitset.hpp"

namespace evdeg {

// Immutable simple graph. Adjacency is stored as per-vertex bit rows so that
// star parities reduce to masked popcounts; that is the inner loop of the
// removal procedure at n up to 1e4.
class Graph {
 public:
  Graph() = default;
  static Graph empty(int n);
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  long long edge_count() const { return m_; }
  size_t row_words() const { return words_; }

  bool has_edge(int u, int v) const {
    return (rows_[size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
  }
  int degree(int v) const;

  // |N(v) ∩ mask|. The mask may contain v; rows carry no self-bit.
  int degree_in(int v, const VertexSet& mask) const {
    const uint64_t* r = rows_.data() + size_t(v) * words_;
    int c = 0;
    for (size_t i = 0; i < words_; ++i) c += std::popcount(r[i] & mask.word(i));
    return c;
  }
  // Parity of the star S(v, mask): |N(v) ∩ mask ∖ {v}| mod 2.
  int par_star(int v, const VertexSet& mask) const { return degree_in(v, mask) & 1; }

  VertexSet neighbors(int v) const;

  // Induced subgraph on `keep`, vertices relabeled to 0..|keep|-1 in
  // ascending original order. `originalIds` (optional) receives the map
  // new id -> original id.
  Graph induced(const VertexSet& keep, std::vector<int>* originalIds = nullptr) const;

  std::vector<std::pair<int, int>> edges() const;  // u < v, lexicographic

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && m_ == o.m_ && rows_ == o.rows_;
  }

 private:
  int n_ = 0;
  size_t words_ = 0;
  long long m_ = 0;
  std::vector<uint64_t> rows_;
};

// A set of potential edges: unordered vertex pairs {u,v}, u != v, stored as
// sorted packed keys. Fine for the exact small-scale bookkeeping; the removal
// transcripts use compressed star descriptors instead of this type.
class PairSet {
 public:
  static uint64_t key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (uint64_t(uint32_t(u)) << 32) | uint32_t(v);
  }
  static std::pair<int, int> unkey(uint64_t k) {
    return {int(k >> 32), int(uint32_t(k))};
  }

  PairSet() = default;
  // binom(S,2)
  static PairSet clique(const VertexSet& s);
  // S(v, B ∖ {v})
  static PairSet star(int v, const VertexSet& b);
  // S(A,B) = {{a,b} : a in A, b in B, a != b}
  static PairSet between(const VertexSet& a, const VertexSet& b);

  void insert(int u, int v);
  void finish();  // sort + dedupe after bulk inserts
  bool contains(int u, int v) const;
  size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }

  const std::vector<uint64_t>& keys() const { return keys_; }

  template <class F>
  void for_each(F f) const {
    for (uint64_t k : keys_) {
      auto [u, v] = unkey(k);
      f(u, v);
    }
  }

  bool operator==(const PairSet& o) const { return keys_ == o.keys_; }

  friend PairSet pair_union(const PairSet& a, const PairSet& b);
  friend PairSet pair_difference(const PairSet& a, const PairSet& b);
  friend PairSet pair_intersection(const PairSet& a, const PairSet& b);
  friend bool pair_disjoint(const PairSet& a, const PairSet& b);

 private:
  std::vector<uint64_t> keys_;  // sorted, unique
};

// Parity of |E(g) ∩ s|. Endpoints outside g are an input error.
int par(const Graph& g, const PairSet& s);

// Text format: line 1 "n m", then m lines "u v" with 0 <= u < v < n,
// lexicographically sorted on output.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace evdeg

#endif
