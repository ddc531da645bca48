#include "evdeg/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "evdeg/errors.hpp"

namespace evdeg {

Graph Graph::empty(int n) {
  if (n < 0) throw InputError("graph: negative vertex count");
  Graph g;
  g.n_ = n;
  g.words_ = size_t((n + 63) / 64);
  g.rows_.assign(size_t(n) * g.words_, 0);
  return g;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g = empty(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("graph: endpoint out of range");
    if (u == v) throw InputError("graph: self-loop");
    if (g.has_edge(u, v)) throw InputError("graph: duplicate edge");
    g.rows_[size_t(u) * g.words_ + (v >> 6)] |= 1ull << (v & 63);
    g.rows_[size_t(v) * g.words_ + (u >> 6)] |= 1ull << (u & 63);
    ++g.m_;
  }
  return g;
}

int Graph::degree(int v) const {
  const uint64_t* r = rows_.data() + size_t(v) * words_;
  int c = 0;
  for (size_t i = 0; i < words_; ++i) c += std::popcount(r[i]);
  return c;
}

VertexSet Graph::neighbors(int v) const {
  VertexSet s(n_);
  const uint64_t* r = rows_.data() + size_t(v) * words_;
  for (size_t i = 0; i < words_; ++i) s.data()[i] = r[i];
  return s;
}

Graph Graph::induced(const VertexSet& keep, std::vector<int>* originalIds) const {
  std::vector<int> ids = keep.to_vector();
  std::vector<int> remap(n_, -1);
  for (size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = int(i);
  std::vector<std::pair<int, int>> es;
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j)
      if (has_edge(ids[i], ids[j])) es.emplace_back(int(i), int(j));
  if (originalIds) *originalIds = std::move(ids);
  return from_edges(int(keep.count()), es);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(size_t(m_));
  for (int u = 0; u < n_; ++u) {
    const uint64_t* r = rows_.data() + size_t(u) * words_;
    for (size_t i = 0; i < words_; ++i) {
      uint64_t x = r[i];
      while (x) {
        int v = int(i * 64 + std::countr_zero(x));
        x &= x - 1;
        if (v > u) out.emplace_back(u, v);
      }
    }
  }
  return out;
}

PairSet PairSet::clique(const VertexSet& s) {
  PairSet out;
  auto vs = s.to_vector();
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j) out.keys_.push_back(key(vs[i], vs[j]));
  out.finish();
  return out;
}

PairSet PairSet::star(int v, const VertexSet& b) {
  PairSet out;
  b.for_each([&](int u) {
    if (u != v) out.keys_.push_back(key(v, u));
  });
  out.finish();
  return out;
}

PairSet PairSet::between(const VertexSet& a, const VertexSet& b) {
  PairSet out;
  a.for_each([&](int x) {
    b.for_each([&](int y) {
      if (x != y) out.keys_.push_back(key(x, y));
    });
  });
  out.finish();
  return out;
}

void PairSet::insert(int u, int v) {
  if (u == v) throw InputError("pair set: degenerate pair");
  keys_.push_back(key(u, v));
}

void PairSet::finish() {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

bool PairSet::contains(int u, int v) const {
  return std::binary_search(keys_.begin(), keys_.end(), key(u, v));
}

PairSet pair_union(const PairSet& a, const PairSet& b) {
  PairSet out;
  out.keys_.resize(a.keys_.size() + b.keys_.size());
  auto end = std::set_union(a.keys_.begin(), a.keys_.end(), b.keys_.begin(),
                            b.keys_.end(), out.keys_.begin());
  out.keys_.resize(size_t(end - out.keys_.begin()));
  return out;
}

PairSet pair_difference(const PairSet& a, const PairSet& b) {
  PairSet out;
  out.keys_.resize(a.keys_.size());
  auto end = std::set_difference(a.keys_.begin(), a.keys_.end(), b.keys_.begin(),
                                 b.keys_.end(), out.keys_.begin());
  out.keys_.resize(size_t(end - out.keys_.begin()));
  return out;
}

PairSet pair_intersection(const PairSet& a, const PairSet& b) {
  PairSet out;
  out.keys_.resize(std::min(a.keys_.size(), b.keys_.size()));
  auto end = std::set_intersection(a.keys_.begin(), a.keys_.end(), b.keys_.begin(),
                                   b.keys_.end(), out.keys_.begin());
  out.keys_.resize(size_t(end - out.keys_.begin()));
  return out;
}

bool pair_disjoint(const PairSet& a, const PairSet& b) {
  size_t i = 0, j = 0;
  while (i < a.keys_.size() && j < b.keys_.size()) {
    if (a.keys_[i] == b.keys_[j]) return false;
    if (a.keys_[i] < b.keys_[j])
      ++i;
    else
      ++j;
  }
  return true;
}

int par(const Graph& g, const PairSet& s) {
  int n = g.vertex_count();
  int acc = 0;
  for (uint64_t k : s.keys()) {
    auto [u, v] = PairSet::unkey(k);
    if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("par: endpoint out of range");
    acc ^= g.has_edge(u, v) ? 1 : 0;
  }
  return acc;
}

Graph read_graph(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m)) throw InputError("graph file: missing header");
  if (n < 0 || m < 0) throw InputError("graph file: negative header field");
  std::vector<std::pair<int, int>> es;
  es.reserve(size_t(m));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw InputError("graph file: truncated edge list");
    if (u < 0 || v <= u || v >= n) throw InputError("graph file: edge must satisfy 0 <= u < v < n");
    es.emplace_back(int(u), int(v));
  }
  return Graph::from_edges(int(n), es);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  auto es = g.edges();
  out << g.vertex_count() << ' ' << es.size() << '\n';
  // Chunked formatting; per-edge operator<< dominates otherwise at n ~ 1e4.
  std::string buf;
  buf.reserve(1 << 16);
  char line[32];
  for (auto [u, v] : es) {
    buf.append(line, size_t(std::snprintf(line, sizeof line, "%d %d\n", u, v)));
    if (buf.size() > (1 << 16) - 32) {
      out.write(buf.data(), long(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), long(buf.size()));
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  write_graph(out, g);
}

}  // namespace evdeg
