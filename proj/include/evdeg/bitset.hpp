#ifndef EVDEG_BITSET_HPP
#define EVDEG_BITSET_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace evdeg {

// Dynamic fixed-universe bitset over vertex ids 0..n-1. The word layout is
// shared with Graph's adjacency rows so parity kernels can AND them directly.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe, bool full = false)
      : n_(universe), w_((universe + 63) / 64, 0) {
    if (full) {
      for (auto& x : w_) x = ~0ull;
      trim();
    }
  }

  static VertexSet of(int universe, std::initializer_list<int> vs) {
    VertexSet s(universe);
    for (int v : vs) s.set(v);
    return s;
  }
  static VertexSet of(int universe, const std::vector<int>& vs) {
    VertexSet s(universe);
    for (int v : vs) s.set(v);
    return s;
  }

  int universe() const { return n_; }
  size_t word_count() const { return w_.size(); }
  uint64_t word(size_t i) const { return w_[i]; }
  uint64_t* data() { return w_.data(); }
  const uint64_t* data() const { return w_.data(); }

  bool test(int v) const { return (w_[v >> 6] >> (v & 63)) & 1; }
  void set(int v) { w_[v >> 6] |= 1ull << (v & 63); }
  void reset(int v) { w_[v >> 6] &= ~(1ull << (v & 63)); }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
  }
  bool empty() const {
    for (uint64_t x : w_)
      if (x) return false;
    return true;
  }
  int first() const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  VertexSet& subtract(const VertexSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet difference(VertexSet a, const VertexSet& b) { return a.subtract(b); }

  bool intersects(const VertexSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool contains_all(const VertexSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (o.w_[i] & ~w_[i]) return false;
    return true;
  }
  bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  template <class F>
  void for_each(F f) const {
    for (size_t i = 0; i < w_.size(); ++i) {
      uint64_t x = w_[i];
      while (x) {
        f(int(i * 64 + std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (~0ull >> (64 - n_ % 64));
  }
  int n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace evdeg

#endif
