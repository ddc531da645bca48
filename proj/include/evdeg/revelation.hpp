#ifndef EVDEG_REVELATION_HPP
#define EVDEG_REVELATION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "evdeg/graph.hpp"

namespace evdeg {

// Conditioning data of a partially revealed graph: the revealed part A, the
// induced subgraph on A, per-vertex degree-parity targets, and the parity of
// the total edge count.
struct Revelation {
  std::vector<int> a;                       // revealed part, ascending; this is the order a_1..a_|A|
  std::vector<std::pair<int, int>> h;       // edges of G[A], u < v
  std::vector<uint8_t> degParity;           // aligned with `a`
  uint8_t edgeParity = 0;
  double alpha = 0.0;

  static Revelation unconditioned(uint8_t edgeParity, double alpha = 0.0) {
    Revelation r;
    r.edgeParity = edgeParity;
    r.alpha = alpha;
    return r;
  }

  bool has(int v) const;
  int index_of(int v) const;  // -1 if absent
  int deg_in_h(int v) const;
  // Validates internal consistency against an ambient vertex count.
  void validate(int n) const;
};

bool verify_revelation(const Graph& g, const Revelation& rev);

std::string revelation_to_json(const Revelation& rev);
Revelation revelation_from_json(const std::string& text);
Revelation read_revelation_file(const std::string& path);

}  // namespace evdeg

#endif
