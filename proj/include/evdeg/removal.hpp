#ifndef EVDEG_REMOVAL_HPP
#define EVDEG_REMOVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "evdeg/graph.hpp"
#include "evdeg/revelation.hpp"
#include "evdeg/rng.hpp"

namespace evdeg {

// Default Theta-constant for the block count s = sFactor * n^(1/2+alpha).
// Calibrated so that a round's candidate blocks stay large enough for the
// probe to find an even-parity neighbor at n in the hundreds-to-thousands
// range; see README for the sizing argument.
inline constexpr double kDefaultSFactor = 0.2;

enum class TieBreak : uint8_t { LowestIndex, SeededRandom };

struct RemovalConfig {
  int n = 0;
  Revelation revelation;                    // removal starts with A in this order
  std::vector<int> u;                       // ordered U
  std::vector<std::vector<int>> wblocks;    // [0] = W_#, [1..s] = W_1..W_s
  int s = 0;                                // cycled block count (wblocks.size() - 1)
  TieBreak tieBreak = TieBreak::LowestIndex;
  uint64_t tieSeed = 0;

  std::vector<int> w_all() const;
  VertexSet w_set() const;
  // Checks that A, U, and the blocks partition 0..n-1, blocks are balanced,
  // and s >= 1.
  void validate() const;
};

struct StarReveal {
  int center;
  int prefix;  // the set is S(center, V ∖ removed[0..prefix))
};
struct EdgeReveal {
  int center;
  int block;
  int prefix;  // the revealed pairs are S(center, W_block ∖ removed[0..prefix))
};
struct ProbeCandidate {
  int w;
  uint8_t parity;
  uint8_t edge;
};
struct RoundRecord {
  int round = 0;               // p, 1-based
  int center = -1;             // ū_p
  uint8_t parity = 0;          // revealed par(ū_p, V ∖ R)
  uint8_t probed = 0;          // 1 iff the odd branch ran
  int block = 0;               // probed block j in 1..s
  std::vector<ProbeCandidate> candidates;
  int chosen = -1;             // paired w, or -1
};

struct RemovalTranscript {
  RemovalConfig config;
  std::vector<RoundRecord> rounds;
  std::vector<StarReveal> famA, famU, famW;  // parity reveals
  std::vector<EdgeReveal> famE;              // fully revealed pair sets
  std::vector<int> removed;                  // R, in removal order
  int finalP = 0;
  int finalQ = 1;
  bool success = false;
  int failRound = 0;  // 0 when successful
};

struct RemovalOutcome {
  bool success = false;
  int failRound = 0;
  std::vector<int> removed;  // R (partial on failure)
  VertexSet vw;              // V_W on success
  RemovalTranscript transcript;
};

// Splits V∖A randomly into halves U and W (each reported in ascending
// order), with W cut into s+1 balanced blocks, s = max(1, round(sFactor *
// n^(1/2+alpha))).
RemovalConfig make_uw_config(int n, const Revelation& rev, double alpha,
                             double sFactor, RandomSource& rng);

// The removal procedure, verbatim: walk A then U; an even star parity
// removes the vertex outright, an odd one probes block W_(q mod s) for a
// neighbor with even parity, removing the pair or failing the run. A
// deterministic function of (g, cfg); rerunning reproduces the transcript.
RemovalOutcome uw_removal(const Graph& g, const RemovalConfig& cfg);

// Re-derives every revealed quantity from the graph and checks the removed
// sequence (even parity into the then-remaining set), the round records, the
// block discipline, and the transcript families.
bool verify_outcome(const Graph& g, const RemovalOutcome& out);

std::string transcript_to_json(const RemovalOutcome& out);

}  // namespace evdeg

#endif
