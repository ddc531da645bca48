#ifndef EVDEG_DOUBLE_REMOVAL_HPP
#define EVDEG_DOUBLE_REMOVAL_HPP

#include <string>
#include <vector>

#include "evdeg/removal.hpp"

namespace evdeg {

// The B/C split with decreasing-order block structure, plus every derived
// vertex family computed after a dual run. Blocks are laid out so that
// B_# holds the highest-indexed vertices of the ordering b_1..b_|B| and B_s
// the lowest, via boundaries r_1..r_(s+1).
struct DoubleRemovalPlan {
  int n = 0;
  Revelation revelation;
  double alpha = 0.0;
  int s = 0;
  int eta = 0;
  std::vector<int> b, c;    // orderings b_1.. and c_1..
  std::vector<int> rB, rC;  // boundaries, r_(s+1) = |B| resp. |C|

  // Populated by double_removal on dual success.
  bool populated = false;
  bool degenerate = false;  // no removals on one W side (empty-graph style runs)
  int iB = 0, iC = 0;       // vertices removed from B resp. C
  int iBp = 0, iCp = 0;     // i mod s, valued in 1..s
  int etaB = 0, etaC = 0;   // per-side effective eta after clamping
  std::vector<int> betaB, betaC;  // removal-ordered W-side removals
  VertexSet vB, vC;
  std::vector<int> BP, BQ, CP, CQ;
  VertexSet dBP, dBQ, dCP, dCQ;  // block unions D_*^P / D_*^Q
  VertexSet aB, aC;              // next-level revealed parts
  VertexSet tBP, tBQ, tCP, tCQ;
  std::vector<std::string> warnings;

  // Block j of side B under the decreasing-order construction; j = 0 gives
  // B_#. Vertices ascend within a block.
  std::vector<int> block_b(int j) const;
  std::vector<int> block_c(int j) const;

  RemovalConfig config_bc() const;  // U = B, W = C blocks
  RemovalConfig config_cb() const;  // U = C, W = B blocks
};

// Builds the plan. s = 0 and eta = 0 select the defaults (make_uw_config's
// s, eta = max(1, floor(0.02 n^(1/2-alpha)))). When strictBounds is set, eta
// is clamped so every D set fits under 0.01 n^(1-2*alpha) and the build
// fails with a capacity error naming the bound when even eta = 1 cannot;
// relaxed mode records a warning instead. A RandomSource draws a fresh
// random B/C split; without one the split is the deterministic half split.
DoubleRemovalPlan make_double_plan(int n, const Revelation& rev, double alpha,
                                   int s = 0, int eta = 0,
                                   RandomSource* rng = nullptr,
                                   bool strictBounds = true,
                                   double sFactor = kDefaultSFactor);

struct DoubleRemovalResult {
  RemovalOutcome bc;  // (B,C)-removal
  RemovalOutcome cb;  // (C,B)-removal
  DoubleRemovalPlan plan;
};

// Runs the removal both ways on the same graph and, on dual success,
// populates the plan's derived sets.
DoubleRemovalResult double_removal(const Graph& g, const DoubleRemovalPlan& plan);

// Materialized potential-edge families of a populated plan.
PairSet sigma_b(const DoubleRemovalPlan& plan);
PairSet sigma_c(const DoubleRemovalPlan& plan);

// The W-side survivors that become the next level's revealed part: the #
// block plus the eta-window block unions, clipped to the run's survivors.
// Works from a single successful run of the side (the certifier's case).
VertexSet derived_revealed_part(const DoubleRemovalPlan& plan, bool sideB,
                                const RemovalOutcome& runOnSide);

}  // namespace evdeg

#endif
