#ifndef EVDEG_PARITY_STATS_HPP
#define EVDEG_PARITY_STATS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "evdeg/rng.hpp"

namespace evdeg {

// An ordered list of subsets of a ground set {0..t-1}, each as a bitmask.
struct IndexSetFamily {
  int t = 0;
  std::vector<uint32_t> sets;
  int r() const { return int(sets.size()); }
};

// Law of (Y_1..Y_r) over {0,1}^r; cell index packs Y_j into bit j.
struct ParityDistribution {
  int r = 0;
  std::vector<double> mass;
  bool exact = true;
  long long samples = 0;  // draws behind an estimated law
  double total() const;
};

enum class ReportMethod : uint8_t { Exact, MonteCarlo };

struct UniformityReport {
  double epsilon = 1.0;       // least eps certifying eps-uniformity (1 if none < 1)
  bool fixParity = false;     // support confined to one parity class
  int paritySum = -1;         // the class, when fixParity
  double fixEpsilon = 1.0;    // least eps against the fix-parity uniform law
  bool supportDeficit = false;  // an in-class cell carries zero mass
  ReportMethod method = ReportMethod::Exact;
  long long samples = 0;
};

inline constexpr int kEnumerationLimit = 24;

// Exact law by full enumeration of the 2^t Bernoulli(p) assignments, with
// log-space weights and compensated accumulation. The brute-force oracle the
// estimators are checked against.
ParityDistribution exact_parity_distribution(const IndexSetFamily& fam, double p);

ParityDistribution mc_parity_distribution(const IndexSetFamily& fam, double p,
                                          long long samples, RandomSource& rng);

UniformityReport epsilon_uniform_estimate(const ParityDistribution& d);

// Detects a single occupied parity class and reports closeness to the
// fix-parity uniform law on it. Support mismatches inside the class are
// flagged separately rather than folded into epsilon.
UniformityReport fix_parity_check(const ParityDistribution& d);

struct ParityBias {
  double p0, p1;   // law of the parity of eta iid Bernoulli(p) bits
  double bound;    // e^(-2 eta p*)
  bool withinBound;
};
ParityBias single_parity_bias(double p, long long eta);

// Largest eta for which the sequence is eta-layered: min over j < r-1 of
// |A_j ∖ (A_(j+1) ∪ ... ∪ A_r)|. Returns t+1 as the sentinel when r = 1.
int layering_number(const IndexSetFamily& fam);
// Same minimum taken over every position, the last set counting its full
// size. This is the quantity the uniformity bound actually rests on: the
// induction bottoms out at the final set alone.
int effective_layering(const IndexSetFamily& fam);

// Invertible r x r matrix over the two-element field, rows as masks.
struct BitMatrix {
  int r = 0;
  std::vector<uint32_t> rows;
  static BitMatrix identity(int r);
  static BitMatrix random_invertible(int r, RandomSource& rng);
  bool invertible() const;
  BitMatrix inverse() const;
  uint32_t apply(uint32_t v) const;
};

// New family with indicator columns transformed by T per ground element.
// Singular T is an input error.
IndexSetFamily apply_f2_transform(const IndexSetFamily& fam, const BitMatrix& T);

struct LayeredCheckReport {
  bool applicable = false;  // bound < 1
  int eta = 0;
  double bound = 1.0;
  double epsilon = 1.0;
  bool pass = false;
};

// Exact law vs the r e^(-2 eta p*) bound; an optional invertible transform
// tests the transformed-family route with eta still read off the layered
// pre-image.
LayeredCheckReport check_layered_uniformity(const IndexSetFamily& fam, double p,
                                            const BitMatrix* transform = nullptr);

struct AffectednessSetup {
  int t = 0;
  int k = 0;  // X = bits 0..k-1, X' = bits k..t-1, all iid Bernoulli(p)
  double p = 0.5;
  std::vector<uint32_t> sets;
};

struct AffectednessReport {
  bool applicable = false;      // eps_Z < 1/2 on the uniform route
  double epsZ = 1.0;            // uniformity of the restriction parities Z
  double yEpsilon = 1.0;        // measured uniformity of Y
  double deviationY = 1.0;      // least eps' with (X|Y) eps'-close to X
  bool passYUniform = false;    // yEpsilon <= epsZ
  bool passAffected = false;    // deviationY <= 2 epsZ
  bool fixParityApplicable = false;  // Z confined to one class with eps < 1/2
  double epsZFix = 1.0;
  double deviationW = 1.0;      // least eps' with (X|Y) eps'-close to (X|W)
  bool passFixParity = false;   // deviationW <= 2 epsZFix
};

// Exhaustive verification of the conditional-affectedness statements: the
// restriction parities' uniformity controls both how uniform Y is and how
// little conditioning on Y (resp. on the parity sum W) can shift X.
AffectednessReport check_conditional_affectedness(const AffectednessSetup& setup);

struct BipartiteProbeReport {
  int aSize = 0, bSize = 0;
  double p = 0.5;
  UniformityReport uniformity;
  bool singleClass = false;  // support confined to even total parity sum
  double bound = 1.0;        // e^(-eta (p*)^2 / 30), eta = min(aSize,bSize)
  bool pass = false;         // exact mode: fixEpsilon <= bound
  // Monte Carlo extremes with Clopper-Pearson 99.9% intervals.
  double cpMinLo = 0, cpMinHi = 0, cpMaxLo = 0, cpMaxHi = 0;
};

// Law of the joint degree parities of a p-random bipartite graph, exact by
// enumeration (aSize*bSize <= 24) or estimated by sampling.
BipartiteProbeReport bipartite_fix_parity_probe(int aSize, int bSize, double p,
                                                bool exactMode, long long trials,
                                                RandomSource* rng);

// The switch map on bipartite graphs (mask bit i*bSize+j = edge a_i b_j):
// finds the lowest vertex of the balanced half A_((i+1) mod 2) adjacent to
// exactly one of columns i, i+1 and toggles both incident pairs. Returns
// nothing when the two columns agree on that half. An involution preserving
// the edge count, all row parities, and every other column parity.
std::optional<uint32_t> bipartite_switch(uint32_t mask, int aSize, int bSize, int i);

struct McConsistency {
  double chiSquare = 0;
  double pValue = 1;
  bool consistentAt1e3 = true;
  int cells = 0;
  long long samples = 0;
};
// Chi-square goodness of fit of an estimated law against an exact one.
McConsistency mc_vs_exact(const ParityDistribution& exact, const ParityDistribution& mc);

}  // namespace evdeg

#endif
