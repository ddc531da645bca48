#ifndef EVDEG_EXPERIMENTS_HPP
#define EVDEG_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "evdeg/certify.hpp"
#include "evdeg/removal.hpp"

namespace evdeg {

enum class ExperimentKind : uint8_t {
  RemovalSuccess,   // uw_removal on fresh G(n,p)
  RemainderSize,    // same runs, remainder-fraction focus
  DegeneracyRate,   // exact DP (n <= dpLimit) or recursive certifier
  GreedyVsExact,    // successes = trials where greedy and DP verdicts agree
};

std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::RemovalSuccess;
  std::vector<int> nGrid;
  std::vector<double> pGrid;
  double alpha = 0.1;
  double sFactor = kDefaultSFactor;
  int eta = 0;       // 0 = default
  int trials = 100;
  uint64_t masterSeed = 0;
  bool seedSet = false;
  double timeBudgetSeconds = 0;  // per cell; 0 = unlimited
  bool timing = false;           // write measured seconds into the CSV
  int threads = 0;               // 0 = available parallelism
  CertifyParams certify;
};

struct SummaryCell {
  ExperimentKind kind;
  int n = 0;
  double p = 0;
  int s = 0, eta = 0;
  int trials = 0;
  int successes = 0, failures = 0;
  double meanRemainderFraction = 0, stdev = 0;
  double wallClock = 0;  // measured; CSV emission is gated by spec.timing
  bool skipped = false;
  std::string skipReason;
};

// One cell per (n,p); trial i of cell c runs on stream c*trials + i, so the
// output is a pure function of (spec, masterSeed) regardless of thread count.
std::vector<SummaryCell> run_experiment(const ExperimentSpec& spec);

// Columns: kind,n,p,alpha,s,eta,trials,successes,mean_remainder_frac,stdev,seconds.
// Deterministic bytes: seconds is written as 0.000 unless spec.timing is set.
void emit_csv(const std::vector<SummaryCell>& cells, const ExperimentSpec& spec,
              std::ostream& out);

// JSON report embedding the spec, a version string, the master seed, and the
// measured per-cell timings.
std::string emit_report(const std::vector<SummaryCell>& cells, const ExperimentSpec& spec);

// Log-scale failure-rate-vs-n line chart, one polyline per p.
void emit_failure_svg(const std::vector<SummaryCell>& cells, std::ostream& out);

ExperimentSpec experiment_spec_from_json(const std::string& text);

inline constexpr const char* kVersionString = "evdeg 0.1.0";

}  // namespace evdeg

#endif
