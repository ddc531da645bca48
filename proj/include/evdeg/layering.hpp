#ifndef EVDEG_LAYERING_HPP
#define EVDEG_LAYERING_HPP

#include "evdeg/removal.hpp"

namespace evdeg {

// Result of restricting the revealed parity families to
// Sigma = binom(W,2) ∪ S(A∪U, W_#), rebuilding the differenced Q-families,
// and measuring how layered the resulting ordered sequence is: the minimum,
// over the sequence, of the number of potential edges private to a set
// relative to everything ordered after it.
struct LayeringReport {
  int familySize = 0;     // sets in the ordered sequence
  int realized = 0;       // minimum private size
  int bound = 0;          // min(s, |W_#|)
  bool pass = false;      // realized >= bound
  int sigmaPrivate = -1;  // breakdown; -1 marks an absent category
  int minStarPrivate = -1;
  int minQ0Private = -1;
  int minQtPrivate = -1;
  int qSetCount = 0;
};

// Ordering: Sigma first, then the S(·, W_#) stars, then every Q_0 before any
// Q_t with t >= 1. A transcript that does not match cfg is an input error.
LayeringReport analyze_transcript_layering(const RemovalTranscript& tr,
                                           const RemovalConfig& cfg);

}  // namespace evdeg

#endif
