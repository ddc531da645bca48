#ifndef EVDEG_SAMPLING_HPP
#define EVDEG_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "evdeg/graph.hpp"
#include "evdeg/revelation.hpp"
#include "evdeg/rng.hpp"

namespace evdeg {

// G(n,p): each of the binom(n,2) potential edges independently with
// probability p. Bits are consumed in lexicographic pair order; p = 1/2
// takes a word-filling fast path with the same contract.
Graph sample_gnp(int n, double p, RandomSource& rng);

// P[parity of k iid Bernoulli(p) bits = 0] = (1 + (1-2p)^k) / 2.
double parity_zero_probability(long long k, double p);

// t iid Bernoulli(p) bits conditioned on their parity. Sampled sequentially
// through the closed form above; never rejection (acceptance would decay as
// 2^-(groups)). t = 0 with target 1 is infeasible.
std::vector<uint8_t> sample_parity_constrained_bits(long long t, double p,
                                                    int targetParity,
                                                    RandomSource& rng);

// Exact draw from G(n,p) conditioned on rev: fixes G[A] = H, samples each
// star S(a, V∖A) as a parity-forced group, then the pair block binom(V∖A,2)
// with the residual edge-count parity.
Graph sample_partially_revealed(int n, double p, const Revelation& rev,
                                RandomSource& rng);

}  // namespace evdeg

#endif
