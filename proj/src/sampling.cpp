#include "evdeg/sampling.hpp"

#include <cmath>

#include "evdeg/errors.hpp"

namespace evdeg {

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("probability must lie in (0,1)");
}

}  // namespace

Graph sample_gnp(int n, double p, RandomSource& rng) {
  check_p(p);
  if (n < 1) throw InputError("sample_gnp: n >= 1 required");
  std::vector<std::pair<int, int>> es;
  if (p == 0.5) {
    uint64_t word = 0;
    int left = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (left == 0) {
          word = rng.next_u64();
          left = 64;
        }
        if (word & 1) es.emplace_back(u, v);
        word >>= 1;
        --left;
      }
  } else {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(p)) es.emplace_back(u, v);
  }
  return Graph::from_edges(n, es);
}

double parity_zero_probability(long long k, double p) {
  check_p(p);
  if (k < 0) throw InputError("parity_zero_probability: k >= 0 required");
  return (1.0 + std::pow(1.0 - 2.0 * p, double(k))) / 2.0;
}

std::vector<uint8_t> sample_parity_constrained_bits(long long t, double p,
                                                    int targetParity,
                                                    RandomSource& rng) {
  check_p(p);
  if (targetParity != 0 && targetParity != 1)
    throw InputError("target parity must be 0 or 1");
  if (t == 0) {
    if (targetParity == 1) throw InfeasibleError("zero bits cannot have odd parity");
    return {};
  }
  if (t < 0) throw InputError("bit count must be nonnegative");

  std::vector<uint8_t> out(static_cast<size_t>(t));
  int need = targetParity;
  for (long long i = 0; i < t; ++i) {
    long long rest = t - 1 - i;
    if (rest == 0) {
      out[size_t(i)] = uint8_t(need);
      break;
    }
    // P[X_i = 1 | remaining parity = need] = p * q_rest(need^1) / q_(rest+1)(need)
    double qRestFlip = need == 1 ? parity_zero_probability(rest, p)
                                 : 1.0 - parity_zero_probability(rest, p);
    double qAll = need == 0 ? parity_zero_probability(rest + 1, p)
                            : 1.0 - parity_zero_probability(rest + 1, p);
    double pOne = p * qRestFlip / qAll;
    uint8_t bit = rng.bernoulli(pOne) ? 1 : 0;
    out[size_t(i)] = bit;
    need ^= bit;
  }
  return out;
}

Graph sample_partially_revealed(int n, double p, const Revelation& rev,
                                RandomSource& rng) {
  check_p(p);
  if (n < 1) throw InputError("sample_partially_revealed: n >= 1 required");
  rev.validate(n);

  std::vector<std::pair<int, int>> es = rev.h;  // (i) fix binom(A,2) to H
  std::vector<int> rest;
  rest.reserve(size_t(n) - rev.a.size());
  for (int v = 0; v < n; ++v)
    if (!rev.has(v)) rest.push_back(v);

  // (ii) each star S(a, V∖A) is a disjoint group with forced parity.
  int starParitySum = 0;
  for (size_t i = 0; i < rev.a.size(); ++i) {
    int a = rev.a[i];
    int target = (rev.degParity[i] ^ (rev.deg_in_h(a) & 1)) & 1;
    if (rest.empty()) {
      if (target != 0)
        throw InfeasibleError("empty star group cannot meet an odd degree-parity target");
      continue;
    }
    auto bits = sample_parity_constrained_bits(static_cast<long long>(rest.size()), p, target, rng);
    for (size_t j = 0; j < rest.size(); ++j)
      if (bits[j]) es.emplace_back(std::min(a, rest[j]), std::max(a, rest[j]));
    starParitySum ^= target;
  }

  // (iii) binom(V∖A,2) carries the residual edge-count parity.
  int residual = (rev.edgeParity ^ (int(rev.h.size()) & 1) ^ starParitySum) & 1;
  long long pairCount = (long long)(rest.size()) * (long long)(rest.size() - 1) / 2;
  if (pairCount == 0) {
    if (residual != 0)
      throw InfeasibleError("empty pair block cannot meet an odd edge-parity target");
  } else {
    auto bits = sample_parity_constrained_bits(pairCount, p, residual, rng);
    size_t idx = 0;
    for (size_t i = 0; i < rest.size(); ++i)
      for (size_t j = i + 1; j < rest.size(); ++j, ++idx)
        if (bits[idx]) es.emplace_back(rest[i], rest[j]);
  }
  return Graph::from_edges(n, es);
}

}  // namespace evdeg
