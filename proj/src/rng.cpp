#include "evdeg/rng.hpp"

namespace evdeg {

namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<uint32_t, 4> round_once(const std::array<uint32_t, 4>& x,
                                          const std::array<uint32_t, 2>& k) {
  uint64_t p0 = uint64_t(kMul0) * x[0];
  uint64_t p1 = uint64_t(kMul1) * x[2];
  return {uint32_t(p1 >> 32) ^ x[1] ^ k[0], uint32_t(p1),
          uint32_t(p0 >> 32) ^ x[3] ^ k[1], uint32_t(p0)};
}

}  // namespace

std::array<uint32_t, 4> RandomSource::block(std::array<uint32_t, 4> counter,
                                            std::array<uint32_t, 2> key) {
  for (int r = 0; r < 9; ++r) {
    counter = round_once(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return round_once(counter, key);
}

void RandomSource::refill() {
  buf_ = block({uint32_t(block_), uint32_t(block_ >> 32), uint32_t(stream_),
                uint32_t(stream_ >> 32)},
               key_);
  ++block_;
  pos_ = 0;
}

uint64_t RandomSource::below(uint64_t bound) {
  // Rejection from the top to stay unbiased.
  uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

void shuffle(std::vector<int>& v, RandomSource& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = size_t(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace evdeg
