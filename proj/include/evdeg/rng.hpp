#ifndef EVDEG_RNG_HPP
#define EVDEG_RNG_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace evdeg {

// Counter-based generator: Philox4x32-10 (Salmon, Moraes, Dror, Shaw 2011).
//
// The key is the 64-bit master seed; the 128-bit counter is split into a
// 64-bit stream id (high) and a 64-bit block index (low). Identical
// (masterSeed, streamId, call sequence) gives identical output on every
// platform, and distinct stream ids give statistically independent streams,
// which is how parallel sweeps stay reproducible: one stream per trial.
class RandomSource {
 public:
  RandomSource(uint64_t masterSeed, uint64_t streamId)
      : key_{uint32_t(masterSeed), uint32_t(masterSeed >> 32)},
        stream_(streamId) {}

  uint64_t master_seed() const { return (uint64_t(key_[1]) << 32) | key_[0]; }
  uint64_t stream_id() const { return stream_; }

  uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }
  uint64_t next_u64() {
    uint64_t lo = next_u32();
    return lo | (uint64_t(next_u32()) << 32);
  }
  // Uniform in [0,1), 53 random bits.
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return next_unit() < p; }
  // Uniform in [0,bound), unbiased.
  uint64_t below(uint64_t bound);

  static std::array<uint32_t, 4> block(std::array<uint32_t, 4> counter,
                                       std::array<uint32_t, 2> key);

 private:
  void refill();

  std::array<uint32_t, 2> key_;
  uint64_t stream_ = 0;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buf_{};
  int pos_ = 4;
};

// In-place Fisher-Yates.
void shuffle(std::vector<int>& v, RandomSource& rng);

}  // namespace evdeg

#endif
