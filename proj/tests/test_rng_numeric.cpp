#include <doctest.h>

#include <set>

#include "evdeg/numeric.hpp"
#include "evdeg/rng.hpp"

using namespace evdeg;

TEST_CASE("philox4x32-10 known-answer vector") {
  // Reference vector from the Random123 test suite: all-zero counter and key.
  auto out = RandomSource::block({0, 0, 0, 0}, {0, 0});
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);
}

TEST_CASE("streams are deterministic and distinct") {
  RandomSource a(42, 7), b(42, 7), c(42, 8);
  bool allEqual = true, anyEqualAcross = false;
  for (int i = 0; i < 64; ++i) {
    uint64_t x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
    allEqual = allEqual && x == y;
    anyEqualAcross = anyEqualAcross || x == z;
  }
  CHECK(allEqual);
  CHECK_FALSE(anyEqualAcross);
}

TEST_CASE("below is in range and hits every residue") {
  RandomSource rng(1, 0);
  std::set<uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    uint64_t v = rng.below(7);
    REQUIRE(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("shuffle is a permutation") {
  RandomSource rng(9, 3);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  shuffle(v, rng);
  std::set<int> s(v.begin(), v.end());
  CHECK(s.size() == 10);
}

TEST_CASE("chi-square p-values match reference values") {
  // Frozen from scipy.stats.chi2.sf.
  CHECK(chi_square_pvalue(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_square_pvalue(10.0, 5) == doctest::Approx(0.07523524614651217).epsilon(1e-9));
  CHECK(chi_square_pvalue(63.0, 63) == doctest::Approx(0.47630238333813013).epsilon(1e-9));
  CHECK(chi_square_pvalue(120.0, 63) == doctest::Approx(2.010693881650102e-05).epsilon(1e-6));
}

TEST_CASE("clopper-pearson brackets the empirical rate") {
  auto [lo, hi] = clopper_pearson(500, 1000, 1e-3);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(lo > 0.4);
  CHECK(hi < 0.6);
  auto [lo0, hi0] = clopper_pearson(0, 100, 1e-3);
  CHECK(lo0 == 0.0);
  CHECK(hi0 > 0.0);
}
