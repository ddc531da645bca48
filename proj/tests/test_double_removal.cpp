#include <doctest.h>

#include "evdeg/double_removal.hpp"
#include "evdeg/errors.hpp"
#include "evdeg/sampling.hpp"

using namespace evdeg;

TEST_CASE("plan construction: decreasing block layout and balance") {
  Revelation rev = Revelation::unconditioned(0, 0.1);
  DoubleRemovalPlan plan = make_double_plan(210, rev, 0.1, 10, 2, nullptr,
                                            /*strictBounds=*/false);
  CHECK(plan.b.size() == 105);
  CHECK(plan.c.size() == 105);
  CHECK(plan.s == 10);
  size_t covered = 0;
  std::vector<size_t> sizes;
  for (int j = 0; j <= plan.s; ++j) {
    auto blk = plan.block_b(j);
    sizes.push_back(blk.size());
    covered += blk.size();
  }
  CHECK(covered == plan.b.size());
  size_t lo = SIZE_MAX, hi = 0;
  for (size_t s : sizes) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi - lo <= 1);
  // B_# = highest-index chunk, B_s = lowest.
  CHECK(plan.block_b(0).back() == plan.b.back());
  CHECK(plan.block_b(plan.s).front() == plan.b.front());
}

TEST_CASE("plan eta clamp and capacity guards") {
  Revelation rev = Revelation::unconditioned(0, 0.1);
  // strict mode: a single block already exceeds 0.01 n^{0.8} at this n
  CHECK_THROWS_AS(make_double_plan(400, rev, 0.1, 5, 3, nullptr, true), CapacityError);
  DoubleRemovalPlan relaxed = make_double_plan(400, rev, 0.1, 5, 3, nullptr, false);
  CHECK(relaxed.eta >= 1);
  CHECK_FALSE(relaxed.warnings.empty());
  CHECK_THROWS_AS(make_double_plan(8, rev, 0.1, 10, 1, nullptr, false), CapacityError);
}

TEST_CASE("empty graph: dual success, degenerate derived sets") {
  Revelation rev = Revelation::unconditioned(0, 0.1);
  DoubleRemovalPlan plan = make_double_plan(40, rev, 0.1, 3, 1, nullptr, false);
  Graph g = Graph::empty(40);
  DoubleRemovalResult res = double_removal(g, plan);
  REQUIRE(res.bc.success);
  REQUIRE(res.cb.success);
  REQUIRE(res.plan.populated);
  CHECK(res.plan.degenerate);
  CHECK(res.plan.iB == 0);
  CHECK(res.plan.iC == 0);
  CHECK(res.plan.BP.empty());
  CHECK(res.plan.BQ.empty());
  // nothing removed from the W sides
  CHECK(res.plan.vB.count() == int(plan.b.size()));
  CHECK(res.plan.vC.count() == int(plan.c.size()));
}

namespace {

DoubleRemovalResult dual_success_fixture(int n) {
  for (uint64_t seed = 1; seed < 200; ++seed) {
    RandomSource gr(seed, 0);
    Graph g = sample_gnp(n, 0.5, gr);
    Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
    RandomSource pr(seed, 1);
    DoubleRemovalPlan plan = make_double_plan(n, rev, 0.1, 0, 0, &pr, false);
    DoubleRemovalResult res = double_removal(g, plan);
    if (res.bc.success && res.cb.success && !res.plan.degenerate) return res;
  }
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("dual success on G(600, 1/2): remainder fractions and set identities") {
  DoubleRemovalResult res = dual_success_fixture(600);
  const DoubleRemovalPlan& p = res.plan;
  int n = p.n;

  double fb = double(p.vB.count()) / n;
  double fc = double(p.vC.count()) / n;
  CHECK(fb > 0.15);
  CHECK(fb < 0.35);
  CHECK(fc > 0.15);
  CHECK(fc < 0.35);

  // V_B and V_C are disjoint survivors of opposite sides.
  CHECK_FALSE(p.vB.intersects(p.vC));

  // A_B ⊔ T_B^Q = V_B exactly.
  CHECK_FALSE(p.aB.intersects(p.tBQ));
  CHECK((p.aB | p.tBQ) == p.vB);
  CHECK_FALSE(p.aC.intersects(p.tCQ));
  CHECK((p.aC | p.tCQ) == p.vC);

  // B^P ⊆ D_B^P and B^Q ⊆ D_B^Q via the block discipline.
  for (int v : p.BP) CHECK(p.dBP.test(v));
  for (int v : p.BQ) CHECK(p.dBQ.test(v));

  // i' = i mod s with values in 1..s.
  CHECK(p.iBp == ((p.iB - 1) % p.s) + 1);
  CHECK(p.iCp == ((p.iC - 1) % p.s) + 1);

  // The single-run revealed-part helper agrees with the dual bookkeeping
  // whenever no eta clamping fired.
  if (p.etaB == p.eta) CHECK(derived_revealed_part(p, true, res.cb) == p.aB);
  if (p.etaC == p.eta) CHECK(derived_revealed_part(p, false, res.bc) == p.aC);
}

TEST_CASE("sigma partition: binom(B,2) splits exactly per the derived families") {
  DoubleRemovalResult res = dual_success_fixture(300);
  const DoubleRemovalPlan& p = res.plan;

  PairSet bAll = PairSet::clique(VertexSet::of(p.n, p.b));
  PairSet sigma = sigma_b(p);
  PairSet sigma0 = pair_difference(PairSet::clique(p.vB), PairSet::clique(p.aB));
  PairSet sigma1 = PairSet::between(VertexSet::of(p.n, p.BP), p.tBP);
  PairSet sigma2 = PairSet::between(VertexSet::of(p.n, p.BQ), p.tBQ);
  PairSet aPairs = PairSet::clique(p.aB);

  CHECK(pair_disjoint(sigma, sigma0));
  CHECK(pair_disjoint(sigma, sigma1));
  CHECK(pair_disjoint(sigma, sigma2));
  CHECK(pair_disjoint(sigma, aPairs));
  CHECK(pair_disjoint(sigma0, sigma1));
  CHECK(pair_disjoint(sigma0, sigma2));
  CHECK(pair_disjoint(sigma1, sigma2));
  CHECK(pair_disjoint(aPairs, sigma0));
  CHECK(pair_disjoint(aPairs, sigma1));
  CHECK(pair_disjoint(aPairs, sigma2));

  // ...and together they tile binom(B,2).
  PairSet all = pair_union(pair_union(sigma, aPairs),
                           pair_union(sigma0, pair_union(sigma1, sigma2)));
  CHECK(all == bAll);
  CHECK(sigma.size() + sigma0.size() + sigma1.size() + sigma2.size() + aPairs.size() ==
        bAll.size());
}

TEST_CASE("dual success on G(2000, 1/2): survivor fractions in [0.2, 0.3]") {
  for (uint64_t seed = 1; seed < 20; ++seed) {
    RandomSource gr(seed, 0);
    Graph g = sample_gnp(2000, 0.5, gr);
    Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
    RandomSource pr(seed, 1);
    DoubleRemovalPlan plan = make_double_plan(2000, rev, 0.1, 0, 0, &pr, false);
    DoubleRemovalResult res = double_removal(g, plan);
    if (!res.bc.success || !res.cb.success) continue;
    double fb = double(res.plan.vB.count()) / 2000.0;
    double fc = double(res.plan.vC.count()) / 2000.0;
    CHECK(fb >= 0.2);
    CHECK(fb <= 0.3);
    CHECK(fc >= 0.2);
    CHECK(fc <= 0.3);
    return;
  }
  FAIL("no dual success found at n=2000 within 20 seeds");
}

TEST_CASE("plan configs partition the vertices and honor the revelation") {
  Revelation rev;
  rev.a = {2, 5};
  rev.degParity = {0, 1};
  rev.edgeParity = 0;
  rev.alpha = 0.1;
  DoubleRemovalPlan plan = make_double_plan(100, rev, 0.1, 4, 1, nullptr, false);
  plan.config_bc().validate();
  plan.config_cb().validate();
  CHECK(plan.config_bc().u == plan.b);
  CHECK(plan.config_cb().u == plan.c);
}
