#include <doctest.h>

#include "evdeg/certify.hpp"
#include "evdeg/sampling.hpp"

using namespace evdeg;

TEST_CASE("small graphs delegate to the DP") {
  CertifyParams params;
  RandomSource rng(1, 0);
  Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  Revelation rev = Revelation::unconditioned(uint8_t(k4.edge_count() & 1));
  CertifyDiagnostics diag;
  CHECK_FALSE(recursive_even_degenerate(k4, rev, 0.1, params, rng, &diag).has_value());
  CHECK(diag.dpCalls == 1);
  CHECK(diag.removalRuns == 0);
}

TEST_CASE("empty graph certifies at any size") {
  CertifyParams params;
  RandomSource rng(2, 0);
  Graph g = Graph::empty(100);
  Revelation rev = Revelation::unconditioned(0, 0.1);
  auto order = recursive_even_degenerate(g, rev, 0.1, params, rng);
  REQUIRE(order.has_value());
  CHECK(verify_ordering(g, *order));
}

TEST_CASE("random graphs at n=400 certify with verified orderings") {
  CertifyParams params;
  int successes = 0;
  int recursed = 0;
  for (uint64_t seed = 0; seed < 25; ++seed) {
    RandomSource gr(seed, 0);
    Graph g = sample_gnp(400, 0.5, gr);
    Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
    RandomSource rng(seed, 1);
    CertifyDiagnostics diag;
    auto order = recursive_even_degenerate(g, rev, 0.1, params, rng, &diag);
    if (order) {
      ++successes;
      CHECK(verify_ordering(g, *order));
      if (diag.levels >= 2) ++recursed;
    }
  }
  CHECK(successes >= 24);
  // The removal pipeline, not just the greedy fallback, must carry most runs.
  CHECK(recursed >= 15);
}

TEST_CASE("nonuniform densities certify too") {
  CertifyParams params;
  for (double p : {0.3, 0.7}) {
    int successes = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
      RandomSource gr(seed, 7);
      Graph g = sample_gnp(300, p, gr);
      Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
      RandomSource rng(seed, 8);
      auto order = recursive_even_degenerate(g, rev, 0.1, params, rng);
      if (order) {
        CHECK(verify_ordering(g, *order));
        ++successes;
      }
    }
    CHECK(successes >= 9);
  }
}

TEST_CASE("certifier respects a nontrivial revelation") {
  RandomSource gr(5, 0);
  Graph g = sample_gnp(260, 0.5, gr);
  Revelation rev;
  rev.a = {10, 20, 30};
  for (int a : rev.a) rev.degParity.push_back(uint8_t(g.degree(a) & 1));
  for (size_t i = 0; i < rev.a.size(); ++i)
    for (size_t j = i + 1; j < rev.a.size(); ++j)
      if (g.has_edge(rev.a[i], rev.a[j])) rev.h.emplace_back(rev.a[i], rev.a[j]);
  rev.edgeParity = uint8_t(g.edge_count() & 1);
  rev.alpha = 0.1;
  RandomSource rng(5, 1);
  auto order = recursive_even_degenerate(g, rev, 0.1, CertifyParams{}, rng);
  REQUIRE(order.has_value());
  CHECK(verify_ordering(g, *order));
}
