#include <doctest.h>

#include "evdeg/degeneracy.hpp"
#include "evdeg/errors.hpp"
#include "evdeg/removal.hpp"
#include "evdeg/sampling.hpp"

using namespace evdeg;

namespace {

// n=6 fixture: A empty, U = (0,1,2), W_# = {3}, W_1 = {4}, W_2 = {5}.
RemovalConfig fixture_config() {
  RemovalConfig cfg;
  cfg.n = 6;
  cfg.revelation = Revelation::unconditioned(0);
  cfg.u = {0, 1, 2};
  cfg.wblocks = {{3}, {4}, {5}};
  cfg.s = 2;
  return cfg;
}

}  // namespace

TEST_CASE("hand-simulated success run") {
  Graph g = Graph::from_edges(6, {{0, 4}, {4, 5}});
  RemovalConfig cfg = fixture_config();
  cfg.revelation.edgeParity = uint8_t(g.edge_count() & 1);
  RemovalOutcome out = uw_removal(g, cfg);
  REQUIRE(out.success);
  CHECK(out.removed == std::vector<int>{4, 0, 1, 2});
  CHECK(out.vw.to_vector() == std::vector<int>{3, 5});
  CHECK(out.transcript.finalQ == 2);
  REQUIRE(out.transcript.rounds.size() == 3);
  CHECK(out.transcript.rounds[0].parity == 1);
  CHECK(out.transcript.rounds[0].block == 1);
  CHECK(out.transcript.rounds[0].chosen == 4);
  CHECK(out.transcript.rounds[1].parity == 0);
  CHECK(verify_outcome(g, out));
}

TEST_CASE("hand-simulated failure run") {
  Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}});
  RemovalConfig cfg = fixture_config();
  cfg.revelation.edgeParity = uint8_t(g.edge_count() & 1);
  RemovalOutcome out = uw_removal(g, cfg);
  CHECK_FALSE(out.success);
  CHECK(out.failRound == 2);
  CHECK(out.removed == std::vector<int>{0});
  REQUIRE(out.transcript.rounds.size() == 2);
  CHECK(out.transcript.rounds[1].parity == 1);
  CHECK(out.transcript.rounds[1].block == 1);
  CHECK(out.transcript.rounds[1].chosen == -1);
  CHECK(verify_outcome(g, out));
}

TEST_CASE("empty graph removes everything in sequence order") {
  Graph g = Graph::empty(6);
  RemovalConfig cfg = fixture_config();
  RemovalOutcome out = uw_removal(g, cfg);
  REQUIRE(out.success);
  CHECK(out.removed == std::vector<int>{0, 1, 2});
  CHECK(out.vw.count() == 3);
  CHECK(verify_outcome(g, out));
}

TEST_CASE("make_uw_config: sizes, balance, determinism, s formula") {
  Revelation rev = Revelation::unconditioned(0, 0.1);
  {
    RandomSource rng(7, 0);
    RemovalConfig cfg = make_uw_config(100, rev, 0.1, 1.0, rng);
    CHECK(cfg.u.size() == 50);
    CHECK(cfg.w_all().size() == 50);
    size_t lo = SIZE_MAX, hi = 0;
    for (const auto& b : cfg.wblocks) {
      lo = std::min(lo, b.size());
      hi = std::max(hi, b.size());
    }
    CHECK(hi - lo <= 1);
    // s = round(100^0.6) = round(15.85) = 16
    CHECK(cfg.s == 16);
  }
  {
    RandomSource a(3, 9), b(3, 9);
    RemovalConfig c1 = make_uw_config(60, rev, 0.1, 0.5, a);
    RemovalConfig c2 = make_uw_config(60, rev, 0.1, 0.5, b);
    CHECK(c1.u == c2.u);
    CHECK(c1.wblocks == c2.wblocks);
  }
  {
    RandomSource rng(1, 1);
    CHECK_THROWS_AS(make_uw_config(10, rev, 0.1, 50.0, rng), CapacityError);
  }
}

TEST_CASE("s formula matches round(sFactor * n^(1/2+alpha)) at n = 10000") {
  Revelation rev = Revelation::unconditioned(0, 0.1);
  RandomSource rng(11, 0);
  RemovalConfig cfg = make_uw_config(10000, rev, 0.1, 1.0, rng);
  CHECK(cfg.s == 251);
}

TEST_CASE("transcript replay determinism") {
  RandomSource g1(21, 0), g2(21, 0);
  Graph g = sample_gnp(200, 0.5, g1);
  Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
  RandomSource cfgRng(22, 0);
  RemovalConfig cfg = make_uw_config(200, rev, 0.1, 0.2, cfgRng);
  RemovalOutcome a = uw_removal(g, cfg);
  RemovalOutcome b = uw_removal(g, cfg);
  CHECK(a.success == b.success);
  CHECK(a.removed == b.removed);
  REQUIRE(a.transcript.rounds.size() == b.transcript.rounds.size());
  for (size_t i = 0; i < a.transcript.rounds.size(); ++i) {
    CHECK(a.transcript.rounds[i].parity == b.transcript.rounds[i].parity);
    CHECK(a.transcript.rounds[i].chosen == b.transcript.rounds[i].chosen);
  }
}

TEST_CASE("verify_outcome rejects tampering") {
  Graph g;
  RemovalOutcome out;
  RemovalConfig cfg;
  // find a successful removal with at least one probed round
  bool found = false;
  for (uint64_t seed = 0; seed < 300 && !found; ++seed) {
    RandomSource gr(seed, 0);
    g = sample_gnp(60, 0.5, gr);
    Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
    RandomSource cr(seed, 1);
    cfg = make_uw_config(60, rev, 0.1, 0.2, cr);
    out = uw_removal(g, cfg);
    bool probed = false;
    for (const auto& r : out.transcript.rounds) probed = probed || r.probed;
    found = out.success && probed;
  }
  REQUIRE(found);
  REQUIRE(verify_outcome(g, out));

  // Swap two entries of R across a parity boundary.
  RemovalOutcome tampered = out;
  bool rejected = false;
  for (size_t i = 0; i + 1 < tampered.removed.size() && !rejected; ++i) {
    std::swap(tampered.removed[i], tampered.removed[i + 1]);
    if (!verify_outcome(g, tampered)) rejected = true;
    std::swap(tampered.removed[i], tampered.removed[i + 1]);
  }
  CHECK(rejected);

  // Flip a recorded parity bit.
  RemovalOutcome flipped = out;
  REQUIRE_FALSE(flipped.transcript.rounds.empty());
  flipped.transcript.rounds.front().parity ^= 1;
  CHECK_FALSE(verify_outcome(g, flipped));
}

TEST_CASE("seeded-random tie-break stays deterministic and verifiable") {
  RandomSource gr(17, 0);
  Graph g = sample_gnp(150, 0.5, gr);
  Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
  RandomSource cr(17, 1);
  RemovalConfig cfg = make_uw_config(150, rev, 0.1, 0.2, cr);
  cfg.tieBreak = TieBreak::SeededRandom;
  cfg.tieSeed = 99;
  RemovalOutcome a = uw_removal(g, cfg);
  RemovalOutcome b = uw_removal(g, cfg);
  CHECK(a.removed == b.removed);
  CHECK(verify_outcome(g, a));
  // A different tie seed may pick different partners but stays valid.
  cfg.tieSeed = 100;
  RemovalOutcome c = uw_removal(g, cfg);
  CHECK(verify_outcome(g, c));
}

TEST_CASE("block discipline: q-th W removal lies in block q mod s") {
  RandomSource rng(99, 0);
  for (int trial = 0; trial < 20; ++trial) {
    RandomSource gr(400 + uint64_t(trial), 0);
    Graph g = sample_gnp(150, 0.5, gr);
    Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
    RemovalConfig cfg = make_uw_config(150, rev, 0.1, 0.2, rng);
    RemovalOutcome out = uw_removal(g, cfg);
    CHECK(verify_outcome(g, out));
    std::vector<int> blockOf(150, -1);
    for (int b = 0; b < int(cfg.wblocks.size()); ++b)
      for (int v : cfg.wblocks[size_t(b)]) blockOf[size_t(v)] = b;
    VertexSet w = cfg.w_set();
    int q = 0;
    for (int v : out.removed) {
      if (!w.test(v)) continue;
      ++q;
      CHECK(blockOf[size_t(v)] == ((q - 1) % cfg.s) + 1);
    }
  }
}

TEST_CASE("prefix composition: removal prefix plus valid tail passes verify_ordering") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    RandomSource gr(seed, 10);
    Graph g = sample_gnp(26, 0.5, gr);
    Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), 0.1);
    RandomSource cr(seed, 11);
    RemovalConfig cfg;
    try {
      cfg = make_uw_config(26, rev, 0.1, 0.2, cr);
    } catch (const CapacityError&) {
      continue;
    }
    RemovalOutcome out = uw_removal(g, cfg);
    if (!out.success) continue;
    std::vector<int> ids;
    Graph sub = g.induced(out.vw, &ids);
    auto tail = exact_even_degenerate(sub);
    if (!tail) continue;
    std::vector<int> order = out.removed;
    for (int v : tail->order) order.push_back(ids[size_t(v)]);
    CHECK(verify_ordering(g, EliminationOrder{order}));
  }
}
