#include "evdeg/double_removal.hpp"

#include <algorithm>
#include <cmath>

#include "evdeg/errors.hpp"

namespace evdeg {

namespace {

std::vector<int> chunk(const std::vector<int>& ordered, const std::vector<int>& bounds,
                       int k) {
  // chunk k = elements with 1-based positions in (r_(k-1), r_k]
  int lo = k == 1 ? 0 : bounds[size_t(k) - 2];
  int hi = bounds[size_t(k) - 1];
  return std::vector<int>(ordered.begin() + lo, ordered.begin() + hi);
}

std::vector<int> balanced_bounds(int total, int parts) {
  std::vector<int> sizes(size_t(parts), total / parts);
  for (int i = 0; i < total % parts; ++i) ++sizes[size_t(i)];
  std::vector<int> bounds(static_cast<size_t>(parts));
  int acc = 0;
  for (int i = 0; i < parts; ++i) {
    acc += sizes[size_t(i)];
    bounds[size_t(i)] = acc;
  }
  return bounds;
}

}  // namespace

std::vector<int> DoubleRemovalPlan::block_b(int j) const {
  // B_# is the top chunk (highest b-indices); B_j descends from there.
  int k = (j == 0) ? s + 1 : s + 1 - j;
  return chunk(b, rB, k);
}

std::vector<int> DoubleRemovalPlan::block_c(int j) const {
  int k = (j == 0) ? s + 1 : s + 1 - j;
  return chunk(c, rC, k);
}

RemovalConfig DoubleRemovalPlan::config_bc() const {
  RemovalConfig cfg;
  cfg.n = n;
  cfg.revelation = revelation;
  cfg.u = b;
  cfg.s = s;
  cfg.wblocks.resize(size_t(s) + 1);
  for (int j = 0; j <= s; ++j) cfg.wblocks[size_t(j)] = block_c(j);
  return cfg;
}

RemovalConfig DoubleRemovalPlan::config_cb() const {
  RemovalConfig cfg;
  cfg.n = n;
  cfg.revelation = revelation;
  cfg.u = c;
  cfg.s = s;
  cfg.wblocks.resize(size_t(s) + 1);
  for (int j = 0; j <= s; ++j) cfg.wblocks[size_t(j)] = block_b(j);
  return cfg;
}

DoubleRemovalPlan make_double_plan(int n, const Revelation& rev, double alpha, int s,
                                   int eta, RandomSource* rng, bool strictBounds,
                                   double sFactor) {
  rev.validate(n);
  if (!(alpha > 0.0 && alpha < 0.5)) throw InputError("alpha must lie in (0, 1/2)");

  DoubleRemovalPlan plan;
  plan.n = n;
  plan.revelation = rev;
  plan.alpha = alpha;
  plan.s = s > 0 ? s : std::max(1, int(std::llround(sFactor * std::pow(double(n), 0.5 + alpha))));

  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!rev.has(v)) rest.push_back(v);
  if (rng) shuffle(rest, *rng);
  size_t half = (rest.size() + 1) / 2;
  plan.b.assign(rest.begin(), rest.begin() + long(half));
  plan.c.assign(rest.begin() + long(half), rest.end());
  std::sort(plan.b.begin(), plan.b.end());
  std::sort(plan.c.begin(), plan.c.end());

  if (int(plan.c.size()) < plan.s + 1 || int(plan.b.size()) < plan.s + 1)
    throw CapacityError("make_double_plan: a block would be empty at this n");
  plan.rB = balanced_bounds(int(plan.b.size()), plan.s + 1);
  plan.rC = balanced_bounds(int(plan.c.size()), plan.s + 1);

  double half52 = std::pow(double(n), 0.5 - alpha);
  plan.eta = eta > 0 ? eta : std::max(1, int(std::floor(0.02 * half52)));
  plan.eta = std::min(plan.eta, plan.s);

  // D-set size bound from the block construction: eta consecutive blocks.
  double dBound = 0.01 * std::pow(double(n), 1.0 - 2.0 * alpha);
  int maxBlock = 0;
  for (int j = 0; j <= plan.s; ++j)
    maxBlock = std::max({maxBlock, int(plan.block_b(j).size()), int(plan.block_c(j).size())});
  if (double(plan.eta) * maxBlock > dBound) {
    int fit = int(std::floor(dBound / double(maxBlock)));
    if (fit >= 1) {
      plan.warnings.push_back("eta clamped to meet the 0.01 n^(1-2a) D-set bound");
      plan.eta = std::min(plan.eta, fit);
    } else if (strictBounds) {
      throw CapacityError(
          "make_double_plan: D-set bound 0.01 n^(1-2*alpha) unsatisfiable: one block "
          "already exceeds it at this n");
    } else {
      plan.warnings.push_back(
          "D-set bound 0.01 n^(1-2a) unattainable at this n; keeping eta = 1");
      plan.eta = 1;
    }
  }
  return plan;
}

namespace {

VertexSet set_of(int n, const std::vector<int>& vs) { return VertexSet::of(n, vs); }

struct SideDerived {
  int i = 0, ip = 0, etaEff = 0;
  std::vector<int> beta, P, Q;
  VertexSet dP, dQ, a, tP, tQ;
  bool degenerate = false;
};

SideDerived derive_side(const DoubleRemovalPlan& plan, bool sideB,
                        const RemovalOutcome& runOnSide, std::vector<std::string>& warnings) {
  const std::vector<int>& ordered = sideB ? plan.b : plan.c;
  int n = plan.n;
  int s = plan.s;
  SideDerived d;
  d.dP = VertexSet(n);
  d.dQ = VertexSet(n);

  VertexSet side = set_of(n, ordered);
  for (int v : runOnSide.removed)
    if (side.test(v)) d.beta.push_back(v);
  d.i = int(d.beta.size());

  const VertexSet& vw = runOnSide.vw;
  VertexSet sharp = set_of(n, sideB ? plan.block_b(0) : plan.block_c(0));

  if (d.i == 0) {
    d.degenerate = true;
    d.etaEff = 0;
    d.ip = 0;
  } else {
    d.ip = ((d.i - 1) % s) + 1;
    d.etaEff = std::min(plan.eta, d.ip);
    if (d.i - d.etaEff + 1 <= 2 * s) {
      int fit = std::max(0, d.i - 2 * s);
      if (fit < d.etaEff) {
        warnings.push_back(sideB ? "side B: eta clamped, i_B - eta + 1 > 2s unavailable"
                                 : "side C: eta clamped, i_C - eta + 1 > 2s unavailable");
        d.etaEff = std::min(d.etaEff, fit);
      }
    }
    if (2 * d.etaEff > d.i) d.etaEff = d.i / 2;
    if (d.etaEff == 0) d.degenerate = true;
  }

  for (int m = 1; m <= d.etaEff; ++m) d.P.push_back(d.beta[size_t(m) - 1]);
  for (int m = d.i - d.etaEff + 1; m <= d.i; ++m) d.Q.push_back(d.beta[size_t(m) - 1]);
  for (int j = 1; j <= d.etaEff; ++j)
    for (int v : (sideB ? plan.block_b(j) : plan.block_c(j))) d.dP.set(v);
  for (int j = d.ip - d.etaEff + 1; j <= d.ip; ++j)
    for (int v : (sideB ? plan.block_b(j) : plan.block_c(j))) d.dQ.set(v);

  VertexSet aSet = sharp;
  aSet |= d.dP;
  aSet |= d.dQ;
  aSet &= vw;
  d.a = aSet;

  VertexSet tP = vw;
  for (int v : d.Q) tP.set(v);
  tP.subtract(d.dP);
  tP.subtract(sharp);
  d.tP = tP;

  d.tQ = difference(vw, d.a);
  return d;
}

}  // namespace

DoubleRemovalResult double_removal(const Graph& g, const DoubleRemovalPlan& plan) {
  if (g.vertex_count() != plan.n) throw InputError("double_removal: plan built for another n");
  DoubleRemovalResult res;
  res.plan = plan;
  res.bc = uw_removal(g, plan.config_bc());
  res.cb = uw_removal(g, plan.config_cb());
  if (!res.bc.success || !res.cb.success) return res;  // derived sets stay unpopulated

  DoubleRemovalPlan& p = res.plan;
  // Side B derives from the (C,B) run, where B is the W side; side C from (B,C).
  SideDerived db = derive_side(p, true, res.cb, p.warnings);
  SideDerived dc = derive_side(p, false, res.bc, p.warnings);
  p.populated = true;
  p.degenerate = db.degenerate || dc.degenerate;
  p.iB = db.i;
  p.iC = dc.i;
  p.iBp = db.ip;
  p.iCp = dc.ip;
  p.etaB = db.etaEff;
  p.etaC = dc.etaEff;
  p.betaB = std::move(db.beta);
  p.betaC = std::move(dc.beta);
  p.vB = res.cb.vw;
  p.vC = res.bc.vw;
  p.BP = std::move(db.P);
  p.BQ = std::move(db.Q);
  p.CP = std::move(dc.P);
  p.CQ = std::move(dc.Q);
  p.dBP = std::move(db.dP);
  p.dBQ = std::move(db.dQ);
  p.dCP = std::move(dc.dP);
  p.dCQ = std::move(dc.dQ);
  p.aB = std::move(db.a);
  p.aC = std::move(dc.a);
  p.tBP = std::move(db.tP);
  p.tBQ = std::move(db.tQ);
  p.tCP = std::move(dc.tP);
  p.tCQ = std::move(dc.tQ);
  return res;
}

VertexSet derived_revealed_part(const DoubleRemovalPlan& plan, bool sideB,
                                const RemovalOutcome& runOnSide) {
  int n = plan.n;
  VertexSet side = VertexSet::of(n, sideB ? plan.b : plan.c);
  int removedCount = 0;
  for (int v : runOnSide.removed)
    if (side.test(v)) ++removedCount;
  auto block = [&](int j) { return sideB ? plan.block_b(j) : plan.block_c(j); };
  VertexSet out = VertexSet::of(n, block(0));
  if (removedCount > 0) {
    int ip = ((removedCount - 1) % plan.s) + 1;
    int eta = std::min(plan.eta, ip);
    for (int j = 1; j <= eta; ++j)
      for (int v : block(j)) out.set(v);
    for (int j = ip - eta + 1; j <= ip; ++j)
      for (int v : block(j)) out.set(v);
  }
  out &= runOnSide.vw;
  return out;
}

PairSet sigma_b(const DoubleRemovalPlan& plan) {
  if (!plan.populated) throw InputError("sigma_b: plan not populated by a dual run");
  PairSet all = PairSet::clique(VertexSet::of(plan.n, plan.b));
  PairSet drop = pair_union(
      PairSet::clique(plan.vB),
      pair_union(PairSet::between(VertexSet::of(plan.n, plan.BP), plan.tBP),
                 PairSet::between(VertexSet::of(plan.n, plan.BQ), plan.tBQ)));
  return pair_difference(all, drop);
}

PairSet sigma_c(const DoubleRemovalPlan& plan) {
  if (!plan.populated) throw InputError("sigma_c: plan not populated by a dual run");
  PairSet all = PairSet::clique(VertexSet::of(plan.n, plan.c));
  PairSet drop = pair_union(
      PairSet::clique(plan.vC),
      pair_union(PairSet::between(VertexSet::of(plan.n, plan.CP), plan.tCP),
                 PairSet::between(VertexSet::of(plan.n, plan.CQ), plan.tCQ)));
  return pair_difference(all, drop);
}

}  // namespace evdeg
