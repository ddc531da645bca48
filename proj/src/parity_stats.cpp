#include "evdeg/parity_stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "evdeg/errors.hpp"
#include "evdeg/numeric.hpp"

namespace evdeg {

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("probability must lie in (0,1)");
}

void check_family(const IndexSetFamily& fam) {
  if (fam.t < 0 || fam.t > kEnumerationLimit)
    throw CapacityError("family: ground set exceeds the enumeration limit");
  if (fam.sets.empty()) throw InputError("family: r >= 1 required");
  if (fam.r() > 20) throw CapacityError("family: too many sets for a 2^r table");
  uint32_t ground = fam.t >= 32 ? ~0u : ((1u << fam.t) - 1);
  for (uint32_t m : fam.sets)
    if (m & ~ground) throw InputError("family: set element outside the ground set");
}

std::vector<double> popcount_weights(int t, double p) {
  std::vector<double> w(size_t(t) + 1);
  double lp = std::log(p), lq = std::log1p(-p);
  for (int k = 0; k <= t; ++k) w[size_t(k)] = std::exp(k * lp + (t - k) * lq);
  return w;
}

}  // namespace

double ParityDistribution::total() const {
  KahanSum s;
  for (double m : mass) s.add(m);
  return s.value();
}

ParityDistribution exact_parity_distribution(const IndexSetFamily& fam, double p) {
  check_family(fam);
  check_p(p);
  int t = fam.t, r = fam.r();
  auto weights = popcount_weights(t, p);
  std::vector<KahanSum> acc(size_t(1) << r);
  uint64_t states = uint64_t(1) << t;
  for (uint64_t x = 0; x < states; ++x) {
    uint32_t idx = 0;
    for (int j = 0; j < r; ++j)
      idx |= uint32_t(std::popcount(uint32_t(x) & fam.sets[size_t(j)]) & 1) << j;
    acc[idx].add(weights[size_t(std::popcount(uint32_t(x)))]);
  }
  ParityDistribution d;
  d.r = r;
  d.exact = true;
  d.mass.resize(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) d.mass[i] = acc[i].value();
  return d;
}

ParityDistribution mc_parity_distribution(const IndexSetFamily& fam, double p,
                                          long long samples, RandomSource& rng) {
  check_family(fam);
  check_p(p);
  if (samples < 1) throw InputError("mc_parity_distribution: samples >= 1 required");
  int t = fam.t, r = fam.r();
  std::vector<long long> counts(size_t(1) << r, 0);
  for (long long i = 0; i < samples; ++i) {
    uint32_t x = 0;
    for (int b = 0; b < t; ++b)
      if (rng.bernoulli(p)) x |= 1u << b;
    uint32_t idx = 0;
    for (int j = 0; j < r; ++j)
      idx |= uint32_t(std::popcount(x & fam.sets[size_t(j)]) & 1) << j;
    ++counts[idx];
  }
  ParityDistribution d;
  d.r = r;
  d.exact = false;
  d.samples = samples;
  d.mass.resize(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) d.mass[i] = double(counts[i]) / double(samples);
  return d;
}

UniformityReport epsilon_uniform_estimate(const ParityDistribution& d) {
  if (d.r < 0 || d.mass.size() != (size_t(1) << d.r))
    throw InputError("epsilon_uniform_estimate: malformed distribution");
  UniformityReport rep;
  rep.method = d.exact ? ReportMethod::Exact : ReportMethod::MonteCarlo;
  rep.samples = d.samples;
  double mn = d.mass[0], mx = d.mass[0];
  for (double m : d.mass) {
    mn = std::min(mn, m);
    mx = std::max(mx, m);
  }
  if (mn <= 0.0) {
    rep.epsilon = 1.0;
    rep.supportDeficit = true;
    return rep;
  }
  double scale = double(size_t(1) << d.r);
  double eps = std::max(1.0 - scale * mn, 1.0 - 1.0 / (scale * mx));
  rep.epsilon = std::clamp(eps, 0.0, 1.0);
  return rep;
}

UniformityReport fix_parity_check(const ParityDistribution& d) {
  if (d.r < 1 || d.mass.size() != (size_t(1) << d.r))
    throw InputError("fix_parity_check: malformed distribution");
  UniformityReport rep = epsilon_uniform_estimate(d);
  rep.supportDeficit = false;
  double classMass[2] = {0.0, 0.0};
  for (size_t v = 0; v < d.mass.size(); ++v)
    classMass[std::popcount(uint32_t(v)) & 1] += d.mass[v];
  bool occupied0 = classMass[0] > 0.0, occupied1 = classMass[1] > 0.0;
  if (occupied0 == occupied1) return rep;  // both classes occupied (or neither)

  rep.fixParity = true;
  rep.paritySum = occupied1 ? 1 : 0;
  double mn = 2.0, mx = -1.0;
  for (size_t v = 0; v < d.mass.size(); ++v) {
    if ((std::popcount(uint32_t(v)) & 1) != rep.paritySum) continue;
    mn = std::min(mn, d.mass[v]);
    mx = std::max(mx, d.mass[v]);
  }
  if (mn <= 0.0) {
    rep.supportDeficit = true;
    rep.fixEpsilon = 1.0;
    return rep;
  }
  double scale = d.r == 0 ? 1.0 : double(size_t(1) << (d.r - 1));
  double eps = std::max(1.0 - scale * mn, 1.0 - 1.0 / (scale * mx));
  rep.fixEpsilon = std::clamp(eps, 0.0, 1.0);
  return rep;
}

ParityBias single_parity_bias(double p, long long eta) {
  check_p(p);
  if (eta < 1) throw InputError("single_parity_bias: eta >= 1 required");
  ParityBias out;
  double biased = std::pow(1.0 - 2.0 * p, double(eta));
  out.p0 = (1.0 + biased) / 2.0;
  out.p1 = 1.0 - out.p0;
  double pstar = std::min(p, 1.0 - p);
  out.bound = std::exp(-2.0 * double(eta) * pstar);
  out.withinBound = std::fabs(biased) <= out.bound * (1.0 + 1e-12) + 1e-300;
  return out;
}

int layering_number(const IndexSetFamily& fam) {
  if (fam.sets.empty()) throw InputError("layering_number: r >= 1 required");
  int r = fam.r();
  if (r == 1) return fam.t + 1;
  int best = fam.t + 1;
  uint32_t later = 0;
  for (int j = r - 1; j >= 1; --j) {
    later |= fam.sets[size_t(j)];
    best = std::min(best, std::popcount(fam.sets[size_t(j) - 1] & ~later));
  }
  return best;
}

int effective_layering(const IndexSetFamily& fam) {
  if (fam.sets.empty()) throw InputError("effective_layering: r >= 1 required");
  int r = fam.r();
  int best = fam.t + 1;
  uint32_t later = 0;
  for (int j = r - 1; j >= 0; --j) {
    best = std::min(best, std::popcount(fam.sets[size_t(j)] & ~later));
    later |= fam.sets[size_t(j)];
  }
  return best;
}

BitMatrix BitMatrix::identity(int r) {
  BitMatrix m;
  m.r = r;
  m.rows.resize(size_t(r));
  for (int i = 0; i < r; ++i) m.rows[size_t(i)] = 1u << i;
  return m;
}

bool BitMatrix::invertible() const {
  std::vector<uint32_t> rs = rows;
  for (int col = 0; col < r; ++col) {
    int pivot = -1;
    for (int i = col; i < r; ++i)
      if ((rs[size_t(i)] >> col) & 1) {
        pivot = i;
        break;
      }
    if (pivot < 0) return false;
    std::swap(rs[size_t(col)], rs[size_t(pivot)]);
    for (int i = 0; i < r; ++i)
      if (i != col && ((rs[size_t(i)] >> col) & 1)) rs[size_t(i)] ^= rs[size_t(col)];
  }
  return true;
}

BitMatrix BitMatrix::inverse() const {
  std::vector<uint32_t> rs = rows;
  BitMatrix inv = identity(r);
  for (int col = 0; col < r; ++col) {
    int pivot = -1;
    for (int i = col; i < r; ++i)
      if ((rs[size_t(i)] >> col) & 1) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw InputError("bit matrix: singular");
    std::swap(rs[size_t(col)], rs[size_t(pivot)]);
    std::swap(inv.rows[size_t(col)], inv.rows[size_t(pivot)]);
    for (int i = 0; i < r; ++i)
      if (i != col && ((rs[size_t(i)] >> col) & 1)) {
        rs[size_t(i)] ^= rs[size_t(col)];
        inv.rows[size_t(i)] ^= inv.rows[size_t(col)];
      }
  }
  return inv;
}

BitMatrix BitMatrix::random_invertible(int r, RandomSource& rng) {
  if (r < 1 || r > 32) throw InputError("bit matrix: r must lie in 1..32");
  uint32_t groundMask = r >= 32 ? ~0u : ((1u << r) - 1);
  for (;;) {
    BitMatrix m;
    m.r = r;
    m.rows.resize(size_t(r));
    for (int i = 0; i < r; ++i) m.rows[size_t(i)] = uint32_t(rng.next_u64()) & groundMask;
    if (m.invertible()) return m;
  }
}

uint32_t BitMatrix::apply(uint32_t v) const {
  uint32_t out = 0;
  for (int j = 0; j < r; ++j)
    out |= uint32_t(std::popcount(rows[size_t(j)] & v) & 1) << j;
  return out;
}

IndexSetFamily apply_f2_transform(const IndexSetFamily& fam, const BitMatrix& T) {
  if (T.r != fam.r()) throw InputError("apply_f2_transform: dimension mismatch");
  if (!T.invertible()) throw InputError("apply_f2_transform: singular transform");
  IndexSetFamily out;
  out.t = fam.t;
  out.sets.assign(fam.sets.size(), 0);
  for (int i = 0; i < fam.t; ++i) {
    uint32_t col = 0;
    for (int j = 0; j < fam.r(); ++j) col |= ((fam.sets[size_t(j)] >> i) & 1u) << j;
    uint32_t mapped = T.apply(col);
    for (int j = 0; j < fam.r(); ++j)
      if ((mapped >> j) & 1) out.sets[size_t(j)] |= 1u << i;
  }
  return out;
}

LayeredCheckReport check_layered_uniformity(const IndexSetFamily& fam, double p,
                                            const BitMatrix* transform) {
  check_family(fam);
  check_p(p);
  LayeredCheckReport rep;
  rep.eta = effective_layering(fam);
  double pstar = std::min(p, 1.0 - p);
  rep.bound = double(fam.r()) * std::exp(-2.0 * double(rep.eta) * pstar);
  if (rep.bound >= 1.0) return rep;  // bound vacuous; inapplicable
  rep.applicable = true;
  IndexSetFamily target = transform ? apply_f2_transform(fam, *transform) : fam;
  ParityDistribution law = exact_parity_distribution(target, p);
  rep.epsilon = epsilon_uniform_estimate(law).epsilon;
  rep.pass = rep.epsilon <= rep.bound + 1e-9;
  return rep;
}

AffectednessReport check_conditional_affectedness(const AffectednessSetup& setup) {
  check_p(setup.p);
  if (setup.t < 2 || setup.t > 20)
    throw CapacityError("affectedness: t must lie in 2..20");
  if (setup.k < 1 || setup.k >= setup.t)
    throw InputError("affectedness: need 1 <= k < t");
  if (setup.sets.empty() || setup.sets.size() > 10)
    throw InputError("affectedness: need 1..10 sets");
  if (setup.k + int(setup.sets.size()) > 18)
    throw CapacityError("affectedness: joint table 2^(k+r) too large");
  int t = setup.t, k = setup.k, r = int(setup.sets.size());
  uint32_t ground = (1u << t) - 1;
  for (uint32_t m : setup.sets)
    if (m & ~ground) throw InputError("affectedness: set outside the ground set");

  AffectednessReport rep;

  // Law of Z: parities of the X' restrictions, X' = bits k..t-1.
  IndexSetFamily zfam;
  zfam.t = t - k;
  for (uint32_t m : setup.sets) zfam.sets.push_back(m >> k);
  ParityDistribution zlaw = exact_parity_distribution(zfam, setup.p);
  UniformityReport zu = epsilon_uniform_estimate(zlaw);
  UniformityReport zf = fix_parity_check(zlaw);
  rep.epsZ = zu.epsilon;
  rep.epsZFix = zf.fixParity ? zf.fixEpsilon : 1.0;

  // Joint law P[x, y] over the low-bit vector x and the parity vector y.
  auto weights = popcount_weights(t, setup.p);
  size_t xCells = size_t(1) << k, yCells = size_t(1) << r;
  std::vector<KahanSum> joint(xCells * yCells);
  for (uint32_t assign = 0; assign < (1u << t); ++assign) {
    uint32_t x = assign & ((1u << k) - 1);
    uint32_t y = 0;
    for (int j = 0; j < r; ++j)
      y |= uint32_t(std::popcount(assign & setup.sets[size_t(j)]) & 1) << j;
    joint[size_t(x) * yCells + y].add(weights[size_t(std::popcount(assign))]);
  }

  // Marginals. X is iid so P[x] has the closed product form.
  std::vector<double> px(xCells), py(yCells, 0.0), pw(2, 0.0);
  auto xw = popcount_weights(k, setup.p);
  for (size_t x = 0; x < xCells; ++x) px[x] = xw[size_t(std::popcount(uint32_t(x)))];
  for (size_t x = 0; x < xCells; ++x)
    for (size_t y = 0; y < yCells; ++y) py[y] += joint[x * yCells + y].value();
  for (size_t y = 0; y < yCells; ++y) pw[std::popcount(uint32_t(y)) & 1] += py[y];

  // Lemma route 1: Y inherits Z's uniformity, and conditioning on Y moves X
  // by at most a (1 - 2 epsZ) ratio factor.
  {
    ParityDistribution ylaw;
    ylaw.r = r;
    ylaw.mass = py;
    rep.yEpsilon = epsilon_uniform_estimate(ylaw).epsilon;
    rep.passYUniform = rep.yEpsilon <= rep.epsZ + 1e-9;
  }
  if (rep.epsZ < 0.5) {
    rep.applicable = true;
    double minRatio = 1.0, maxRatio = 1.0;
    for (size_t y = 0; y < yCells; ++y) {
      if (py[y] <= 0.0) continue;
      for (size_t x = 0; x < xCells; ++x) {
        double cond = joint[x * yCells + y].value() / py[y];
        double ratio = cond / px[x];
        minRatio = std::min(minRatio, ratio);
        maxRatio = std::max(maxRatio, ratio);
      }
    }
    rep.deviationY = std::max(1.0 - minRatio, 1.0 - 1.0 / maxRatio);
    rep.deviationY = std::max(rep.deviationY, 0.0);
    rep.passAffected = rep.deviationY <= 2.0 * rep.epsZ + 1e-9;
  }

  // Lemma route 2: with Z confined to one parity class, (X|Y) tracks (X|W)
  // where W is the parity sum of Y.
  if (zf.fixParity && zf.fixEpsilon < 0.5 && !zf.supportDeficit) {
    rep.fixParityApplicable = true;
    std::vector<double> pxw(xCells * 2, 0.0);
    for (size_t x = 0; x < xCells; ++x)
      for (size_t y = 0; y < yCells; ++y)
        pxw[x * 2 + (std::popcount(uint32_t(y)) & 1)] += joint[x * yCells + y].value();
    double minRatio = 1.0, maxRatio = 1.0;
    for (size_t y = 0; y < yCells; ++y) {
      if (py[y] <= 0.0) continue;
      int w = std::popcount(uint32_t(y)) & 1;
      for (size_t x = 0; x < xCells; ++x) {
        double condY = joint[x * yCells + y].value() / py[y];
        double condW = pxw[x * 2 + w] / pw[size_t(w)];
        if (condW <= 0.0) continue;
        double ratio = condY / condW;
        minRatio = std::min(minRatio, ratio);
        maxRatio = std::max(maxRatio, ratio);
      }
    }
    rep.deviationW = std::max({1.0 - minRatio, 1.0 - 1.0 / maxRatio, 0.0});
    rep.passFixParity = rep.deviationW <= 2.0 * rep.epsZFix + 1e-9;
  }
  return rep;
}

BipartiteProbeReport bipartite_fix_parity_probe(int aSize, int bSize, double p,
                                                bool exactMode, long long trials,
                                                RandomSource* rng) {
  check_p(p);
  if (aSize < 1 || bSize < 1) throw InputError("bipartite probe: sides must be nonempty");
  int cells = aSize * bSize;
  BipartiteProbeReport rep;
  rep.aSize = aSize;
  rep.bSize = bSize;
  rep.p = p;
  int r = aSize + bSize;
  if (r > 20) throw CapacityError("bipartite probe: outcome space too large");

  ParityDistribution dist;
  dist.r = r;
  dist.mass.assign(size_t(1) << r, 0.0);

  auto outcome_of = [&](uint32_t mask) {
    uint32_t idx = 0;
    for (int i = 0; i < aSize; ++i) {
      uint32_t row = (mask >> (i * bSize)) & ((1u << bSize) - 1);
      idx |= uint32_t(std::popcount(row) & 1) << i;
    }
    for (int j = 0; j < bSize; ++j) {
      int par = 0;
      for (int i = 0; i < aSize; ++i) par ^= int((mask >> (i * bSize + j)) & 1);
      idx |= uint32_t(par) << (aSize + j);
    }
    return idx;
  };

  if (exactMode) {
    if (cells > kEnumerationLimit)
      throw CapacityError("bipartite probe: exact mode needs |A|*|B| <= 24");
    auto weights = popcount_weights(cells, p);
    std::vector<KahanSum> acc(dist.mass.size());
    for (uint32_t mask = 0; mask < (1u << cells); ++mask)
      acc[outcome_of(mask)].add(weights[size_t(std::popcount(mask))]);
    for (size_t i = 0; i < acc.size(); ++i) dist.mass[i] = acc[i].value();
    dist.exact = true;
  } else {
    if (!rng) throw InputError("bipartite probe: Monte Carlo mode needs a RandomSource");
    if (trials < 1) throw InputError("bipartite probe: trials >= 1 required");
    std::vector<long long> counts(dist.mass.size(), 0);
    for (long long tIdx = 0; tIdx < trials; ++tIdx) {
      uint32_t mask = 0;
      for (int c = 0; c < cells; ++c)
        if (rng->bernoulli(p)) mask |= 1u << c;
      ++counts[outcome_of(mask)];
    }
    for (size_t i = 0; i < counts.size(); ++i)
      dist.mass[i] = double(counts[i]) / double(trials);
    dist.exact = false;
    dist.samples = trials;

    long long cmin = -1, cmax = -1;
    for (long long c : counts) {
      if (cmin < 0 || c < cmin) cmin = c;
      if (c > cmax) cmax = c;
    }
    auto lo = clopper_pearson(cmin, trials, 1e-3);
    auto hi = clopper_pearson(cmax, trials, 1e-3);
    rep.cpMinLo = lo.first;
    rep.cpMinHi = lo.second;
    rep.cpMaxLo = hi.first;
    rep.cpMaxHi = hi.second;
  }

  // The handshake double count forces the total parity sum even.
  rep.singleClass = true;
  for (size_t v = 0; v < dist.mass.size(); ++v)
    if (dist.mass[v] > 0.0 && (std::popcount(uint32_t(v)) & 1)) rep.singleClass = false;

  rep.uniformity = fix_parity_check(dist);
  double pstar = std::min(p, 1.0 - p);
  rep.bound = std::exp(-double(std::min(aSize, bSize)) * pstar * pstar / 30.0);
  rep.pass = dist.exact && rep.singleClass && rep.uniformity.fixParity &&
             rep.uniformity.fixEpsilon <= rep.bound + 1e-9;
  return rep;
}

std::optional<uint32_t> bipartite_switch(uint32_t mask, int aSize, int bSize, int i) {
  if (i < 0 || i + 1 >= bSize) throw InputError("bipartite_switch: column out of range");
  // Balanced halves of A; the pivot half alternates with the 1-based column
  // index so consecutive switch maps act on disjoint halves.
  int halfCeil = (aSize + 1) / 2;
  int jSel = (i + 1) % 2;
  int lo = jSel == 0 ? 0 : halfCeil;
  int hi = jSel == 0 ? halfCeil : aSize;
  for (int k = lo; k < hi; ++k) {
    bool e1 = (mask >> (k * bSize + i)) & 1;
    bool e2 = (mask >> (k * bSize + i + 1)) & 1;
    if (e1 != e2) {
      uint32_t out = mask;
      out ^= 1u << (k * bSize + i);
      out ^= 1u << (k * bSize + i + 1);
      return out;
    }
  }
  return std::nullopt;
}

McConsistency mc_vs_exact(const ParityDistribution& exact, const ParityDistribution& mc) {
  if (exact.r != mc.r) throw InputError("mc_vs_exact: dimension mismatch");
  if (mc.samples < 1) throw InputError("mc_vs_exact: estimated law required");
  McConsistency out;
  out.samples = mc.samples;
  double stat = 0;
  int dof = 0;
  for (size_t v = 0; v < exact.mass.size(); ++v) {
    double expCount = exact.mass[v] * double(mc.samples);
    double obsCount = mc.mass[v] * double(mc.samples);
    if (exact.mass[v] <= 0.0) {
      // structurally empty cell: any observation there is an outright failure
      if (obsCount > 0.0) {
        out.chiSquare = 1e18;
        out.pValue = 0.0;
        out.consistentAt1e3 = false;
        return out;
      }
      continue;
    }
    stat += (obsCount - expCount) * (obsCount - expCount) / expCount;
    ++dof;
  }
  out.cells = dof;
  out.chiSquare = stat;
  out.pValue = dof > 1 ? chi_square_pvalue(stat, double(dof - 1)) : 1.0;
  out.consistentAt1e3 = out.pValue > 1e-3;
  return out;
}

}  // namespace evdeg
