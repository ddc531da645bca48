#include "evdeg/layering.hpp"

#include <algorithm>
#include <map>

#include "evdeg/errors.hpp"

namespace evdeg {

namespace {

// Ids for the restricted universe: pairs inside W, then A∪U × W_# star pairs.
struct Universe {
  int n = 0;
  std::vector<int> widx;    // vertex -> index in W, or -1
  std::vector<int> uidx;    // vertex -> index in A∪U, or -1
  std::vector<int> sharpIdx;  // vertex -> index in W_#, or -1
  int wCount = 0, uCount = 0, sharpCount = 0;
  size_t pairBase = 0, total = 0;

  size_t pair_id(int a, int b) const {
    int i = widx[size_t(a)], j = widx[size_t(b)];
    if (i > j) std::swap(i, j);
    return size_t(i) * wCount - size_t(i) * (i + 1) / 2 + size_t(j - i - 1);
  }
  size_t star_id(int x, int y) const {
    return pairBase + size_t(uidx[size_t(x)]) * sharpCount + size_t(sharpIdx[size_t(y)]);
  }
};

struct Tracker {
  std::vector<uint64_t> seen;
  explicit Tracker(size_t total) : seen((total + 63) / 64, 0) {}
  bool add(size_t id) {
    uint64_t m = 1ull << (id & 63);
    bool fresh = !(seen[id >> 6] & m);
    seen[id >> 6] |= m;
    return fresh;
  }
};

}  // namespace

LayeringReport analyze_transcript_layering(const RemovalTranscript& tr,
                                           const RemovalConfig& cfg) {
  cfg.validate();
  const RemovalConfig& inCfg = tr.config;
  if (inCfg.n != cfg.n || inCfg.s != cfg.s || inCfg.u != cfg.u ||
      inCfg.wblocks != cfg.wblocks || inCfg.revelation.a != cfg.revelation.a)
    throw InputError("layering: transcript was produced under a different config");

  int n = cfg.n;
  int s = cfg.s;
  std::vector<int> w = cfg.w_all();
  std::vector<int> sharp = cfg.wblocks[0];

  Universe uni;
  uni.n = n;
  uni.widx.assign(size_t(n), -1);
  uni.uidx.assign(size_t(n), -1);
  uni.sharpIdx.assign(size_t(n), -1);
  for (size_t i = 0; i < w.size(); ++i) uni.widx[size_t(w[i])] = int(i);
  std::vector<int> au = cfg.revelation.a;
  au.insert(au.end(), cfg.u.begin(), cfg.u.end());
  std::sort(au.begin(), au.end());
  for (size_t i = 0; i < au.size(); ++i) uni.uidx[size_t(au[i])] = int(i);
  for (size_t i = 0; i < sharp.size(); ++i) uni.sharpIdx[size_t(sharp[i])] = int(i);
  uni.wCount = int(w.size());
  uni.uCount = int(au.size());
  uni.sharpCount = int(sharp.size());
  uni.pairBase = size_t(uni.wCount) * (uni.wCount - 1) / 2;
  uni.total = uni.pairBase + size_t(uni.uCount) * size_t(uni.sharpCount);

  // W-side removal positions: w_1, w_2, ... (1-based).
  VertexSet wSet = cfg.w_set();
  std::vector<int> wRemoved;
  std::vector<int> posOf(size_t(n), 0);
  std::vector<int> wRemovedBeforePrefix(tr.removed.size() + 1, 0);
  for (size_t i = 0; i < tr.removed.size(); ++i) {
    wRemovedBeforePrefix[i + 1] = wRemovedBeforePrefix[i];
    if (wSet.test(tr.removed[i])) {
      wRemoved.push_back(tr.removed[i]);
      posOf[size_t(tr.removed[i])] = int(wRemoved.size());  // 1-based
      wRemovedBeforePrefix[i + 1] = wRemovedBeforePrefix[i] + 1;
    }
  }

  // Group the W-star reveals by center; record the q pointer at reveal time.
  std::map<int, std::vector<int>> qAt;  // center -> ascending q values
  for (const auto& sr : tr.famW) {
    if (sr.prefix < 0 || size_t(sr.prefix) > tr.removed.size())
      throw InputError("layering: star prefix out of range");
    if (uni.widx[size_t(sr.center)] < 0 || uni.sharpIdx[size_t(sr.center)] >= 0)
      throw InputError("layering: W star centered outside the cycled blocks");
    qAt[sr.center].push_back(wRemovedBeforePrefix[size_t(sr.prefix)] + 1);
  }
  for (auto& [center, qs] : qAt) {
    std::sort(qs.begin(), qs.end());
    for (size_t i = 0; i + 1 < qs.size(); ++i)
      if (qs[i + 1] - qs[i] != s)
        throw InputError("layering: star reveals do not advance by s removals");
  }

  // Ordered family, rebuilt as id lists. Sigma first.
  std::vector<std::vector<size_t>> sets;
  std::vector<int> category;  // 0 sigma, 1 star, 2 Q0, 3 Qt
  {
    std::vector<size_t> sigma;
    sigma.reserve(uni.total);
    for (size_t i = 0; i < w.size(); ++i)
      for (size_t j = i + 1; j < w.size(); ++j) sigma.push_back(uni.pair_id(w[i], w[j]));
    for (int x : au)
      for (int y : sharp) sigma.push_back(uni.star_id(x, y));
    sets.push_back(std::move(sigma));
    category.push_back(0);
  }
  // Stars S(x, W_#): every a in A (revelation-level), plus processed U centers.
  {
    std::vector<int> centers = cfg.revelation.a;
    for (const auto& sr : tr.famU) centers.push_back(sr.center);
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    for (int x : centers) {
      std::vector<size_t> ids;
      ids.reserve(sharp.size());
      for (int y : sharp) ids.push_back(uni.star_id(x, y));
      sets.push_back(std::move(ids));
      category.push_back(1);
    }
  }
  // Q_0 sets, then the differenced Q_t pieces.
  std::vector<std::vector<size_t>> qt;
  int q0Count = 0;
  for (const auto& [center, qs] : qAt) {
    int m = qs.back();
    {
      std::vector<size_t> ids;  // S(center, W ∖ {w_1..w_(m-1)})
      for (int y : w) {
        if (y == center) continue;
        int pos = posOf[size_t(y)];
        bool removedEarly = wSet.test(y) && pos >= 1 && pos <= m - 1;
        if (!removedEarly) ids.push_back(uni.pair_id(center, y));
      }
      sets.push_back(std::move(ids));
      category.push_back(2);
      ++q0Count;
    }
    for (size_t i = 0; i + 1 < qs.size(); ++i) {
      // piece between reveals at q and q+s: positions q .. q+s-1
      std::vector<size_t> ids;
      for (int pos = qs[i]; pos < qs[i + 1]; ++pos)
        ids.push_back(uni.pair_id(center, wRemoved[size_t(pos) - 1]));
      qt.push_back(std::move(ids));
    }
  }
  for (auto& piece : qt) {
    sets.push_back(std::move(piece));
    category.push_back(3);
  }

  // Private sizes against everything ordered later: walk from the back.
  LayeringReport rep;
  rep.familySize = int(sets.size());
  rep.qSetCount = q0Count + int(qt.size());
  rep.bound = std::min(s, int(sharp.size()));
  Tracker seen(uni.total);
  std::vector<int> priv(sets.size(), 0);
  for (size_t i = sets.size(); i-- > 0;) {
    int fresh = 0;
    for (size_t id : sets[i])
      if (seen.add(id)) ++fresh;
    priv[i] = fresh;
  }
  rep.realized = INT32_MAX;
  for (size_t i = 0; i < sets.size(); ++i) {
    rep.realized = std::min(rep.realized, priv[i]);
    int& slot = category[i] == 0   ? rep.sigmaPrivate
                : category[i] == 1 ? rep.minStarPrivate
                : category[i] == 2 ? rep.minQ0Private
                                   : rep.minQtPrivate;
    if (slot < 0 || priv[i] < slot) slot = priv[i];
  }
  if (sets.empty()) rep.realized = 0;
  rep.pass = rep.realized >= rep.bound;
  return rep;
}

}  // namespace evdeg
