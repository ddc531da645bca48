#include "evdeg/removal.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "evdeg/errors.hpp"

namespace evdeg {

std::vector<int> RemovalConfig::w_all() const {
  std::vector<int> out;
  for (const auto& b : wblocks) out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet RemovalConfig::w_set() const {
  VertexSet s(n);
  for (const auto& b : wblocks)
    for (int v : b) s.set(v);
  return s;
}

void RemovalConfig::validate() const {
  if (s < 1 || int(wblocks.size()) != s + 1)
    throw InputError("removal config: need s >= 1 and s+1 blocks");
  revelation.validate(n);
  std::vector<uint8_t> seen(size_t(n), 0);
  auto mark = [&](int v) {
    if (v < 0 || v >= n || seen[size_t(v)])
      throw InputError("removal config: A, U, W must partition the vertices");
    seen[size_t(v)] = 1;
  };
  for (int v : revelation.a) mark(v);
  for (int v : u) mark(v);
  size_t lo = SIZE_MAX, hi = 0;
  for (const auto& b : wblocks) {
    lo = std::min(lo, b.size());
    hi = std::max(hi, b.size());
    for (int v : b) mark(v);
  }
  for (int v = 0; v < n; ++v)
    if (!seen[size_t(v)]) throw InputError("removal config: vertex not covered");
  if (hi > lo + 1) throw InputError("removal config: blocks must be balanced");
}

namespace {

// Balanced chunk sizes: first (total % parts) chunks get the extra element.
std::vector<int> balanced_sizes(int total, int parts) {
  std::vector<int> sizes(size_t(parts), total / parts);
  for (int i = 0; i < total % parts; ++i) ++sizes[size_t(i)];
  return sizes;
}

}  // namespace

RemovalConfig make_uw_config(int n, const Revelation& rev, double alpha,
                             double sFactor, RandomSource& rng) {
  rev.validate(n);
  if (!(alpha > 0.0 && alpha < 0.5)) throw InputError("alpha must lie in (0, 1/2)");
  if (sFactor <= 0.0) throw InputError("sFactor must be positive");
  double sizeBound = std::pow(double(n), 1.0 - 2.0 * alpha);
  if (double(rev.a.size()) > sizeBound)
    throw InputError("make_uw_config: |A| exceeds n^(1-2*alpha)");

  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!rev.has(v)) rest.push_back(v);
  shuffle(rest, rng);

  size_t uCount = (rest.size() + 1) / 2;
  RemovalConfig cfg;
  cfg.n = n;
  cfg.revelation = rev;
  cfg.u.assign(rest.begin(), rest.begin() + long(uCount));
  std::sort(cfg.u.begin(), cfg.u.end());
  std::vector<int> w(rest.begin() + long(uCount), rest.end());
  std::sort(w.begin(), w.end());

  cfg.s = std::max(1, int(std::llround(sFactor * std::pow(double(n), 0.5 + alpha))));
  if (int(w.size()) < cfg.s + 1)
    throw CapacityError("make_uw_config: a W block would be empty at this n");
  auto sizes = balanced_sizes(int(w.size()), cfg.s + 1);
  cfg.wblocks.resize(size_t(cfg.s) + 1);
  size_t at = 0;
  for (int b = 0; b <= cfg.s; ++b) {
    cfg.wblocks[size_t(b)].assign(w.begin() + long(at), w.begin() + long(at) + sizes[size_t(b)]);
    at += size_t(sizes[size_t(b)]);
  }
  cfg.validate();
  return cfg;
}

RemovalOutcome uw_removal(const Graph& g, const RemovalConfig& cfg) {
  if (g.vertex_count() != cfg.n) throw InputError("uw_removal: config built for another n");
  cfg.validate();
  int n = cfg.n;

  RemovalOutcome out;
  RemovalTranscript& tr = out.transcript;
  tr.config = cfg;

  std::vector<int> sequence = cfg.revelation.a;
  sequence.insert(sequence.end(), cfg.u.begin(), cfg.u.end());
  size_t aCount = cfg.revelation.a.size();

  VertexSet remaining(n, true);
  RandomSource tieRng(cfg.tieSeed, 0x7e11);

  int q = 1;
  bool failed = false;
  for (size_t p = 1; p <= sequence.size(); ++p) {
    int center = sequence[p - 1];
    int prefix = int(tr.removed.size());
    RoundRecord rec;
    rec.round = int(p);
    rec.center = center;
    rec.parity = uint8_t(g.par_star(center, remaining));
    (p <= aCount ? tr.famA : tr.famU).push_back({center, prefix});

    if (rec.parity == 0) {
      tr.removed.push_back(center);
      remaining.reset(center);
    } else {
      rec.probed = 1;
      rec.block = ((q - 1) % cfg.s) + 1;  // q mod s with values in 1..s
      tr.famE.push_back({center, rec.block, prefix});
      int chosen = -1;
      int eligibleCount = 0;
      for (int w : cfg.wblocks[size_t(rec.block)]) {
        if (!remaining.test(w)) continue;
        ProbeCandidate cand;
        cand.w = w;
        cand.parity = uint8_t(g.par_star(w, remaining));
        cand.edge = uint8_t(g.has_edge(center, w) ? 1 : 0);
        tr.famW.push_back({w, prefix});
        rec.candidates.push_back(cand);
        if (cand.edge && cand.parity == 0) {
          ++eligibleCount;
          if (chosen < 0) chosen = w;  // lowest index
        }
      }
      if (chosen >= 0 && cfg.tieBreak == TieBreak::SeededRandom) {
        uint64_t skip = tieRng.below(uint64_t(eligibleCount));
        for (const auto& cand : rec.candidates)
          if (cand.edge && cand.parity == 0 && skip-- == 0) {
            chosen = cand.w;
            break;
          }
      }
      rec.chosen = chosen;
      if (chosen < 0) {
        tr.rounds.push_back(rec);
        tr.finalP = int(p);
        tr.failRound = int(p);
        failed = true;
        break;
      }
      tr.removed.push_back(chosen);
      remaining.reset(chosen);
      tr.removed.push_back(center);
      remaining.reset(center);
      ++q;
    }
    tr.rounds.push_back(rec);
    tr.finalP = int(p);
  }

  tr.finalQ = q;
  tr.success = !failed;
  out.success = tr.success;
  out.failRound = tr.failRound;
  out.removed = tr.removed;
  if (out.success) out.vw = remaining;
  return out;
}

bool verify_outcome(const Graph& g, const RemovalOutcome& out) {
  const RemovalConfig& cfg = out.transcript.config;
  const RemovalTranscript& tr = out.transcript;
  if (g.vertex_count() != cfg.n) return false;
  int n = cfg.n;

  // (1) Removal soundness: every removed vertex had even parity into the
  // then-remaining set.
  {
    VertexSet remaining(n, true);
    for (size_t i = 0; i < out.removed.size(); ++i) {
      int v = out.removed[i];
      if (!remaining.test(v)) return false;
      if (g.par_star(v, remaining) != 0) return false;
      remaining.reset(v);
    }
  }

  // (2) Replay the rounds against the graph and check the families.
  std::vector<int> sequence = cfg.revelation.a;
  sequence.insert(sequence.end(), cfg.u.begin(), cfg.u.end());
  size_t aCount = cfg.revelation.a.size();

  std::vector<int> blockOf(size_t(n), -1);
  for (int b = 0; b < int(cfg.wblocks.size()); ++b)
    for (int v : cfg.wblocks[size_t(b)]) blockOf[size_t(v)] = b;

  VertexSet remaining(n, true);
  std::vector<int> removed;
  std::vector<StarReveal> famA, famU, famW;
  std::vector<EdgeReveal> famE;
  int q = 1;
  if (tr.rounds.size() > sequence.size()) return false;
  for (size_t i = 0; i < tr.rounds.size(); ++i) {
    const RoundRecord& rec = tr.rounds[i];
    if (rec.round != int(i + 1)) return false;
    if (rec.center != sequence[i]) return false;
    int prefix = int(removed.size());
    if (g.par_star(rec.center, remaining) != rec.parity) return false;
    (i < aCount ? famA : famU).push_back({rec.center, prefix});
    if (rec.parity == 0) {
      if (rec.probed || rec.chosen != -1 || !rec.candidates.empty()) return false;
      removed.push_back(rec.center);
      remaining.reset(rec.center);
    } else {
      if (!rec.probed) return false;
      if (rec.block != ((q - 1) % cfg.s) + 1) return false;
      famE.push_back({rec.center, rec.block, prefix});
      size_t ci = 0;
      int expectChosen = -1;
      for (int w : cfg.wblocks[size_t(rec.block)]) {
        if (!remaining.test(w)) continue;
        if (ci >= rec.candidates.size()) return false;
        const ProbeCandidate& cand = rec.candidates[ci++];
        if (cand.w != w) return false;
        if (g.par_star(w, remaining) != cand.parity) return false;
        if ((g.has_edge(rec.center, w) ? 1 : 0) != cand.edge) return false;
        famW.push_back({w, prefix});
        if (cand.edge && cand.parity == 0 && expectChosen < 0) expectChosen = w;
      }
      if (ci != rec.candidates.size()) return false;
      if (rec.chosen == -1) {
        if (expectChosen != -1) return false;  // a candidate existed but the run failed
        if (i + 1 != tr.rounds.size() || tr.success) return false;
      } else {
        // The chosen w must be eligible and lie in the cycled block; under
        // the lowest-index policy it must be the first eligible one.
        bool ok = false;
        for (const auto& cand : rec.candidates)
          if (cand.w == rec.chosen && cand.edge && cand.parity == 0) ok = true;
        if (!ok) return false;
        if (cfg.tieBreak == TieBreak::LowestIndex && rec.chosen != expectChosen) return false;
        if (blockOf[size_t(rec.chosen)] != rec.block) return false;
        removed.push_back(rec.chosen);
        remaining.reset(rec.chosen);
        removed.push_back(rec.center);
        remaining.reset(rec.center);
        ++q;
      }
    }
  }
  if (tr.success && tr.rounds.size() != sequence.size()) return false;
  // A failed run must end at an actual failing probe, not a truncation.
  if (!tr.success &&
      (tr.rounds.empty() || tr.rounds.back().chosen != -1 || !tr.rounds.back().probed ||
       tr.failRound != int(tr.rounds.size())))
    return false;
  if (removed != out.removed || removed != tr.removed) return false;
  if (q != tr.finalQ) return false;

  auto sameStars = [](const std::vector<StarReveal>& x, const std::vector<StarReveal>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i].center != y[i].center || x[i].prefix != y[i].prefix) return false;
    return true;
  };
  if (!sameStars(famA, tr.famA) || !sameStars(famU, tr.famU) || !sameStars(famW, tr.famW))
    return false;
  if (famE.size() != tr.famE.size()) return false;
  for (size_t i = 0; i < famE.size(); ++i)
    if (famE[i].center != tr.famE[i].center || famE[i].block != tr.famE[i].block ||
        famE[i].prefix != tr.famE[i].prefix)
      return false;

  if (out.success) {
    VertexSet vw(n, true);
    for (int v : removed) vw.reset(v);
    if (!(vw == out.vw)) return false;
    if (!cfg.w_set().contains_all(vw)) return false;
  }
  return true;
}

std::string transcript_to_json(const RemovalOutcome& out) {
  const RemovalTranscript& tr = out.transcript;
  nlohmann::json j;
  j["n"] = tr.config.n;
  j["s"] = tr.config.s;
  j["status"] = out.success ? "success" : "failure";
  j["fail_round"] = out.failRound;
  j["final_p"] = tr.finalP;
  j["final_q"] = tr.finalQ;
  j["config"]["A"] = tr.config.revelation.a;
  j["config"]["U"] = tr.config.u;
  j["config"]["W_blocks"] = tr.config.wblocks;
  j["removed"] = tr.removed;
  if (out.success) j["v_w"] = out.vw.to_vector();

  auto& rounds = j["rounds"] = nlohmann::json::array();
  for (const auto& rec : tr.rounds) {
    nlohmann::json r;
    r["p"] = rec.round;
    r["center"] = rec.center;
    r["parity"] = int(rec.parity);
    r["branch"] = rec.probed ? "probe" : "even";
    if (rec.probed) {
      r["block"] = rec.block;
      auto& cs = r["candidates"] = nlohmann::json::array();
      for (const auto& c : rec.candidates)
        cs.push_back({{"w", c.w}, {"parity", int(c.parity)}, {"edge", int(c.edge)}});
      if (rec.chosen >= 0)
        r["chosen"] = rec.chosen;
      else
        r["chosen"] = nullptr;
    }
    rounds.push_back(std::move(r));
  }

  auto stars = [](const std::vector<StarReveal>& fam) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& s : fam) a.push_back({{"center", s.center}, {"prefix", s.prefix}});
    return a;
  };
  j["families"]["I_A"] = stars(tr.famA);
  j["families"]["I_U"] = stars(tr.famU);
  j["families"]["I_W"] = stars(tr.famW);
  auto& fe = j["families"]["I_e"] = nlohmann::json::array();
  for (const auto& e : tr.famE)
    fe.push_back({{"center", e.center}, {"block", e.block}, {"prefix", e.prefix}});
  return j.dump(2) + "\n";
}

}  // namespace evdeg
