#include "evdeg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "evdeg/errors.hpp"
#include "evdeg/sampling.hpp"

namespace evdeg {

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::RemovalSuccess: return "removal-success";
    case ExperimentKind::RemainderSize: return "remainder-size";
    case ExperimentKind::DegeneracyRate: return "degeneracy-rate";
    case ExperimentKind::GreedyVsExact: return "greedy-vs-exact";
  }
  return "unknown";
}

ExperimentKind kind_from_name(const std::string& name) {
  if (name == "removal-success") return ExperimentKind::RemovalSuccess;
  if (name == "remainder-size") return ExperimentKind::RemainderSize;
  if (name == "degeneracy-rate") return ExperimentKind::DegeneracyRate;
  if (name == "greedy-vs-exact") return ExperimentKind::GreedyVsExact;
  throw InputError("unknown experiment kind: " + name);
}

namespace {

struct TrialResult {
  bool valid = false;
  bool success = false;
  bool hasRemainder = false;
  double remainder = 0;
  std::string error;
};

TrialResult run_trial(const ExperimentSpec& spec, int n, double p, RandomSource& rng) {
  TrialResult res;
  try {
    Graph g = sample_gnp(n, p, rng);
    Revelation rev = Revelation::unconditioned(uint8_t(g.edge_count() & 1), spec.alpha);
    switch (spec.kind) {
      case ExperimentKind::RemovalSuccess:
      case ExperimentKind::RemainderSize: {
        RemovalConfig cfg = make_uw_config(n, rev, spec.alpha, spec.sFactor, rng);
        RemovalOutcome out = uw_removal(g, cfg);
        res.success = out.success;
        if (out.success) {
          res.hasRemainder = true;
          res.remainder = double(out.vw.count()) / double(n);
        }
        break;
      }
      case ExperimentKind::DegeneracyRate: {
        if (n <= spec.certify.dpLimit)
          res.success = exact_even_degenerate(g, spec.certify.dpLimit).has_value();
        else
          res.success =
              recursive_even_degenerate(g, rev, spec.alpha, spec.certify, rng).has_value();
        break;
      }
      case ExperimentKind::GreedyVsExact: {
        auto greedy = greedy_even_degenerate(g, GreedyPolicy::FirstIndex, rng);
        auto exact = exact_even_degenerate(g, spec.certify.dpLimit);
        res.success = greedy.has_value() == exact.has_value();
        break;
      }
    }
    res.valid = true;
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

}  // namespace

std::vector<SummaryCell> run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw InputError("experiment: trials >= 1 required");
  if (spec.nGrid.empty() || spec.pGrid.empty())
    throw InputError("experiment: n and p grids must be nonempty");
  if (!spec.seedSet) throw InputError("experiment: masterSeed required");

  int threads = spec.threads > 0 ? spec.threads
                                 : int(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<SummaryCell> cells;
  int cellIndex = 0;
  for (int n : spec.nGrid)
    for (double p : spec.pGrid) {
      SummaryCell cell;
      cell.kind = spec.kind;
      cell.n = n;
      cell.p = p;
      cell.s = std::max(1, int(std::llround(spec.sFactor * std::pow(double(n), 0.5 + spec.alpha))));
      cell.eta = spec.eta > 0
                     ? spec.eta
                     : std::max(1, int(std::floor(0.02 * std::pow(double(n), 0.5 - spec.alpha))));

      auto start = std::chrono::steady_clock::now();
      std::vector<TrialResult> results(size_t(spec.trials));
      std::atomic<bool> overBudget{false};
      auto worker = [&](int offset) {
        for (int t = offset; t < spec.trials; t += threads) {
          if (spec.timeBudgetSeconds > 0) {
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (elapsed > spec.timeBudgetSeconds) {
              overBudget.store(true);
              return;
            }
          }
          uint64_t stream = uint64_t(cellIndex) * uint64_t(spec.trials) + uint64_t(t);
          RandomSource rng(spec.masterSeed, stream);
          results[size_t(t)] = run_trial(spec, n, p, rng);
        }
      };
      std::vector<std::thread> pool;
      for (int w = 1; w < threads; ++w) pool.emplace_back(worker, w);
      worker(0);
      for (auto& th : pool) th.join();
      cell.wallClock =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      if (overBudget.load()) {
        cell.skipped = true;
        cell.skipReason = "time budget exceeded";
      } else {
        for (const auto& r : results) {
          if (!r.valid) {
            cell.skipped = true;
            cell.skipReason = r.error.empty() ? "trial failed" : r.error;
            break;
          }
        }
      }
      if (!cell.skipped) {
        double sum = 0;
        int remCount = 0;
        for (const auto& r : results) {
          cell.trials += 1;
          (r.success ? cell.successes : cell.failures) += 1;
          if (r.hasRemainder) {
            sum += r.remainder;
            ++remCount;
          }
        }
        if (remCount > 0) {
          cell.meanRemainderFraction = sum / remCount;
          if (remCount > 1) {
            double ss = 0;
            for (const auto& r : results)
              if (r.hasRemainder) {
                double d = r.remainder - cell.meanRemainderFraction;
                ss += d * d;
            }
            cell.stdev = std::sqrt(ss / (remCount - 1));
          }
        }
      }
      cells.push_back(cell);
      ++cellIndex;
    }
  return cells;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

void emit_csv(const std::vector<SummaryCell>& cells, const ExperimentSpec& spec,
              std::ostream& out) {
  out << "kind,n,p,alpha,s,eta,trials,successes,mean_remainder_frac,stdev,seconds\n";
  for (const auto& c : cells) {
    out << kind_name(c.kind) << ',' << c.n << ',' << fmt("%g", c.p) << ','
        << fmt("%g", spec.alpha) << ',' << c.s << ',' << c.eta << ',' << c.trials << ','
        << c.successes << ',' << fmt("%.6f", c.meanRemainderFraction) << ','
        << fmt("%.6f", c.stdev) << ',' << fmt("%.3f", spec.timing ? c.wallClock : 0.0)
        << '\n';
  }
}

std::string emit_report(const std::vector<SummaryCell>& cells, const ExperimentSpec& spec) {
  nlohmann::json j;
  j["version"] = kVersionString;
  j["master_seed"] = spec.masterSeed;
  j["spec"] = {{"kind", kind_name(spec.kind)},
               {"n_grid", spec.nGrid},
               {"p_grid", spec.pGrid},
               {"alpha", spec.alpha},
               {"s_factor", spec.sFactor},
               {"eta", spec.eta},
               {"trials", spec.trials},
               {"time_budget_seconds", spec.timeBudgetSeconds},
               {"threads", spec.threads}};
  auto& arr = j["cells"] = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json e = {{"kind", kind_name(c.kind)},
                        {"n", c.n},
                        {"p", c.p},
                        {"s", c.s},
                        {"eta", c.eta},
                        {"trials", c.trials},
                        {"successes", c.successes},
                        {"failures", c.failures},
                        {"mean_remainder_frac", c.meanRemainderFraction},
                        {"stdev", c.stdev},
                        {"seconds", c.wallClock},
                        {"skipped", c.skipped}};
    if (c.skipped) e["skip_reason"] = c.skipReason;
    arr.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

void emit_failure_svg(const std::vector<SummaryCell>& cells, std::ostream& out) {
  const int W = 640, H = 420, ML = 70, MR = 20, MT = 20, MB = 50;
  double nMin = 1e18, nMax = 0;
  for (const auto& c : cells) {
    if (c.skipped) continue;
    nMin = std::min(nMin, double(c.n));
    nMax = std::max(nMax, double(c.n));
  }
  if (nMax <= 0) {
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='10' height='10'/>\n";
    return;
  }
  if (nMax == nMin) nMax = nMin + 1;

  auto rate = [](const SummaryCell& c) {
    double r = c.trials > 0 ? double(c.failures) / c.trials : 1.0;
    double floor = c.trials > 0 ? 0.1 / c.trials : 1e-6;
    return std::max(r, floor);
  };
  double lo = 0, hi = -12;
  for (const auto& c : cells)
    if (!c.skipped) {
      double l = std::log10(rate(c));
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
  lo = std::floor(lo) - 0.2;
  hi = std::max(hi + 0.2, lo + 1.0);

  auto xpix = [&](double n) { return ML + (n - nMin) / (nMax - nMin) * (W - ML - MR); };
  auto ypix = [&](double lg) { return MT + (hi - lg) / (hi - lo) * (H - MT - MB); };

  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "' font-family='monospace' font-size='11'>\n";
  out << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";
  out << "<line x1='" << ML << "' y1='" << H - MB << "' x2='" << W - MR << "' y2='" << H - MB
      << "' stroke='black'/>\n";
  out << "<line x1='" << ML << "' y1='" << MT << "' x2='" << ML << "' y2='" << H - MB
      << "' stroke='black'/>\n";
  for (int d = int(std::floor(lo)); d <= 0; ++d) {
    double y = ypix(d);
    out << "<line x1='" << ML - 4 << "' y1='" << y << "' x2='" << W - MR << "' y2='" << y
        << "' stroke='#ddd'/>\n";
    out << "<text x='4' y='" << y + 4 << "'>1e" << d << "</text>\n";
  }
  std::vector<double> ps;
  for (const auto& c : cells)
    if (!c.skipped && std::find(ps.begin(), ps.end(), c.p) == ps.end()) ps.push_back(c.p);
  std::sort(ps.begin(), ps.end());
  const char* palette[] = {"#1b6ca8", "#c0392b", "#1e8449", "#8e44ad", "#d68910", "#117a65"};
  for (size_t pi = 0; pi < ps.size(); ++pi) {
    std::vector<std::pair<int, double>> pts;
    for (const auto& c : cells)
      if (!c.skipped && c.p == ps[pi]) pts.emplace_back(c.n, rate(c));
    std::sort(pts.begin(), pts.end());
    out << "<polyline fill='none' stroke='" << palette[pi % 6] << "' stroke-width='1.5' points='";
    for (auto [n, r] : pts) out << xpix(n) << ',' << ypix(std::log10(r)) << ' ';
    out << "'/>\n";
    for (auto [n, r] : pts) {
      out << "<circle cx='" << xpix(n) << "' cy='" << ypix(std::log10(r))
          << "' r='2.5' fill='" << palette[pi % 6] << "'/>\n";
      out << "<text x='" << xpix(n) - 10 << "' y='" << H - MB + 16 << "'>" << n << "</text>\n";
    }
    out << "<text x='" << W - MR - 90 << "' y='" << MT + 14 * (pi + 1) << "' fill='"
        << palette[pi % 6] << "'>p=" << fmt("%g", ps[pi]) << "</text>\n";
  }
  out << "<text x='" << (W / 2 - 60) << "' y='" << H - 8 << "'>n (vertices)</text>\n";
  out << "<text x='4' y='14'>failure rate</text>\n";
  out << "</svg>\n";
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("experiment spec JSON: ") + e.what());
  }
  ExperimentSpec spec;
  try {
    spec.kind = kind_from_name(j.at("kind").get<std::string>());
    spec.nGrid = j.at("n_grid").get<std::vector<int>>();
    spec.pGrid = j.at("p_grid").get<std::vector<double>>();
    spec.alpha = j.value("alpha", 0.1);
    spec.sFactor = j.value("s_factor", kDefaultSFactor);
    spec.eta = j.value("eta", 0);
    spec.trials = j.value("trials", 100);
    if (!j.contains("master_seed"))
      throw InputError("experiment spec: master_seed is required (no silent entropy)");
    spec.masterSeed = j.at("master_seed").get<uint64_t>();
    spec.seedSet = true;
    spec.timeBudgetSeconds = j.value("time_budget_seconds", 0.0);
    spec.timing = j.value("timing", false);
    spec.threads = j.value("threads", 0);
    if (j.contains("certify")) {
      const auto& c = j["certify"];
      spec.certify.dpLimit = c.value("dp_limit", kDefaultDpLimit);
      spec.certify.maxAttempts = c.value("max_attempts", 3);
      spec.certify.greedyTries = c.value("greedy_tries", 32);
      spec.certify.sFactor = c.value("s_factor", spec.sFactor);
    } else {
      spec.certify.sFactor = spec.sFactor;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("experiment spec JSON: ") + e.what());
  }
  return spec;
}

}  // namespace evdeg
