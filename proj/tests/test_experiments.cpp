#include <doctest.h>

#include <sstream>

#include "evdeg/errors.hpp"
#include "evdeg/experiments.hpp"

using namespace evdeg;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::RemovalSuccess;
  spec.nGrid = {60, 120};
  spec.pGrid = {0.5};
  spec.alpha = 0.1;
  spec.sFactor = 0.2;
  spec.trials = 12;
  spec.masterSeed = 99;
  spec.seedSet = true;
  spec.threads = 2;
  return spec;
}

}  // namespace

TEST_CASE("experiment cells and CSV shape") {
  ExperimentSpec spec = small_spec();
  auto cells = run_experiment(spec);
  REQUIRE(cells.size() == 2);
  for (const auto& c : cells) {
    CHECK_FALSE(c.skipped);
    CHECK(c.trials == 12);
    CHECK(c.successes + c.failures == c.trials);
  }
  std::ostringstream os;
  emit_csv(cells, spec, os);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "kind,n,p,alpha,s,eta,trials,successes,mean_remainder_frac,stdev,seconds");
  int rows = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("byte-identical CSV across reruns and thread counts") {
  ExperimentSpec spec = small_spec();
  auto c1 = run_experiment(spec);
  spec.threads = 7;
  auto c2 = run_experiment(spec);
  std::ostringstream a, b;
  emit_csv(c1, spec, a);
  emit_csv(c2, spec, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("per-trial streams: seed changes results, kind plumbing works") {
  ExperimentSpec spec = small_spec();
  auto c1 = run_experiment(spec);
  spec.masterSeed = 100;
  auto c2 = run_experiment(spec);
  bool differ = false;
  for (size_t i = 0; i < c1.size(); ++i)
    differ = differ || c1[i].successes != c2[i].successes;
  CHECK(differ);
}

TEST_CASE("degeneracy-rate kind uses the DP at small n") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::DegeneracyRate;
  spec.nGrid = {9};
  spec.pGrid = {0.5};
  spec.trials = 40;
  spec.masterSeed = 5;
  spec.seedSet = true;
  spec.threads = 2;
  auto cells = run_experiment(spec);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].successes + cells[0].failures == 40);
  CHECK(cells[0].successes > 20);  // most small random graphs are even-degenerate
}

TEST_CASE("greedy-vs-exact agreement counting") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::GreedyVsExact;
  spec.nGrid = {8};
  spec.pGrid = {0.5};
  spec.trials = 60;
  spec.masterSeed = 11;
  spec.seedSet = true;
  auto cells = run_experiment(spec);
  CHECK(cells[0].successes > 40);  // greedy seldom disagrees at n=8
}

TEST_CASE("report embeds version, seed, and measured timing") {
  ExperimentSpec spec = small_spec();
  auto cells = run_experiment(spec);
  std::string rep = emit_report(cells, spec);
  CHECK(rep.find("evdeg 0.1.0") != std::string::npos);
  CHECK(rep.find("master_seed") != std::string::npos);
  CHECK(rep.find("seconds") != std::string::npos);
}

TEST_CASE("svg emitter produces polylines per p") {
  ExperimentSpec spec = small_spec();
  spec.pGrid = {0.3, 0.5};
  auto cells = run_experiment(spec);
  std::ostringstream os;
  emit_failure_svg(cells, os);
  std::string svg = os.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("p=0.3") != std::string::npos);
  CHECK(svg.find("p=0.5") != std::string::npos);
}

TEST_CASE("spec JSON parsing and seed requirement") {
  ExperimentSpec spec = experiment_spec_from_json(
      R"({"kind":"removal-success","n_grid":[100],"p_grid":[0.5],"trials":3,"master_seed":1})");
  CHECK(spec.kind == ExperimentKind::RemovalSuccess);
  CHECK(spec.nGrid == std::vector<int>{100});
  CHECK_THROWS_AS(experiment_spec_from_json(
                      R"({"kind":"removal-success","n_grid":[100],"p_grid":[0.5]})"),
                  InputError);
  CHECK_THROWS_AS(experiment_spec_from_json(R"({"kind":"bogus","n_grid":[1],"p_grid":[0.5],"master_seed":1})"),
                  InputError);
}

TEST_CASE("empty cell list gives a header-only CSV; one cell gives two lines") {
  ExperimentSpec spec = small_spec();
  std::ostringstream empty;
  emit_csv({}, spec, empty);
  CHECK(empty.str() ==
        "kind,n,p,alpha,s,eta,trials,successes,mean_remainder_frac,stdev,seconds\n");
  spec.nGrid = {60};
  auto cells = run_experiment(spec);
  std::ostringstream one;
  emit_csv(cells, spec, one);
  int lines = 0;
  for (char ch : one.str())
    if (ch == '\n') ++lines;
  CHECK(lines == 2);
}

TEST_CASE("a vanishing time budget marks cells skipped, never truncated") {
  ExperimentSpec spec = small_spec();
  spec.timeBudgetSeconds = 1e-12;
  auto cells = run_experiment(spec);
  for (const auto& c : cells) {
    CHECK(c.skipped);
    CHECK(c.skipReason == "time budget exceeded");
    CHECK(c.trials == 0);
  }
}

TEST_CASE("degeneracy failure fraction decreases in n for each p") {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::DegeneracyRate;
  spec.nGrid = {8, 10, 12, 14};
  spec.pGrid = {0.2, 0.5, 0.8};
  spec.trials = 5000;
  spec.masterSeed = 4242;
  spec.seedSet = true;
  auto cells = run_experiment(spec);
  REQUIRE(cells.size() == 12);
  for (size_t pi = 0; pi < 3; ++pi) {
    double prev = 1.0;
    for (size_t ni = 0; ni < 4; ++ni) {
      const auto& c = cells[ni * 3 + pi];
      double failFrac = double(c.failures) / c.trials;
      CHECK(failFrac <= prev + 1e-12);
      prev = failFrac;
    }
  }
}

TEST_CASE("infeasible cells are marked skipped with a reason") {
  ExperimentSpec spec = small_spec();
  spec.nGrid = {6};      // far too small for the block partition
  spec.sFactor = 10.0;   // forces an empty-block capacity error
  auto cells = run_experiment(spec);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].skipped);
  CHECK_FALSE(cells[0].skipReason.empty());
}
