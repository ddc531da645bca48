#include "evdeg/certify.hpp"

#include <algorithm>

#include "evdeg/errors.hpp"

namespace evdeg {

namespace {

void note(CertifyDiagnostics* diag, const std::string& msg) {
  if (diag) diag->trail.push_back(msg);
}

// Revelation of the remaining graph, relabeled to subgraph ids: the
// next-level revealed part with its induced subgraph, degree parities into
// the remaining graph, and the remaining edge-count parity.
Revelation sub_revelation(const VertexSet& revealed, const std::vector<int>& ids,
                          const Graph& sub, double alpha) {
  Revelation rev;
  rev.alpha = alpha;
  for (size_t i = 0; i < ids.size(); ++i)
    if (revealed.test(ids[i])) rev.a.push_back(int(i));
  for (size_t i = 0; i < rev.a.size(); ++i)
    for (size_t j = i + 1; j < rev.a.size(); ++j)
      if (sub.has_edge(rev.a[i], rev.a[j])) rev.h.emplace_back(rev.a[i], rev.a[j]);
  for (int a : rev.a) rev.degParity.push_back(uint8_t(sub.degree(a) & 1));
  rev.edgeParity = uint8_t(sub.edge_count() & 1);
  return rev;
}

std::optional<EliminationOrder> certify_impl(const Graph& g, const Revelation& rev,
                                             double alpha, const CertifyParams& params,
                                             RandomSource& rng, CertifyDiagnostics* diag,
                                             int depth) {
  int n = g.vertex_count();
  if (diag) diag->levels = std::max(diag->levels, depth + 1);

  if (n <= params.dpLimit) {
    if (diag) ++diag->dpCalls;
    return exact_even_degenerate(g, params.dpLimit);
  }

  auto recurse_on = [&](const DoubleRemovalPlan& plan, bool wSideIsB,
                        const RemovalOutcome& run) -> std::optional<EliminationOrder> {
    std::vector<int> ids;
    Graph sub = g.induced(run.vw, &ids);
    Revelation subRev =
        sub_revelation(derived_revealed_part(plan, wSideIsB, run), ids, sub, alpha);
    auto tail = certify_impl(sub, subRev, alpha, params, rng, diag, depth + 1);
    if (!tail) return std::nullopt;
    std::vector<int> order = run.removed;
    for (int v : tail->order) order.push_back(ids[size_t(v)]);
    return EliminationOrder{order};
  };

  for (int attempt = 0; attempt < params.maxAttempts; ++attempt) {
    DoubleRemovalPlan plan;
    try {
      plan = make_double_plan(n, rev, alpha, 0, params.eta, &rng,
                              /*strictBounds=*/false, params.sFactor);
    } catch (const CapacityError&) {
      note(diag, "plan construction infeasible at n=" + std::to_string(n));
      break;
    } catch (const InputError&) {
      note(diag, "revealed part too large for a plan at n=" + std::to_string(n));
      break;
    }

    RemovalOutcome bc = uw_removal(g, plan.config_bc());
    if (diag) ++diag->removalRuns;
    if (bc.success) {
      if (auto res = recurse_on(plan, /*wSideIsB=*/false, bc)) return res;
      note(diag, "recursion after (B,C) success failed at n=" + std::to_string(n));
    } else if (diag) {
      ++diag->removalFailures;
    }

    RemovalOutcome cb = uw_removal(g, plan.config_cb());
    if (diag) ++diag->removalRuns;
    if (cb.success) {
      if (auto res = recurse_on(plan, /*wSideIsB=*/true, cb)) return res;
      note(diag, "recursion after (C,B) success failed at n=" + std::to_string(n));
    } else if (diag) {
      ++diag->removalFailures;
    }
  }

  // Removal attempts exhausted at this level.
  if (diag) ++diag->greedyFallbacks;
  for (auto policy : {GreedyPolicy::FirstIndex, GreedyPolicy::MinDegree, GreedyPolicy::MaxDegree})
    if (auto order = greedy_even_degenerate(g, policy, rng)) return order;
  for (int t = 0; t < params.greedyTries; ++t)
    if (auto order = greedy_even_degenerate(g, GreedyPolicy::Random, rng)) return order;
  return std::nullopt;
}

}  // namespace

std::optional<EliminationOrder> recursive_even_degenerate(
    const Graph& g, const Revelation& rev, double alpha, const CertifyParams& params,
    RandomSource& rng, CertifyDiagnostics* diag) {
  rev.validate(g.vertex_count());
  auto result = certify_impl(g, rev, alpha, params, rng, diag, 0);
  if (result && !verify_ordering(g, *result)) {
    // A removal prefix composed with a valid tail is always valid; failing
    // here would be a bug, not a domain failure.
    throw std::logic_error("recursive certifier produced an invalid ordering");
  }
  return result;
}

}  // namespace evdeg
