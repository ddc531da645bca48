#include "evdeg/recurrence.hpp"

#include <cmath>
#include <deque>

#include <json.hpp>

#include "evdeg/errors.hpp"

namespace evdeg {

double RecurrenceParams::zeta() const {
  return 2.0 * std::pow(0.25 - c, 0.5 - alpha) - 1.0;
}

RecurrenceResult solve_recurrence(const RecurrenceParams& params, long long horizon) {
  if (!(params.alpha > 0.0 && params.alpha < 0.5))
    throw InputError("recurrence: alpha must lie in (0, 1/2)");
  if (!(params.c > 0.0 && params.c < 0.25))
    throw InputError("recurrence: c must lie in (0, 1/4)");
  double zeta = params.zeta();
  if (zeta <= 0.0) throw InputError("recurrence: zeta = 2(1/4-c)^(1/2-a) - 1 must be positive");
  if (params.baseValues.empty()) throw InputError("recurrence: base window required");

  RecurrenceResult res;
  res.zeta = zeta;
  res.baseLo = params.baseValues.begin()->first;
  res.baseHi = params.baseValues.rbegin()->first;
  res.horizon = horizon;
  if (res.baseLo < 1) throw InputError("recurrence: base window must start at n >= 1");
  if (static_cast<long long>(params.baseValues.size()) != res.baseHi - res.baseLo + 1)
    throw InputError("recurrence: base window must be contiguous");
  if (horizon <= res.baseHi) throw InputError("recurrence: horizon inside the base window");

  const double ex = 0.5 - params.alpha;
  double eps = 0.0;
  for (const auto& [n, v] : params.baseValues) {
    if (v <= 0.0 || v >= 1.0) throw InputError("recurrence: base values must lie in (0,1)");
    eps = std::max(eps, v);
  }
  res.epsilon = eps;

  // Construction checks; failures are reported, never thrown.
  double k0 = params.K0 > 0.0 ? params.K0
                              : std::log(1.0 / eps) / std::pow(double(res.baseHi), ex);
  res.k0 = k0;
  if (eps + std::pow(eps, zeta) >= 1.0) {
    res.reason = "base window fails eps + eps^zeta < 1";
    return res;
  }
  if (!(k0 < params.K / 2.0)) {
    res.reason = "K0 must stay below K/2";
    return res;
  }
  // Window self-sufficiency: the first iterated n may only reach into the base.
  long long firstLo = (long long)std::floor(double(res.baseHi + 1) * (0.25 - params.c));
  if (firstLo < res.baseLo) {
    res.reason = "recursion window reaches below the base window";
    return res;
  }
  // Supplied K0 must be consistent with the base values.
  for (const auto& [n, v] : params.baseValues) {
    if (v > std::exp(-k0 * std::pow(double(n), ex)) * (1.0 + 1e-12)) {
      res.reason = "a base value already violates the K0 bound";
      return res;
    }
  }
  res.applicable = true;

  res.fhat.resize(size_t(horizon - res.baseLo + 1));
  for (const auto& [n, v] : params.baseValues) res.fhat[size_t(n - res.baseLo)] = v;

  // Sliding-window maximum over [floor(n(1/4-c)), ceil(n(1/4+c))]; both ends
  // are nondecreasing in n, so a monotone deque gives O(1) amortized steps.
  std::deque<long long> dq;  // indices n', fhat decreasing
  long long included = res.baseLo - 1;
  res.boundHolds = true;
  for (long long n = res.baseHi + 1; n <= horizon; ++n) {
    long long lo = (long long)std::floor(double(n) * (0.25 - params.c));
    long long hi = (long long)std::ceil(double(n) * (0.25 + params.c));
    if (hi > n - 1) hi = n - 1;
    while (included < hi) {
      ++included;
      double v = res.fhat[size_t(included - res.baseLo)];
      while (!dq.empty() && res.fhat[size_t(dq.back() - res.baseLo)] <= v) dq.pop_back();
      dq.push_back(included);
    }
    while (!dq.empty() && dq.front() < lo) dq.pop_front();
    double windowMax = dq.empty() ? 0.0 : res.fhat[size_t(dq.front() - res.baseLo)];
    double value = std::exp(-params.K * std::pow(double(n), ex)) + windowMax * windowMax;
    res.fhat[size_t(n - res.baseLo)] = value;
    if (res.boundHolds && value > std::exp(-k0 * std::pow(double(n), ex)) * (1.0 + 1e-12)) {
      res.boundHolds = false;
      res.firstViolation = n;
    }
  }
  return res;
}

RecurrenceParams recurrence_params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("recurrence params JSON: ") + e.what());
  }
  RecurrenceParams p;
  p.K = j.value("K", 1.0);
  p.K0 = j.value("K0", 0.0);
  p.alpha = j.value("alpha", 0.1);
  p.c = j.value("c", 0.01);
  p.n0 = j.value("N0", 0ll);
  if (j.contains("base_values")) {
    for (auto it = j["base_values"].begin(); it != j["base_values"].end(); ++it)
      p.baseValues[std::stoll(it.key())] = it.value().get<double>();
  }
  if (j.contains("base")) {
    long long lo = j["base"].at("lo").get<long long>();
    long long hi = j["base"].at("hi").get<long long>();
    double v = j["base"].at("value").get<double>();
    for (long long n = lo; n <= hi; ++n) p.baseValues[n] = v;
  }
  if (p.baseValues.empty()) throw InputError("recurrence params: no base window given");
  return p;
}

}  // namespace evdeg
