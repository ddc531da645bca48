#ifndef EVDEG_RECURRENCE_HPP
#define EVDEG_RECURRENCE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace evdeg {

// Parameters of the failure-probability recursion
//   fhat(n) = e^(-K n^(1/2-alpha)) + max_(n' in [n/4-cn, n/4+cn]) fhat(n')^2
// together with the induction target fhat(n) <= e^(-K0 n^(1/2-alpha)).
struct RecurrenceParams {
  double K = 1.0;
  double K0 = 0.0;  // 0 derives ln(1/eps) / M^(1/2-alpha) from the base window
  double alpha = 0.1;
  double c = 0.01;
  long long n0 = 0;                      // informational validity threshold
  std::map<long long, double> baseValues;  // must cover a contiguous window

  double zeta() const;  // 2 (1/4 - c)^(1/2-alpha) - 1
};

struct RecurrenceResult {
  bool applicable = false;
  std::string reason;  // set when inapplicable
  double k0 = 0.0;
  double zeta = 0.0;
  double epsilon = 0.0;  // max base value
  long long baseLo = 0, baseHi = 0;
  long long horizon = 0;
  std::vector<double> fhat;  // index 0 <-> n = baseLo
  bool boundHolds = false;
  long long firstViolation = 0;  // 0 when none

  double value(long long n) const { return fhat[size_t(n - baseLo)]; }
};

// Iterates the recursion over integers up to the horizon with the window
// [ceil is taken outward: floor(n(1/4-c)) .. ceil(n(1/4+c))] and checks the
// exponential bound with K0 from the construction: zeta > 0, a base window
// whose top M gives K0 = ln(1/eps)/M^(1/2-alpha) < K/2, and eps + eps^zeta < 1.
// zeta <= 0 is an input error; a base violating the construction is reported
// inapplicable, not thrown.
RecurrenceResult solve_recurrence(const RecurrenceParams& params, long long horizon);

RecurrenceParams recurrence_params_from_json(const std::string& text);

}  // namespace evdeg

#endif
