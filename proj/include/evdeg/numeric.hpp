#ifndef EVDEG_NUMERIC_HPP
#define EVDEG_NUMERIC_HPP

#include <cstdint>
#include <utility>

namespace evdeg {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_pvalue(double stat, double dof);

// Regularized incomplete beta I_x(a,b).
double beta_inc(double a, double b, double x);

// Two-sided Clopper-Pearson interval for k successes out of n at confidence
// 1-alpha. Returned as (lo, hi).
std::pair<double, double> clopper_pearson(int64_t k, int64_t n, double alpha);

// Compensated (Kahan) accumulator.
struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace evdeg

#endif
