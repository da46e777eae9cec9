#include <cmath>
#include <limits>
#include <stdexcept>

#include "lzbec/formula.hpp"

namespace lzbec {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 2'000'000;

void check_domain(double s, double x) {
  if (!(s > 0.0)) throw std::domain_error("incomplete gamma: s must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("incomplete gamma: x must be >= 0");
}

}  // namespace

namespace gamma_detail {

// P(s,x) by the ascending series
//   gamma(s,x) = x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n)).
// Converges for all x >= 0; the term count scales like max(0, x-s) + O(sqrt x).
double p_series(double s, double x) {
  if (x == 0.0) return 0.0;
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps)
      return sum * std::exp(s * std::log(x) - x - std::lgamma(s));
  }
  throw std::runtime_error("incomplete gamma: series did not converge");
}

// Q(s,x) by the Lentz continued fraction
//   Gamma(s,x) = e^{-x} x^s / (x+1-s- 1(1-s)/(x+3-s- 2(2-s)/(x+5-s- ...))).
// Reliable for x >= s+1.
double q_contfrac(double s, double x) {
  const double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -double(i) * (double(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps)
      return h * std::exp(s * std::log(x) - x - std::lgamma(s));
  }
  throw std::runtime_error("incomplete gamma: continued fraction did not converge");
}

}  // namespace gamma_detail

double regularized_gamma_p(double s, double x) {
  check_domain(s, x);
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return gamma_detail::p_series(s, x);
  return 1.0 - gamma_detail::q_contfrac(s, x);
}

double regularized_gamma_q(double s, double x) {
  check_domain(s, x);
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - gamma_detail::p_series(s, x);
  return gamma_detail::q_contfrac(s, x);
}

double lower_incomplete_gamma(double s, double x) {
  return regularized_gamma_p(s, x) * std::tgamma(s);
}

double log_lower_incomplete_gamma(double s, double x) {
  check_domain(s, x);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  // series route in log form avoids the underflow of tiny P at x << s
  if (x < s + 1.0) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
      term *= x / (s + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * kEps)
        return s * std::log(x) - x + std::log(sum);
    }
    throw std::runtime_error("incomplete gamma: series did not converge");
  }
  const double q = gamma_detail::q_contfrac(s, x);
  return std::log1p(-q) + std::lgamma(s);
}

}  // namespace lzbec
