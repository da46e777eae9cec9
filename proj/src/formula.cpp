#include "lzbec/formula.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lzbec/quadrature.hpp"

namespace lzbec {

void ClosedFormInput::validate() const {
  if (!(alpha > 0.0))
    throw std::domain_error("ClosedFormInput: alpha must be > 0");
  if (!(g <= 0.0))
    throw std::domain_error("ClosedFormInput: attractive branch only (g <= 0)");
  if (!std::isfinite(v) || !std::isfinite(g))
    throw std::domain_error("ClosedFormInput: v and g must be finite");
  if (!(a > 0.0)) throw std::domain_error("ClosedFormInput: a must be > 0");
}

double plz_linear(double v, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("plz_linear: alpha must be > 0");
  return std::exp(-M_PI * v * v / alpha);
}

double plz_supercritical(const ClosedFormInput& in) {
  in.validate();
  if (!(std::fabs(in.g) > 2.0 * in.v))
    throw std::domain_error("plz_supercritical: requires |g| > 2v");
  const double omega = bogoliubov_frequency(in.v, in.g);
  const double xc = critical_index(in.v, in.g, in.a);
  const double u = M_PI * omega * omega / (2.0 * in.alpha);
  // e^u gamma(u+1, u) / u^{u+1} in the log domain; stays finite for any u.
  const double log_term =
      u - (u + 1.0) * std::log(u) + log_lower_incomplete_gamma(u + 1.0, u);
  return xc + (1.0 - xc) * std::exp(log_term);
}

namespace {

// sum_{n>=0} c1^n / [(c0+1)(c0+2)...(c0+1+n)], the entire-function form of
// e^{c1} gamma(c0+1, c1) / c1^{c0+1}; valid for c0 > -1 and moderate c1 >= 0.
double subcritical_series(double c0, double c1) {
  double term = 1.0 / (c0 + 1.0);
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= c1 / (c0 + 1.0 + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) return sum;
  }
  throw std::runtime_error("plz_subcritical: series did not converge");
}

// Same value for c1 < 0 as a positive-term sum
//   P = sum_n exp(c1 + n ln(-c1) - ln n!) / (c0 + 1 + n),
// free of the cancellation of the alternating form.
double subcritical_series_negative(double c0, double c1) {
  const double d = -c1;
  const double logd = std::log(d);
  double sum = 0.0;
  for (int n = 0; n < 1000000; ++n) {
    const double term =
        std::exp(c1 + n * logd - std::lgamma(n + 1.0)) / (c0 + 1.0 + n);
    sum += term;
    if (n > d && term < sum * 1e-16) return sum;
  }
  throw std::runtime_error("plz_subcritical: negative-c1 series did not converge");
}

}  // namespace

double plz_subcritical(const ClosedFormInput& in) {
  in.validate();
  if (!(in.v > 0.0) || std::fabs(in.g) > 2.0 * in.v)
    throw std::domain_error("plz_subcritical: requires |g| <= 2v, v > 0");
  const auto [w0, w1] = subcritical_splitting_coeffs(in.v, in.g);
  const double c0 = M_PI * (w0 * w0 + 2.0 * w0 * w1) / (2.0 * in.alpha);
  const double c1 = M_PI * w0 * w1 / in.alpha;
  if (c0 <= -1.0)
    throw std::domain_error(
        "plz_subcritical: c0 <= -1, the cascade integral diverges "
        "(linearized splitting is negative here)");
  if (c1 < 0.0) return subcritical_series_negative(c0, c1);
  if (c1 <= 30.0) return subcritical_series(c0, c1);
  return std::exp(c1 - (c0 + 1.0) * std::log(c1) +
                  log_lower_incomplete_gamma(c0 + 1.0, c1));
}

double plz_closed_form(const ClosedFormInput& in) {
  in.validate();
  if (std::fabs(in.g) > 2.0 * in.v) return plz_supercritical(in);
  return plz_subcritical(in);
}

SplittingProfile supercritical_profile(double v, double g, double a) {
  if (!(std::fabs(g) > 2.0 * v))
    throw std::domain_error("supercritical_profile: requires |g| > 2v");
  const double xc = critical_index(v, g, a);
  SplittingProfile prof;
  prof.w2 = [v, g, a](double x) { return w2_supercritical(v, g, x, a); };
  prof.breakpoints = {xc};
  return prof;
}

SplittingProfile subcritical_linearized_profile(double v, double g) {
  const auto [w0, w1] = subcritical_splitting_coeffs(v, g);
  SplittingProfile prof;
  prof.w2 = [w0, w1](double x) { return w0 * w0 + 2.0 * w0 * w1 * x; };
  return prof;
}

SplittingProfile subcritical_squared_profile(double v, double g) {
  const auto [w0, w1] = subcritical_splitting_coeffs(v, g);
  SplittingProfile prof;
  prof.w2 = [w0, w1](double x) {
    const double w = w0 + w1 * x;
    return w * w;
  };
  return prof;
}

SplittingProfile tabulated_profile(const std::vector<double>& x,
                                   const std::vector<double>& w2) {
  if (x.size() != w2.size() || x.size() < 2)
    throw std::invalid_argument("tabulated_profile: needs matching arrays, >= 2 points");
  if (!std::is_sorted(x.begin(), x.end()))
    throw std::invalid_argument("tabulated_profile: x must be sorted");
  SplittingProfile prof;
  prof.w2 = [x, w2](double xq) {
    if (xq <= x.front()) return std::max(0.0, w2.front());
    std::size_t hi = std::lower_bound(x.begin(), x.end(), xq) - x.begin();
    if (hi >= x.size()) hi = x.size() - 1;  // extrapolate the last segment
    const std::size_t lo = hi - 1;
    const double t = (xq - x[lo]) / (x[hi] - x[lo]);
    return std::max(0.0, w2[lo] + t * (w2[hi] - w2[lo]));
  };
  prof.breakpoints.assign(x.begin() + 1, x.end());
  return prof;
}

SplittingProfile tabulated_profile(const std::vector<CrossingData>& crossings) {
  std::vector<double> x, w2;
  x.reserve(crossings.size());
  w2.reserve(crossings.size());
  for (const auto& c : crossings) {
    x.push_back(c.x);
    w2.push_back(c.w * c.w);
  }
  return tabulated_profile(x, w2);
}

double plz_integral_form(const SplittingProfile& profile, double alpha,
                         double outer_tol) {
  if (!(alpha > 0.0))
    throw std::domain_error("plz_integral_form: alpha must be > 0");
  if (!profile.w2)
    throw std::invalid_argument("plz_integral_form: empty profile");

  auto inner = [&](double y) {
    if (y <= 0.0) return 0.0;
    return adaptive_quadrature_segmented(
        [&](double x) { return profile.w2(x) / (2.0 * alpha * (1.0 - x)); },
        0.0, y, profile.breakpoints, 1e-13, 1e-11);
  };
  auto integrand = [&](double y) {
    return std::exp(-M_PI * inner(std::min(y, 1.0 - 1e-13)));
  };
  return adaptive_quadrature_segmented(integrand, 0.0, 1.0,
                                       profile.breakpoints, outer_tol,
                                       outer_tol);
}

}  // namespace lzbec
