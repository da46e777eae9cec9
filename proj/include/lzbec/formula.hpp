#pragma once

#include <functional>
#include <vector>

#include "lzbec/spectrum.hpp"

namespace lzbec {

// ---- incomplete gamma ------------------------------------------------------

/// Lower incomplete gamma gamma(s, x) = int_0^x t^{s-1} e^{-t} dt.
/// Series for x < s+1, continued-fraction complement otherwise; relative
/// accuracy ~1e-13.  Overflows for large s (gamma grows like Gamma(s)) --
/// large-s callers use the log/regularized forms below.
double lower_incomplete_gamma(double s, double x);

/// Regularized P(s,x) = gamma(s,x)/Gamma(s) and Q(s,x) = 1 - P(s,x).
double regularized_gamma_p(double s, double x);
double regularized_gamma_q(double s, double x);

/// ln gamma(s, x); finite for any s where P(s,x) > 0.
double log_lower_incomplete_gamma(double s, double x);

namespace gamma_detail {
/// Raw single-route evaluations (exposed so the two independent algorithms
/// can be cross-checked against each other where both converge).
double p_series(double s, double x);
double q_contfrac(double s, double x);
}  // namespace gamma_detail

// ---- closed-form transition probabilities ----------------------------------

/// N-free inputs of the macroscopic-limit formulas (attractive branch).
struct ClosedFormInput {
  double v = 0.0;
  double g = 0.0;      // must be <= 0
  double alpha = 0.0;  // must be > 0
  double a = 1.14;     // critical-index fit constant

  void validate() const;
};

/// exp(-pi v^2 / alpha).
double plz_linear(double v, double alpha);

/// Supercritical (|g| > 2v) cascade limit
/// P = x_c + (1-x_c) e^u gamma(u+1, u)/u^{u+1}, u = pi omega^2 / (2 alpha),
/// evaluated in the log domain so large u cannot overflow.
double plz_supercritical(const ClosedFormInput& in);

/// Subcritical (|g| <= 2v) cascade limit
/// P = e^{c1} gamma(c0+1, c1)/c1^{c0+1} with c0 = pi(w0^2+2 w0 w1)/(2 alpha),
/// c1 = pi w0 w1/alpha.  Handles c1 <= 0 by series (the c1 -> 0 limit is
/// 1/(c0+1)); throws std::domain_error when c0 <= -1 (the underlying
/// integral diverges, which happens once w0 < 0 near the critical boundary).
double plz_subcritical(const ClosedFormInput& in);

/// Regime dispatch: |g| > 2v -> supercritical, otherwise subcritical
/// (the |g| = 2v boundary belongs to the subcritical branch).
double plz_closed_form(const ClosedFormInput& in);

// ---- integral form ---------------------------------------------------------

/// Splitting profile w^2(x) on [0, 1] plus its interior kinks.
struct SplittingProfile {
  std::function<double(double)> w2;
  std::vector<double> breakpoints;
};

SplittingProfile supercritical_profile(double v, double g, double a = 1.14);
/// Linearized w^2 ~ w0^2 + 2 w0 w1 x (the approximation behind the
/// subcritical closed form).
SplittingProfile subcritical_linearized_profile(double v, double g);
/// Full square (w0 + w1 x)^2.
SplittingProfile subcritical_squared_profile(double v, double g);
/// Piecewise-linear interpolation through (x_i, w2_i); extrapolates the last
/// segment to x = 1 and never goes below zero.
SplittingProfile tabulated_profile(const std::vector<double>& x,
                                   const std::vector<double>& w2);
/// Convenience: tabulated profile from computed crossing data.
SplittingProfile tabulated_profile(const std::vector<CrossingData>& crossings);

/// Continuum cascade P = int_0^1 exp[-pi int_0^y w^2(x)/bbar(x) dx] dy with
/// bbar(x) = 2 alpha (1-x), by nested adaptive quadrature.  The oracle that
/// bridges the discrete cascade and the closed forms.
double plz_integral_form(const SplittingProfile& profile, double alpha,
                         double outer_tol = 1e-8);

}  // namespace lzbec
