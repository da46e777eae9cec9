#pragma once

#include <Eigen/Core>

#include "lzbec/model.hpp"
#include "lzbec/tridiag.hpp"

namespace lzbec {

struct SpectrumSlice {
  double epsilon = 0.0;
  Eigen::VectorXd eigenvalues;  // ascending; strictly increasing for v != 0
};

/// Per-crossing data of the cascade of the initial level N against level ell.
struct CrossingData {
  int ell = 0;          // crossing index 0..N-1
  double x = 0.0;       // scaled index ell/N
  double t_cross = 0.0; // t_{ell,N} = -gbar*ell/(2*alpha)
  double b = 0.0;       // slope difference 2*alpha*(N-ell)
  double w = 0.0;       // adiabatic splitting at the crossing
  double p = 0.0;       // single-crossing diabatic probability
};

SpectrumSlice spectrum_slice(const ModelParams& params, double epsilon);

double crossing_time(const ModelParams& params, int ell);
double slope_difference(const ModelParams& params, int ell);

struct SplittingOptions {
  /// Golden-section refinement of the gap minimum over a bracket of width
  /// |gbar|/alpha around t_{ell,N} (off: evaluate exactly at t_{ell,N}).
  bool refine_minimum = false;
};

/// Adiabatic splitting w_{ell,N}: gap between the sorted eigenvalues ell and
/// ell+1 of H(eps(t_{ell,N})) -- at the crossing exactly ell diabatic levels
/// lie below the crossing pair, so that pair carries the anti-crossing.
double splitting_at_crossing(const ModelParams& params, int ell,
                             SplittingOptions opts = {});

/// Second-order perturbative level of 2v*Jz + (g/N)*Jx^2, m_z = -N/2..N/2.
/// Valid for |g| < 2v; callers outside that regime should consult
/// perturbative_in_range.
double spectrum_perturbative(const ModelParams& params, double m_z);
bool perturbative_in_range(const ModelParams& params);

/// omega = sqrt(4v^2 - 2vg); domain error when 4v^2 - 2vg < 0.
double bogoliubov_frequency(double v, double g);
double bogoliubov_frequency(const ModelParams& params);

/// x_c = max(0, 1 - a*sqrt(2v/|g|)); domain error for g = 0.
double critical_index(double v, double g, double a = 1.14);
double critical_index(const ModelParams& params, double a = 1.14);

/// omega^2 * (x-x_c)/(1-x_c) * H(x-x_c); requires |g| > 2v.
double w2_supercritical(double v, double g, double x, double a = 1.14);
double w2_supercritical(const ModelParams& params, double x, double a = 1.14);

/// Coefficients of the linearized subcritical splitting w(x) = w0 + w1*x.
struct SubcriticalCoeffs {
  double w0 = 0.0;
  double w1 = 0.0;
};
SubcriticalCoeffs subcritical_splitting_coeffs(double v, double g);

/// w(x) = w0 + w1*x; requires |g| <= 2v (boundary belongs to this branch).
double w_subcritical(double v, double g, double x);
double w_subcritical(const ModelParams& params, double x);

}  // namespace lzbec
