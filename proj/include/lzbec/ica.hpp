#pragma once

#include <vector>

#include <Eigen/Core>

#include "lzbec/model.hpp"
#include "lzbec/ode.hpp"
#include "lzbec/spectrum.hpp"

namespace lzbec {

/// Exponent convention of the single-crossing formula
/// p = exp(-kappa * pi * w^2 / |b|).  kappa = 1 reproduces the cascade and
/// closed forms with w = full adiabatic gap; kappa = 1/2 is the convention
/// of the exact two-level result with coupling = half gap.
struct GapConvention {
  double exponent_factor = 1.0;
};

double crossing_probability(double w, double b, GapConvention convention = {});

/// |S_{k,N}|^2 of the cascade: s[k] = (1-p_k) * prod_{l<k} p_l for k < N and
/// s[N] = prod_{l<N} p_l (the final crossing is a certain pass-through).
Eigen::VectorXd ica_smatrix_row(const std::vector<double>& p);

/// (1/N) sum_k k * s_row[k].
double plz_from_srow(const Eigen::VectorXd& s_row);

/// (1/N) sum_{k=0}^{N-1} prod_{l<=k} p_l -- algebraically equal to the
/// s_row moment above.
double plz_product_sum(const std::vector<double>& p);

enum class SplittingSource {
  ExactDiagonalization,
  SupercriticalApprox,
  SubcriticalApprox,
};

struct ICAOptions {
  GapConvention convention{};
  SplittingSource source = SplittingSource::ExactDiagonalization;
  double xc_fit_constant = 1.14;
  bool refine_minimum = false;
};

struct ICAResult {
  std::vector<CrossingData> crossings;  // ell = 0..N-1 in crossing-time order
  Eigen::VectorXd s_row;                // length N+1
  double p_lz = 0.0;
};

/// Full independent-crossings cascade for the initial level N.
ICAResult plz_ica(const ModelParams& params, const ICAOptions& opts = {});

/// Exact S-matrix of the two-level model [[b1 + beta1 t, v], [v, b2 + beta2 t]]:
/// amplitude p = exp(-pi v^2/|beta1-beta2|), q = sqrt(1-p^2); the diabatic
/// passage probability is p^2.
struct TwoLevelSMatrix {
  double p = 1.0;
  double q = 0.0;
  double diabatic_probability() const { return p * p; }
};
TwoLevelSMatrix two_level_smatrix(double beta1, double beta2, double b1,
                                  double b2, double v);

/// Counterexample where the coupling-based cascade fails: levels 2 and 3 of
/// [[alpha t + a, v, w], [v, 0, 0], [w, 0, -alpha t + a]] have no direct
/// coupling, so that cascade predicts |S32|^2 = 0, yet the numerical value
/// is finite for finite a.
struct ThreeLevelReport {
  double s33_numeric = 0.0;
  double s33_ica = 0.0;
  double s32_numeric = 0.0;
  double s32_ica = 0.0;  // coupling-based cascade value, identically zero
};
ThreeLevelReport three_level_demo(double alpha, double a, double v, double w,
                                  const IntegratorConfig& config = {},
                                  double window_factor = 40.0);

}  // namespace lzbec
