#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lzbec/model.hpp"
#include "lzbec/ode.hpp"

namespace lzbec {

struct SweepWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  int sample_count = 401;
};

/// Symmetric window with |alpha*t| = window_factor * max(2v, |g|, 1) at both
/// ends, the documented "energetically well separated" condition.
SweepWindow sweep_window(const ModelParams& params, double window_factor = 40.0,
                         int sample_count = 401);

/// Throws std::invalid_argument unless the window satisfies the separation
/// invariant at the given factor.
void validate_window(const ModelParams& params, const SweepWindow& window,
                     double window_factor = 40.0);

struct SweepRecord {
  Eigen::VectorXd times;
  /// Mean-field: |psi1|^2 population fraction; many-body: <n1> in [0, N].
  Eigen::VectorXd n1;
  Eigen::VectorXd norm;
  Eigen::VectorXcd final_state;
  double p_lz = 0.0;
};

/// Sweeps the Gross-Pitaevskii pair across the window; all population starts
/// in mode 1.  p_lz = |psi1(t_end)|^2 / |psi1(t_start)|^2 per the defining
/// ratio, realized at finite time per config.asymptotics.
SweepRecord integrate_meanfield(const ModelParams& params,
                                const SweepWindow& window,
                                const IntegratorConfig& config = {});

/// Sweeps the number-basis coefficient vector, starting from all N particles
/// in well 1; p_lz = <n1(t_end)> / <n1(t_start)>.  Internally propagates in
/// the diabatic interaction picture (exact gauge; populations unchanged);
/// final_state is returned in the lab frame.
SweepRecord integrate_manybody(const ModelParams& params,
                               const SweepWindow& window,
                               const IntegratorConfig& config = {});

double expectation_n1(const ManyBodyState& state);

enum class SweepAxis { Alpha, G, V, N };

struct GridPoint {
  double value = 0.0;
  double p_lz_meanfield = 0.0;
  double p_lz_manybody = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

/// Runs both propagators over one swept parameter.  Points are independent
/// and run on up to `jobs` threads (0 = hardware concurrency); output order
/// follows the input order regardless of completion order.  Windows are
/// rebuilt per point so the separation invariant holds on every run.
std::vector<GridPoint> run_sweep_grid(const ModelParams& base, SweepAxis axis,
                                      const std::vector<double>& values,
                                      double window_factor = 40.0,
                                      int sample_count = 401,
                                      const IntegratorConfig& config = {},
                                      int jobs = 0);

}  // namespace lzbec
