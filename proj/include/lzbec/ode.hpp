#pragma once

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>

#include <Eigen/Core>

namespace lzbec {

struct IntegrationError : std::runtime_error {
  double time = 0.0;
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what), time(t) {}
};

enum class StepperMethod { AdaptiveRK45, FixedRK4 };

/// Which realization of the t -> +-inf asymptotics the sweep uses.
///   AdiabaticDressed: start in the instantaneous ground state, extract the
///     transition probability as a time average over the window tail.
///   Bare: literal diabatic initial state and raw endpoint populations.
enum class AsymptoticHandling { AdiabaticDressed, Bare };

struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  /// Upper bound on the step; doubles as the step size of FixedRK4.
  double max_step = std::numeric_limits<double>::infinity();
  StepperMethod method = StepperMethod::AdaptiveRK45;
  AsymptoticHandling asymptotics = AsymptoticHandling::AdiabaticDressed;
  /// Fraction of the window over which the tail average is taken.
  double tail_fraction = 0.1;
};

namespace ode {

using Rhs = std::function<void(double, const Eigen::VectorXcd&, Eigen::VectorXcd&)>;
using StepObserver = std::function<void(double, const Eigen::VectorXcd&)>;
using SampleObserver = std::function<void(int, double, const Eigen::VectorXcd&)>;

struct Stats {
  long accepted = 0;
  long rejected = 0;
};

/// Integrates y' = rhs(t, y) through the sorted sample_times (first entry is
/// the initial time), firing on_sample at every sample point (including the
/// first) and on_step after every accepted step.  Dormand-Prince 5(4) with a
/// PI-free standard controller, or fixed-step classic RK4.
/// Throws IntegrationError on step-size underflow or step-count overflow.
Stats integrate(const Rhs& rhs, std::span<const double> sample_times,
                Eigen::VectorXcd& y, const IntegratorConfig& config,
                const StepObserver& on_step = {},
                const SampleObserver& on_sample = {});

}  // namespace ode
}  // namespace lzbec
