#include "lzbec/ode.hpp"

#include <algorithm>
#include <cmath>

namespace lzbec::ode {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr long kMaxSteps = 1L << 31;

Stats integrate_rk45(const Rhs& rhs, std::span<const double> samples,
                     Eigen::VectorXcd& y, const IntegratorConfig& cfg,
                     const StepObserver& on_step,
                     const SampleObserver& on_sample) {
  const Eigen::Index n = y.size();
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), yn(n);
  Stats st;

  double t = samples.front();
  const double t_end = samples.back();
  if (on_sample) on_sample(0, t, y);
  std::size_t next = 1;

  double h = std::min((t_end - t) * 1e-6, cfg.max_step);
  rhs(t, y, k1);  // stays valid across rejections; FSAL-refreshed on accept

  while (t < t_end) {
    while (next < samples.size() && samples[next] <= t) ++next;
    const double t_target = next < samples.size() ? samples[next] : t_end;

    bool clipped = false;
    double h_try = std::min(h, cfg.max_step);
    if (t + h_try >= t_target) {
      h_try = t_target - t;
      clipped = true;
    }
    if (h_try < 16.0 * std::numeric_limits<double>::epsilon() *
                    std::max(std::fabs(t), 1.0) &&
        !clipped)
      throw IntegrationError("step size underflow at t = " + std::to_string(t), t);
    if (st.accepted + st.rejected > kMaxSteps)
      throw IntegrationError("step count exceeded at t = " + std::to_string(t), t);

    yt = y + h_try * (a21 * k1);
    rhs(t + c2 * h_try, yt, k2);
    yt = y + h_try * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h_try, yt, k3);
    yt = y + h_try * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h_try, yt, k4);
    yt = y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h_try, yt, k5);
    yt = y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h_try, yt, k6);
    yn = y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h_try, yn, k7);

    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::complex<double> e =
          h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                   e6 * k6[i] + e7 * k7[i]);
      const double sc =
          cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(yn[i]));
      const double q = std::abs(e) / sc;
      err += q * q;
    }
    err = std::sqrt(err / double(n));

    if (err <= 1.0) {
      t += h_try;
      y.swap(yn);
      k1.swap(k7);  // FSAL
      ++st.accepted;
      if (on_step) on_step(t, y);
      while (next < samples.size() && t >= samples[next]) {
        if (on_sample) on_sample(int(next), samples[next], y);
        ++next;
      }
    } else {
      ++st.rejected;
    }

    double fac = 0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    h = h_try * fac;
  }
  return st;
}

Stats integrate_rk4(const Rhs& rhs, std::span<const double> samples,
                    Eigen::VectorXcd& y, const IntegratorConfig& cfg,
                    const StepObserver& on_step,
                    const SampleObserver& on_sample) {
  if (!std::isfinite(cfg.max_step) || cfg.max_step <= 0.0)
    throw std::invalid_argument("FixedRK4 requires a finite positive max_step");
  const Eigen::Index n = y.size();
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), yt(n);
  Stats st;

  double t = samples.front();
  const double t_end = samples.back();
  if (on_sample) on_sample(0, t, y);
  std::size_t next = 1;

  while (t < t_end) {
    const double t_target = next < samples.size() ? samples[next] : t_end;
    const double h = std::min(cfg.max_step, t_target - t);
    rhs(t, y, k1);
    yt = y + (0.5 * h) * k1;
    rhs(t + 0.5 * h, yt, k2);
    yt = y + (0.5 * h) * k2;
    rhs(t + 0.5 * h, yt, k3);
    yt = y + h * k3;
    rhs(t + h, yt, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    ++st.accepted;
    if (st.accepted > kMaxSteps)
      throw IntegrationError("step count exceeded at t = " + std::to_string(t), t);
    if (on_step) on_step(t, y);
    while (next < samples.size() && t >= samples[next]) {
      if (on_sample) on_sample(int(next), samples[next], y);
      ++next;
    }
  }
  return st;
}

}  // namespace

Stats integrate(const Rhs& rhs, std::span<const double> samples,
                Eigen::VectorXcd& y, const IntegratorConfig& config,
                const StepObserver& on_step, const SampleObserver& on_sample) {
  if (samples.size() < 2)
    throw std::invalid_argument("ode::integrate needs at least [t0, t1]");
  if (!(config.rel_tol > 0.0) || !(config.abs_tol > 0.0))
    throw std::invalid_argument("ode::integrate: tolerances must be > 0");
  if (config.method == StepperMethod::AdaptiveRK45)
    return integrate_rk45(rhs, samples, y, config, on_step, on_sample);
  return integrate_rk4(rhs, samples, y, config, on_step, on_sample);
}

}  // namespace lzbec::ode
