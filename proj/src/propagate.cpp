#include "lzbec/propagate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <thread>

#include "lzbec/tridiag.hpp"

namespace lzbec {

namespace {

constexpr double kNormDriftLimit = 1e-6;

double window_scale(const ModelParams& p) {
  return std::max({2.0 * p.v(), std::fabs(p.g()), 1.0});
}

Eigen::VectorXd sample_times(const SweepWindow& w) {
  return Eigen::VectorXd::LinSpaced(w.sample_count, w.t_start, w.t_end);
}

// Trapezoid time average of a scalar observable over the window tail.
struct TailAverage {
  double t_begin;
  double acc = 0.0, span = 0.0, prev = 0.0, prev_t = 0.0;
  bool primed = false;

  explicit TailAverage(double begin) : t_begin(begin) {}
  void add(double t, double value) {
    if (t < t_begin) return;
    if (!primed) {
      primed = true;
      prev_t = t;
      prev = value;
      return;
    }
    acc += 0.5 * (value + prev) * (t - prev_t);
    span += t - prev_t;
    prev_t = t;
    prev = value;
  }
  double mean() const { return span > 0.0 ? acc / span : prev; }
};

void check_norm(double norm, double t) {
  if (std::fabs(norm - 1.0) > kNormDriftLimit)
    throw IntegrationError("norm drift " + std::to_string(norm - 1.0) +
                               " beyond 1e-6 at t = " + std::to_string(t),
                           t);
}

// Self-consistent ground state of the nonlinear two-mode Hamiltonian at
// fixed epsilon; converges in a few iterations at large |epsilon|.
MeanFieldState meanfield_ground_state(const ModelParams& params, double t) {
  const double eps = params.alpha() * t;
  const double g = params.g();
  const double v = params.v();
  double u1 = 1.0, u2 = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double h11 = eps + g * u1 * u1;
    const double h22 = -eps + g * u2 * u2;
    const double lam =
        0.5 * (h11 + h22) - std::hypot(0.5 * (h11 - h22), v);
    double w1 = v, w2 = lam - h11;
    if (w1 == 0.0 && w2 == 0.0) {
      w1 = 1.0;  // v = 0: diagonal Hamiltonian, ground stays in mode 1
      w2 = 0.0;
    }
    const double nn = std::hypot(w1, w2);
    double n1 = w1 / nn, n2 = w2 / nn;
    if (std::fabs(n1) < std::fabs(n2)) std::swap(n1, n2);  // mode-1 dominant
    const double delta = std::max(std::fabs(n1 - u1), std::fabs(n2 - u2));
    u1 = n1;
    u2 = n2;
    if (delta < 1e-15) break;
  }
  return {std::complex<double>(u1, 0.0), std::complex<double>(u2, 0.0)};
}

// theta_k(t) = integral of h_k from 0 to t; the interaction-picture phase.
double diabatic_phase(const ModelParams& p, int k, double t) {
  const int n = p.n();
  return (2.0 * k - n) * p.alpha() * t * t / 2.0 +
         0.5 * p.gbar() * (2.0 * double(k) * k - 2.0 * double(k) * n +
                           double(n) * n - n) * t;
}

}  // namespace

SweepWindow sweep_window(const ModelParams& params, double window_factor,
                         int sample_count) {
  const double t_edge = window_factor * window_scale(params) / params.alpha();
  return {-t_edge, t_edge, sample_count};
}

void validate_window(const ModelParams& params, const SweepWindow& window,
                     double window_factor) {
  if (!(window.t_start < 0.0 && 0.0 < window.t_end))
    throw std::invalid_argument("SweepWindow: needs t_start < 0 < t_end");
  if (window.sample_count < 2)
    throw std::invalid_argument("SweepWindow: needs at least two samples");
  const double need = window_factor * window_scale(params);
  if (params.alpha() * std::fabs(window.t_start) < need ||
      params.alpha() * std::fabs(window.t_end) < need)
    throw std::invalid_argument(
        "SweepWindow: |alpha*t| < window_factor*max(2v,|g|,1) at an edge");
}

SweepRecord integrate_meanfield(const ModelParams& params,
                                const SweepWindow& window,
                                const IntegratorConfig& config) {
  validate_window(params, window, 0.0);  // shape only; factor checked by caller
  const Eigen::VectorXd times = sample_times(window);

  MeanFieldState init;
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed)
    init = meanfield_ground_state(params, window.t_start);
  const double n1_start = std::norm(init.psi1);

  Eigen::VectorXcd y(2);
  y << init.psi1, init.psi2;

  SweepRecord rec;
  rec.times = times;
  rec.n1.resize(times.size());
  rec.norm.resize(times.size());

  auto rhs = [&params](double t, const Eigen::VectorXcd& s, Eigen::VectorXcd& d) {
    const double eps = params.alpha() * t;
    const double g = params.g();
    const std::complex<double> minus_i(0.0, -1.0);
    d[0] = minus_i * ((eps + g * std::norm(s[0])) * s[0] + params.v() * s[1]);
    d[1] = minus_i * (params.v() * s[0] + (-eps + g * std::norm(s[1])) * s[1]);
  };

  TailAverage tail(window.t_end -
                   config.tail_fraction * (window.t_end - window.t_start));
  ode::StepObserver on_step;
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed)
    on_step = [&tail](double t, const Eigen::VectorXcd& s) {
      tail.add(t, std::norm(s[0]));
    };

  ode::integrate(rhs, std::span(times.data(), size_t(times.size())), y, config,
                 on_step,
                 [&](int i, double t, const Eigen::VectorXcd& s) {
                   const double nrm = s.squaredNorm();
                   rec.n1[i] = std::norm(s[0]);
                   rec.norm[i] = nrm;
                   check_norm(nrm, t);
                 });

  rec.final_state = y;
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed)
    rec.p_lz = tail.mean() / n1_start;
  else
    rec.p_lz = std::norm(y[0]) / n1_start;
  return rec;
}

SweepRecord integrate_manybody(const ModelParams& params,
                               const SweepWindow& window,
                               const IntegratorConfig& config) {
  validate_window(params, window, 0.0);
  const int n = params.n();
  const Eigen::VectorXd times = sample_times(window);

  Eigen::VectorXd vl(n);
  for (int l = 0; l < n; ++l)
    vl[l] = params.v() * std::sqrt(double(l + 1) * (n - l));

  // Initial coefficients in the lab frame.
  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(n + 1);
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed) {
    c0 = tridiagonal_ground_state(
        build_manybody_hamiltonian(params, params.alpha() * window.t_start));
    if (c0[n] < 0.0) c0 = -c0;
  } else {
    c0[n] = 1.0;
  }
  double n1_start = 0.0;
  for (int k = 0; k <= n; ++k) n1_start += k * c0[k] * c0[k];

  // Interaction picture: a_k(t) = c_k(t) * exp(+i theta_k(t)).
  Eigen::VectorXcd y(n + 1);
  for (int k = 0; k <= n; ++k)
    y[k] = std::polar(c0[k], diabatic_phase(params, k, window.t_start));

  const double alpha = params.alpha();
  const double gbar = params.gbar();
  auto rhs = [&, n](double t, const Eigen::VectorXcd& a, Eigen::VectorXcd& d) {
    // phase differences theta_{k+1}-theta_k = alpha t^2 + gbar(2k+1-N)t
    // advance exp(i phi_k) by a constant twist per k
    const double base = alpha * t * t + gbar * (1.0 - n) * t;
    const std::complex<double> twist = std::polar(1.0, 2.0 * gbar * t);
    std::complex<double> u = std::polar(1.0, base);
    d.setZero();
    for (int k = 0; k < n; ++k) {
      d[k] += vl[k] * std::conj(u) * a[k + 1];
      d[k + 1] += vl[k] * u * a[k];
      u *= twist;
    }
    d *= std::complex<double>(0.0, -1.0);
  };

  SweepRecord rec;
  rec.times = times;
  rec.n1.resize(times.size());
  rec.norm.resize(times.size());

  TailAverage tail(window.t_end -
                   config.tail_fraction * (window.t_end - window.t_start));
  ode::StepObserver on_step;
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed)
    on_step = [&tail, n](double t, const Eigen::VectorXcd& a) {
      double n1 = 0.0;
      for (int k = 0; k <= n; ++k) n1 += k * std::norm(a[k]);
      tail.add(t, n1);
    };

  ode::integrate(rhs, std::span(times.data(), size_t(times.size())), y, config,
                 on_step,
                 [&](int i, double t, const Eigen::VectorXcd& a) {
                   double n1 = 0.0, nrm = 0.0;
                   for (int k = 0; k <= n; ++k) {
                     n1 += k * std::norm(a[k]);
                     nrm += std::norm(a[k]);
                   }
                   rec.n1[i] = n1;
                   rec.norm[i] = nrm;
                   check_norm(nrm, t);
                 });

  // back to the lab frame
  rec.final_state.resize(n + 1);
  for (int k = 0; k <= n; ++k)
    y[k] *= std::polar(1.0, -diabatic_phase(params, k, window.t_end));
  rec.final_state = y;

  double n1_end = 0.0;
  for (int k = 0; k <= n; ++k) n1_end += k * std::norm(y[k]);
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed)
    rec.p_lz = tail.mean() / n1_start;
  else
    rec.p_lz = n1_end / n1_start;
  return rec;
}

double expectation_n1(const ManyBodyState& state) {
  double n1 = 0.0;
  for (Eigen::Index k = 0; k < state.coeffs.size(); ++k)
    n1 += double(k) * std::norm(state.coeffs[k]);
  return n1;
}

namespace {

ModelParams params_for_point(const ModelParams& base, SweepAxis axis,
                             double value) {
  switch (axis) {
    case SweepAxis::Alpha:
      return ModelParams::with_g(base.v(), base.g(), base.n(), value);
    case SweepAxis::G:
      return ModelParams::with_g(base.v(), value, base.n(), base.alpha());
    case SweepAxis::V:
      return ModelParams::with_g(value, base.g(), base.n(), base.alpha());
    case SweepAxis::N: {
      const int n = int(std::lround(value));
      if (n < 1 || std::fabs(value - n) > 1e-9)
        throw std::invalid_argument("run_sweep_grid: N values must be integers >= 1");
      return ModelParams::with_g(base.v(), base.g(), n, base.alpha());
    }
  }
  throw std::logic_error("run_sweep_grid: unknown axis");
}

}  // namespace

std::vector<GridPoint> run_sweep_grid(const ModelParams& base, SweepAxis axis,
                                      const std::vector<double>& values,
                                      double window_factor, int sample_count,
                                      const IntegratorConfig& config, int jobs) {
  std::vector<GridPoint> out(values.size());
  if (values.empty()) return out;

  unsigned workers = jobs > 0 ? unsigned(jobs) : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, values.size());

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= values.size()) return;
      GridPoint& pt = out[i];
      pt.value = values[i];
      try {
        const ModelParams p = params_for_point(base, axis, values[i]);
        const SweepWindow w = sweep_window(p, window_factor, sample_count);
        pt.p_lz_meanfield = integrate_meanfield(p, w, config).p_lz;
        pt.p_lz_manybody = integrate_manybody(p, w, config).p_lz;
      } catch (const std::exception& e) {
        pt.error = e.what();
        pt.p_lz_meanfield = std::numeric_limits<double>::quiet_NaN();
        pt.p_lz_manybody = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace lzbec
