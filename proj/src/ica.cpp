#include "lzbec/ica.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lzbec {

double crossing_probability(double w, double b, GapConvention convention) {
  if (b == 0.0)
    throw std::domain_error("crossing_probability: slope difference b = 0");
  if (w < 0.0)
    throw std::domain_error("crossing_probability: negative splitting");
  if (!(convention.exponent_factor > 0.0))
    throw std::domain_error("crossing_probability: kappa must be > 0");
  return std::exp(-convention.exponent_factor * M_PI * w * w / std::fabs(b));
}

Eigen::VectorXd ica_smatrix_row(const std::vector<double>& p) {
  const int n = int(p.size());
  Eigen::VectorXd s(n + 1);
  double running = 1.0;  // prod_{l<k} p_l
  for (int k = 0; k < n; ++k) {
    s[k] = (1.0 - p[k]) * running;
    running *= p[k];
  }
  s[n] = running;
  return s;
}

double plz_from_srow(const Eigen::VectorXd& s_row) {
  const int n = int(s_row.size()) - 1;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) acc += k * s_row[k];
  return acc / n;
}

double plz_product_sum(const std::vector<double>& p) {
  const int n = int(p.size());
  double running = 1.0, acc = 0.0;
  for (int k = 0; k < n; ++k) {
    running *= p[k];
    acc += running;
  }
  return acc / n;
}

ICAResult plz_ica(const ModelParams& params, const ICAOptions& opts) {
  const int n = params.n();
  const double gcrit = params.g_critical();
  if (opts.source == SplittingSource::SupercriticalApprox &&
      !(std::fabs(params.g()) > gcrit))
    throw std::domain_error("plz_ica: supercritical source needs |g| > 2v");
  if (opts.source == SplittingSource::SubcriticalApprox &&
      std::fabs(params.g()) > gcrit)
    throw std::domain_error("plz_ica: subcritical source needs |g| <= 2v");

  ICAResult res;
  res.crossings.resize(n);
  std::vector<double> p(n);
  for (int ell = 0; ell < n; ++ell) {
    CrossingData& c = res.crossings[ell];
    c.ell = ell;
    c.x = double(ell) / n;
    c.t_cross = crossing_time(params, ell);
    c.b = slope_difference(params, ell);
    switch (opts.source) {
      case SplittingSource::ExactDiagonalization:
        c.w = splitting_at_crossing(params, ell, {opts.refine_minimum});
        break;
      case SplittingSource::SupercriticalApprox:
        c.w = std::sqrt(
            w2_supercritical(params, c.x, opts.xc_fit_constant));
        break;
      case SplittingSource::SubcriticalApprox:
        c.w = std::fabs(w_subcritical(params, c.x));
        break;
    }
    c.p = crossing_probability(c.w, c.b, opts.convention);
    p[ell] = c.p;
  }
  res.s_row = ica_smatrix_row(p);
  res.p_lz = plz_product_sum(p);
  return res;
}

TwoLevelSMatrix two_level_smatrix(double beta1, double beta2, double /*b1*/,
                                  double /*b2*/, double v) {
  if (beta1 == beta2)
    throw std::domain_error("two_level_smatrix: equal slopes, no crossing");
  TwoLevelSMatrix s;
  s.p = std::exp(-M_PI * v * v / std::fabs(beta1 - beta2));
  s.q = std::sqrt(std::max(0.0, 1.0 - s.p * s.p));
  return s;
}

ThreeLevelReport three_level_demo(double alpha, double a, double v, double w,
                                  const IntegratorConfig& config,
                                  double window_factor) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("three_level_demo: alpha must be > 0");
  const double t_edge =
      window_factor * std::max({std::fabs(a), v, w, 1.0}) / alpha;

  // Initial state: adiabatic continuation of diabatic level 3 (the top
  // eigenvector at t_start); the bare basis vector in Bare mode.
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(3);
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed) {
    Eigen::Matrix3d h0;
    const double d1 = alpha * (-t_edge) + a, d3 = -alpha * (-t_edge) + a;
    h0 << d1, v, w, v, 0.0, 0.0, w, 0.0, d3;
    // power iteration on the shifted matrix isolates the top state
    const double shift = std::min({d1, 0.0, d3}) - 1.0;
    Eigen::Vector3d x(0.0, 0.0, 1.0);
    for (int it = 0; it < 300; ++it) {
      Eigen::Vector3d z = h0 * x - shift * x;
      x = z / z.norm();
    }
    if (x[2] < 0.0) x = -x;
    y = x.cast<std::complex<double>>();
  } else {
    y[2] = 1.0;
  }

  auto rhs = [alpha, a, v, w](double t, const Eigen::VectorXcd& s,
                              Eigen::VectorXcd& d) {
    const std::complex<double> minus_i(0.0, -1.0);
    d[0] = minus_i * ((alpha * t + a) * s[0] + v * s[1] + w * s[2]);
    d[1] = minus_i * (v * s[0]);
    d[2] = minus_i * (w * s[0] + (-alpha * t + a) * s[2]);
  };

  struct Avg {
    double begin, acc = 0, span = 0, prev = 0, prev_t = 0;
    bool primed = false;
    void add(double t, double val) {
      if (t < begin) return;
      if (!primed) { primed = true; prev_t = t; prev = val; return; }
      acc += 0.5 * (val + prev) * (t - prev_t);
      span += t - prev_t;
      prev_t = t; prev = val;
    }
    double mean() const { return span > 0 ? acc / span : prev; }
  };
  const double tail_begin = t_edge - config.tail_fraction * 2.0 * t_edge;
  Avg avg2{tail_begin}, avg3{tail_begin};

  const double samples[2] = {-t_edge, t_edge};
  ode::integrate(rhs, samples, y, config,
                 [&](double t, const Eigen::VectorXcd& s) {
                   avg2.add(t, std::norm(s[1]));
                   avg3.add(t, std::norm(s[2]));
                 });

  ThreeLevelReport rep;
  if (config.asymptotics == AsymptoticHandling::AdiabaticDressed) {
    rep.s33_numeric = avg3.mean();
    rep.s32_numeric = avg2.mean();
  } else {
    rep.s33_numeric = std::norm(y[2]);
    rep.s32_numeric = std::norm(y[1]);
  }
  // Level 3 crosses level 1 at t = 0 (slopes -alpha vs +alpha, coupling w)
  // and level 2 at t = a/alpha (coupling zero).
  rep.s33_ica = two_level_smatrix(-alpha, alpha, a, a, w).diabatic_probability();
  rep.s32_ica = 0.0;
  return rep;
}

}  // namespace lzbec
