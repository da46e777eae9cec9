#include "lzbec/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace lzbec {

SpectrumSlice spectrum_slice(const ModelParams& params, double epsilon) {
  SpectrumSlice s;
  s.epsilon = epsilon;
  s.eigenvalues = eigenvalues_tridiagonal(build_manybody_hamiltonian(params, epsilon));
  return s;
}

double crossing_time(const ModelParams& params, int ell) {
  if (ell < 0 || ell >= params.n())
    throw std::out_of_range("crossing_time: ell outside 0..N-1");
  return -params.gbar() * ell / (2.0 * params.alpha());
}

double slope_difference(const ModelParams& params, int ell) {
  if (ell < 0 || ell >= params.n())
    throw std::out_of_range("slope_difference: ell outside 0..N-1");
  return 2.0 * params.alpha() * (params.n() - ell);
}

namespace {

double gap_at_time(const ModelParams& params, int ell, double t) {
  const auto h = build_manybody_hamiltonian(params, params.alpha() * t);
  const double lower = tridiagonal_eigenvalue(h, ell);
  const double upper = tridiagonal_eigenvalue(h, ell + 1);
  return upper - lower;
}

}  // namespace

double splitting_at_crossing(const ModelParams& params, int ell,
                             SplittingOptions opts) {
  if (ell < 0 || ell >= params.n())
    throw std::out_of_range("splitting_at_crossing: ell outside 0..N-1");
  const double tc = crossing_time(params, ell);
  if (!opts.refine_minimum) return gap_at_time(params, ell, tc);

  const double width = std::fabs(params.gbar()) / params.alpha();
  if (width == 0.0) return gap_at_time(params, ell, tc);
  double a = tc - 0.5 * width, b = tc + 0.5 * width;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = gap_at_time(params, ell, x1), f2 = gap_at_time(params, ell, x2);
  for (int it = 0; it < 60 && (b - a) > 1e-10 * (std::fabs(tc) + 1.0); ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = gap_at_time(params, ell, x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = gap_at_time(params, ell, x2);
    }
  }
  return std::min(f1, f2);
}

double spectrum_perturbative(const ModelParams& params, double m_z) {
  const double v = params.v();
  const double g = params.g();
  const double n = params.n();
  const double r = g / (2.0 * v);
  return 2.0 * v * m_z *
         (1.0 - r * m_z / (2.0 * n) - r * r * m_z * m_z / (4.0 * n * n));
}

bool perturbative_in_range(const ModelParams& params) {
  return std::fabs(params.g()) < 2.0 * std::fabs(params.v());
}

double bogoliubov_frequency(double v, double g) {
  const double w2 = 4.0 * v * v - 2.0 * v * g;
  if (w2 < 0.0)
    throw std::domain_error("bogoliubov_frequency: 4v^2 - 2vg < 0");
  return std::sqrt(w2);
}

double bogoliubov_frequency(const ModelParams& params) {
  return bogoliubov_frequency(params.v(), params.g());
}

double critical_index(double v, double g, double a) {
  if (g == 0.0) throw std::domain_error("critical_index: requires |g| > 0");
  const double raw = 1.0 - a * std::sqrt(2.0 * v / std::fabs(g));
  return raw > 0.0 ? raw : 0.0;
}

double critical_index(const ModelParams& params, double a) {
  return critical_index(params.v(), params.g(), a);
}

double w2_supercritical(double v, double g, double x, double a) {
  if (!(std::fabs(g) > 2.0 * v))
    throw std::domain_error("w2_supercritical: requires |g| > 2v");
  if (x < 0.0 || x > 1.0)
    throw std::out_of_range("w2_supercritical: x outside [0,1]");
  const double xc = critical_index(v, g, a);
  if (x <= xc) return 0.0;
  const double omega = bogoliubov_frequency(v, g);
  return omega * omega * (x - xc) / (1.0 - xc);
}

double w2_supercritical(const ModelParams& params, double x, double a) {
  return w2_supercritical(params.v(), params.g(), x, a);
}

SubcriticalCoeffs subcritical_splitting_coeffs(double v, double g) {
  SubcriticalCoeffs c;
  c.w0 = (16.0 * v * v + 4.0 * g - 3.0 * g * g / 4.0) / (8.0 * v);
  c.w1 = 3.0 * g * g / (8.0 * v) - g;
  return c;
}

double w_subcritical(double v, double g, double x) {
  if (v == 0.0 || std::fabs(g) > 2.0 * v)
    throw std::domain_error("w_subcritical: requires |g| <= 2v, v > 0");
  const auto c = subcritical_splitting_coeffs(v, g);
  return c.w0 + c.w1 * x;
}

double w_subcritical(const ModelParams& params, double x) {
  return w_subcritical(params.v(), params.g(), x);
}

}  // namespace lzbec
