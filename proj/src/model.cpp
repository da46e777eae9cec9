#include "lzbec/model.hpp"

#include <cmath>

namespace lzbec {

double diabatic_level(const ModelParams& params, int ell, double t) {
  const int n = params.n();
  if (ell < 0 || ell > n)
    throw std::out_of_range("diabatic_level: ell outside 0..N");
  const double l = ell;
  return params.alpha() * t * (2.0 * l - n) +
         0.5 * params.gbar() * (2.0 * l * l - 2.0 * l * n + double(n) * n - n);
}

TridiagonalHamiltonian build_manybody_hamiltonian(const ModelParams& params,
                                                  double epsilon) {
  const int n = params.n();
  TridiagonalHamiltonian h;
  h.diag.resize(n + 1);
  h.offdiag.resize(n);
  const double gbar = params.gbar();
  for (int l = 0; l <= n; ++l) {
    h.diag[l] = epsilon * (2.0 * l - n) +
                0.5 * gbar * (2.0 * l * l - 2.0 * l * n + double(n) * n - n);
  }
  for (int l = 0; l < n; ++l)
    h.offdiag[l] = params.v() * std::sqrt(double(l + 1) * (n - l));
  return h;
}

Eigen::MatrixXd build_spin_hamiltonian(const ModelParams& params) {
  const int n = params.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  // Jx diagonal: m_x = (N-2k)/2; Jz = (a1+ a2 + a2+ a1)/2 hops k <-> k+1.
  for (int k = 0; k <= n; ++k) {
    const double mx = 0.5 * (n - 2.0 * k);
    m(k, k) = params.g() / n * mx * mx;
  }
  for (int k = 0; k < n; ++k) {
    const double hop = params.v() * std::sqrt(double(k + 1) * (n - k));
    m(k, k + 1) = hop;
    m(k + 1, k) = hop;
  }
  return m;
}

Eigen::Vector2cd meanfield_rhs(const ModelParams& params, double t,
                               const MeanFieldState& state) {
  const double eps = params.alpha() * t;
  const double g = params.g();
  const double n1 = std::norm(state.psi1);
  const double n2 = std::norm(state.psi2);
  const std::complex<double> minus_i(0.0, -1.0);
  Eigen::Vector2cd d;
  d[0] = minus_i * ((eps + g * n1) * state.psi1 + params.v() * state.psi2);
  d[1] = minus_i * (params.v() * state.psi1 + (-eps + g * n2) * state.psi2);
  return d;
}

double meanfield_total_energy(const ModelParams& params, double t,
                              const MeanFieldState& state) {
  const double eps = params.alpha() * t;
  const double n1 = std::norm(state.psi1);
  const double n2 = std::norm(state.psi2);
  const double hop = 2.0 * std::real(std::conj(state.psi1) * state.psi2);
  return eps * (n1 - n2) + 0.5 * params.g() * (n1 * n1 + n2 * n2) +
         params.v() * hop;
}

}  // namespace lzbec
