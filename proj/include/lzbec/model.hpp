#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace lzbec {

/// Physical parameters of the two-mode model in scaled units (hbar = 1).
///
/// Stores the macroscopic nonlinearity g = gbar*N; the bare two-particle
/// interaction gbar is derived.  Construct with either with_g or with_gbar.
class ModelParams {
 public:
  static ModelParams with_g(double v, double g, int n, double alpha) {
    return ModelParams(v, g, n, alpha);
  }
  static ModelParams with_gbar(double v, double gbar, int n, double alpha) {
    return ModelParams(v, gbar * n, n, alpha);
  }

  double v() const { return v_; }
  double g() const { return g_; }
  double gbar() const { return g_ / n_; }
  int n() const { return n_; }
  double alpha() const { return alpha_; }

  /// Critical nonlinearity |g| > g_c = 2v of the attractive branch.
  double g_critical() const { return 2.0 * v_; }

 private:
  ModelParams(double v, double g, int n, double alpha)
      : v_(v), g_(g), n_(n), alpha_(alpha) {
    if (!(n >= 1)) throw std::invalid_argument("ModelParams: n must be >= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("ModelParams: alpha must be > 0");
    if (!std::isfinite(v) || !std::isfinite(g))
      throw std::invalid_argument("ModelParams: v and g must be finite");
  }

  double v_;
  double g_;
  int n_;
  double alpha_;
};

struct MeanFieldState {
  std::complex<double> psi1{1.0, 0.0};
  std::complex<double> psi2{0.0, 0.0};

  double norm_squared() const { return std::norm(psi1) + std::norm(psi2); }
};

struct ManyBodyState {
  /// coeffs[k] = <k|psi> with |k> = k particles in well 1; size N+1,
  /// so the all-in-well-1 state |N> is the last coefficient.
  Eigen::VectorXcd coeffs;

  double norm_squared() const { return coeffs.squaredNorm(); }
};

/// Symmetric tridiagonal matrix of the number-basis Hamiltonian:
/// diag[l] = h_l, offdiag[l] couples l and l+1.
struct TridiagonalHamiltonian {
  Eigen::VectorXd diag;     // size N+1
  Eigen::VectorXd offdiag;  // size N

  Eigen::Index size() const { return diag.size(); }
};

/// Diabatic level h_l(t) = alpha*t*(2l-N) + (gbar/2)(2l^2 - 2lN + N^2 - N).
double diabatic_level(const ModelParams& params, int ell, double t);

/// Number-basis matrix at fixed level bias epsilon.
TridiagonalHamiltonian build_manybody_hamiltonian(const ModelParams& params,
                                                  double epsilon);

/// Dense matrix of 2v*Jz + (g/N)*Jx^2 in the number basis, where Jx is
/// diagonal with m_x = (N-2k)/2 on |k>.  Differs from the epsilon = 0
/// many-body matrix by (gbar/4)(N^2-2N) times the identity.
Eigen::MatrixXd build_spin_hamiltonian(const ModelParams& params);

/// Right-hand side -i H(|psi1|^2,|psi2|^2,t) psi of the two-mode
/// Gross-Pitaevskii equation, epsilon = alpha*t.
Eigen::Vector2cd meanfield_rhs(const ModelParams& params, double t,
                               const MeanFieldState& state);

/// Total mean-field energy, Hermitian form (always real).
double meanfield_total_energy(const ModelParams& params, double t,
                              const MeanFieldState& state);

}  // namespace lzbec
