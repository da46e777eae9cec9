#include "lzbec/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lzbec {

namespace {

double pythag(double a, double b) { return std::hypot(a, b); }

// Gershgorin bounds [lo, hi] containing the whole spectrum.
std::pair<double, double> spectral_bounds(const TridiagonalHamiltonian& h) {
  const Eigen::Index n = h.diag.size();
  double lo = h.diag[0], hi = h.diag[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::fabs(h.offdiag[i - 1]) : 0.0) +
                     (i + 1 < n ? std::fabs(h.offdiag[i]) : 0.0);
    lo = std::min(lo, h.diag[i] - r);
    hi = std::max(hi, h.diag[i] + r);
  }
  return {lo, hi};
}

}  // namespace

Eigen::VectorXd eigenvalues_tridiagonal(const TridiagonalHamiltonian& h) {
  const int n = int(h.diag.size());
  if (h.offdiag.size() != n - 1 && !(n == 1 && h.offdiag.size() == 0))
    throw std::invalid_argument("eigenvalues_tridiagonal: size mismatch");
  std::vector<double> d(h.diag.data(), h.diag.data() + n);
  std::vector<double> e(n, 0.0);
  for (int i = 0; i < n - 1; ++i) e[i] = h.offdiag[i];

  // Implicit-shift QL, eigenvalues only (tql1-style).
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
          break;
      }
      if (m != l) {
        if (iter++ == 50)
          throw EigensolverError(
              "eigenvalues_tridiagonal: QL failed to converge at index " +
              std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = pythag(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = pythag(f, g);
          e[i + 1] = r;
          if (r == 0.0) {  // rotation annihilated early; restart the sweep
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::sort(d.begin(), d.end());
  return Eigen::Map<Eigen::VectorXd>(d.data(), n);
}

int sturm_count_below(const TridiagonalHamiltonian& h, double x) {
  const Eigen::Index n = h.diag.size();
  int count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    q = h.diag[i] - x - (i > 0 ? h.offdiag[i - 1] * h.offdiag[i - 1] / q : 0.0);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiagonal_eigenvalue(const TridiagonalHamiltonian& h, int k) {
  const int n = int(h.diag.size());
  if (k < 0 || k >= n)
    throw std::out_of_range("tridiagonal_eigenvalue: index outside spectrum");
  auto [lo, hi] = spectral_bounds(h);
  // widen a hair so the count brackets hold at the extremes
  const double pad = 1e-12 * (std::fabs(lo) + std::fabs(hi)) +
                     std::numeric_limits<double>::min();
  lo -= pad;
  hi += pad;
  while (hi - lo > 2.0 * std::numeric_limits<double>::epsilon() *
                       (std::fabs(lo) + std::fabs(hi)) +
                   std::numeric_limits<double>::denorm_min()) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count_below(h, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd tridiagonal_ground_state(const TridiagonalHamiltonian& h) {
  const int n = int(h.diag.size());
  if (n == 1) return Eigen::VectorXd::Ones(1);
  const double e0 = tridiagonal_eigenvalue(h, 0);
  auto [lo, hi] = spectral_bounds(h);
  const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
  const double sigma = e0 - 1e-10 * scale;

  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  std::vector<double> c(n), z(n);
  for (int it = 0; it < 4; ++it) {
    // Thomas solve (T - sigma I) z = x; shift keeps the pivots nonzero.
    double piv = h.diag[0] - sigma;
    c[0] = n > 1 ? h.offdiag[0] / piv : 0.0;
    z[0] = x[0] / piv;
    for (int i = 1; i < n; ++i) {
      piv = h.diag[i] - sigma - h.offdiag[i - 1] * c[i - 1];
      c[i] = i < n - 1 ? h.offdiag[i] / piv : 0.0;
      z[i] = (x[i] - h.offdiag[i - 1] * z[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) z[i] -= c[i] * z[i + 1];
    double nrm = 0.0;
    for (double zi : z) nrm += zi * zi;
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) x[i] = z[i] / nrm;
  }
  return x;
}

}  // namespace lzbec
