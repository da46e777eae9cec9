#include "lzbec/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace lzbec {

namespace {

// Kronrod-15 abscissae on [-1, 1] (odd-indexed entries are the Gauss-7 nodes).
constexpr double xk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double wg[7] = {0.129484966168870, 0.279705391489277,
                          0.381830050505119, 0.417959183673469,
                          0.381830050505119, 0.279705391489277,
                          0.129484966168870};

struct Panel {
  double integral;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double ik = 0.0, ig = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double fx = f(c + h * xk[i]);
    ik += wk[i] * fx;
    if (i % 2 == 1) ig += wg[i / 2] * fx;
  }
  return {ik * h, std::fabs((ik - ig) * h)};
}

double integrate_rec(const std::function<double(double)>& f, double a,
                     double b, double abs_tol, double rel_tol, int depth,
                     int max_depth) {
  const Panel p = gk15(f, a, b);
  const double target = std::max(abs_tol, rel_tol * std::fabs(p.integral));
  if (p.error <= target || b - a < 1e-15 * (std::fabs(a) + std::fabs(b)))
    return p.integral;
  if (depth >= max_depth)
    throw QuadratureError("adaptive_quadrature: did not converge on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
  const double m = 0.5 * (a + b);
  return integrate_rec(f, a, m, 0.5 * abs_tol, rel_tol, depth + 1, max_depth) +
         integrate_rec(f, m, b, 0.5 * abs_tol, rel_tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           int max_depth) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive_quadrature(f, b, a, abs_tol, rel_tol, max_depth);
  return integrate_rec(f, a, b, abs_tol, rel_tol, 0, max_depth);
}

double adaptive_quadrature_segmented(const std::function<double(double)>& f,
                                     double a, double b,
                                     const std::vector<double>& breakpoints,
                                     double abs_tol, double rel_tol) {
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_quadrature(f, cuts[i], cuts[i + 1],
                                 abs_tol / double(cuts.size()), rel_tol);
  return total;
}

}  // namespace lzbec
