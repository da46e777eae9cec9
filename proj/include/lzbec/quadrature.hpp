#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace lzbec {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b]; panels split until the embedded
/// error estimate meets max(abs_tol, rel_tol*|I|) locally.  Throws
/// QuadratureError past the recursion cap.
double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-10, int max_depth = 60);

/// Same, split at interior breakpoints first (integrand kinks).
double adaptive_quadrature_segmented(const std::function<double(double)>& f,
                                     double a, double b,
                                     const std::vector<double>& breakpoints,
                                     double abs_tol = 1e-12,
                                     double rel_tol = 1e-10);

}  // namespace lzbec
