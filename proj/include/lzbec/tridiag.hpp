#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "lzbec/model.hpp"

namespace lzbec {

struct EigensolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
/// Implicit-shift QL without eigenvectors, O(n^2); throws EigensolverError
/// if any eigenvalue fails to converge within the iteration cap.
Eigen::VectorXd eigenvalues_tridiagonal(const TridiagonalHamiltonian& h);

/// Number of eigenvalues strictly below x (Sturm / LDL^T sign count).
int sturm_count_below(const TridiagonalHamiltonian& h, double x);

/// k-th eigenvalue (ascending, 0-based) by bisection on the Sturm count.
double tridiagonal_eigenvalue(const TridiagonalHamiltonian& h, int k);

/// Normalized eigenvector of the smallest eigenvalue (inverse iteration).
/// Internal plumbing for adiabatic state preparation.
Eigen::VectorXd tridiagonal_ground_state(const TridiagonalHamiltonian& h);

}  // namespace lzbec
