#pragma once

#include <Eigen/Core>

namespace schro {

/// Real tridiagonal matrix. lower[i] couples row i+1 to column i,
/// upper[i] couples row i to column i+1.
struct Tridiagonal {
  Eigen::VectorXd lower;
  Eigen::VectorXd diag;
  Eigen::VectorXd upper;

  Eigen::Index size() const { return diag.size(); }
  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Solves T x = rhs by LU with partial pivoting. Stable enough to be used
/// with nearly singular shifts (inverse iteration).
Eigen::VectorXd tridiag_solve(const Tridiagonal& T, Eigen::VectorXd rhs);

/// Number of eigenvalues of the pencil T x = lambda diag(b) x strictly
/// below x, for b > 0 and lower[i]*upper[i] >= 0. Sturm/LDL^T sign count
/// on the shifted matrix T - x diag(b); the weight is never inverted, so
/// exponentially small weights (decaying ground-state tails) are safe.
/// A zero off-diagonal product splits the matrix transparently.
int pencil_count_below(const Tridiagonal& T, const Eigen::VectorXd& b,
                       double x);

/// k-th smallest eigenvalue of the pencil (k is 0-based) by bisection on
/// the Sturm count, with an expanding initial bracket.
double pencil_kth_eigenvalue(const Tridiagonal& T, const Eigen::VectorXd& b,
                             int k, double tol = 1e-10);

/// Eigenvector of the pencil for an eigenvalue estimate lambda, by inverse
/// iteration on the shifted matrix.
Eigen::VectorXd inverse_iteration(const Tridiagonal& T,
                                  const Eigen::VectorXd& b, double lambda,
                                  int iterations = 3);

}  // namespace schro
