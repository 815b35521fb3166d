#include "schro/tridiag.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace schro {

Eigen::VectorXd Tridiagonal::apply(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::Index m = size();
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += lower[i - 1] * x[i - 1];
    if (i + 1 < m) s += upper[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

Eigen::VectorXd tridiag_solve(const Tridiagonal& T, Eigen::VectorXd rhs) {
  const Eigen::Index m = T.size();
  if (rhs.size() != m) throw std::invalid_argument("tridiag_solve: size mismatch");

  // Gaussian elimination with partial pivoting; fill-in is one extra
  // superdiagonal.
  Eigen::VectorXd a = T.lower;                    // row i+1, col i
  Eigen::VectorXd b = T.diag;                     // row i, col i
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m);   // row i, col i+1
  Eigen::VectorXd d = Eigen::VectorXd::Zero(m);   // row i, col i+2
  c.head(m - 1) = T.upper;

  const double tiny = std::numeric_limits<double>::min() * 4.0;
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    if (std::abs(b[i]) < std::abs(a[i])) {
      std::swap(b[i], a[i]);
      std::swap(c[i], b[i + 1]);
      if (i + 2 < m) std::swap(d[i], c[i + 1]);
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (std::abs(b[i]) < tiny) b[i] = (b[i] < 0.0 ? -tiny : tiny);
    const double l = a[i] / b[i];
    b[i + 1] -= l * c[i];
    if (i + 2 < m) c[i + 1] -= l * d[i];
    rhs[i + 1] -= l * rhs[i];
  }
  if (std::abs(b[m - 1]) < tiny) b[m - 1] = (b[m - 1] < 0.0 ? -tiny : tiny);

  Eigen::VectorXd x(m);
  x[m - 1] = rhs[m - 1] / b[m - 1];
  if (m > 1) x[m - 2] = (rhs[m - 2] - c[m - 2] * x[m - 1]) / b[m - 2];
  for (Eigen::Index i = m - 3; i >= 0; --i)
    x[i] = (rhs[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / b[i];
  return x;
}

int pencil_count_below(const Tridiagonal& T, const Eigen::VectorXd& b,
                       double x) {
  const Eigen::Index m = T.size();
  if (b.size() != m)
    throw std::invalid_argument("pencil_count_below: size mismatch");

  double prodmax = 1.0;
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    const double p = T.upper[i] * T.lower[i];
    if (p < 0.0)
      throw std::invalid_argument(
          "pencil_count_below: off-diagonal product is negative");
    prodmax = std::max(prodmax, p);
  }
  const double pivmin = std::numeric_limits<double>::min() * prodmax;

  int count = 0;
  double q = T.diag[0] - x * b[0];
  if (q < 0.0) ++count;
  for (Eigen::Index i = 1; i < m; ++i) {
    if (std::abs(q) < pivmin) q = (q < 0.0 ? -pivmin : pivmin);
    q = T.diag[i] - x * b[i] - T.upper[i - 1] * T.lower[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

double pencil_kth_eigenvalue(const Tridiagonal& T, const Eigen::VectorXd& b,
                             int k, double tol) {
  const Eigen::Index m = T.size();
  if (k < 0 || k >= m)
    throw std::invalid_argument("pencil_kth_eigenvalue: bad index");

  double lo = -1.0, hi = 1.0;
  while (pencil_count_below(T, b, hi) < k + 1) {
    hi *= 4.0;
    if (!std::isfinite(hi))
      throw std::runtime_error("pencil_kth_eigenvalue: no upper bound");
  }
  while (pencil_count_below(T, b, lo) > k) {
    lo *= 4.0;
    if (!std::isfinite(lo))
      throw std::runtime_error("pencil_kth_eigenvalue: no lower bound");
  }

  const double eps = std::numeric_limits<double>::epsilon();
  while (hi - lo > tol + 4.0 * eps * std::max(std::abs(lo), std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (pencil_count_below(T, b, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd inverse_iteration(const Tridiagonal& T,
                                  const Eigen::VectorXd& b, double lambda,
                                  int iterations) {
  const Eigen::Index m = T.size();
  Tridiagonal shifted = T;
  shifted.diag -= lambda * b;

  std::mt19937 rng(20240517u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd x(m);
  for (Eigen::Index i = 0; i < m; ++i) x[i] = unit(rng);
  x.normalize();

  for (int it = 0; it < iterations; ++it) {
    x = tridiag_solve(shifted, x);
    const double nrm = x.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
      throw std::runtime_error("inverse_iteration: breakdown");
    x /= nrm;
  }
  return x;
}

}  // namespace schro
