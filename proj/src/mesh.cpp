#include "schro/mesh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schro {

RadialGrid::RadialGrid(int dim, double radius, Eigen::Index nodes)
    : dim_(dim), radius_(radius), n_(nodes) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("RadialGrid: dim must be 1, 2 or 3");
  if (!(radius > 0.0))
    throw std::invalid_argument("RadialGrid: radius must be positive");
  if (nodes < 64)
    throw std::invalid_argument("RadialGrid: need at least 64 nodes");

  h_ = radius_ / static_cast<double>(n_ - 1);
  switch (dim_) {
    case 1: sphere_ = 2.0; break;
    case 2: sphere_ = 2.0 * std::numbers::pi; break;
    default: sphere_ = 4.0 * std::numbers::pi; break;
  }

  nodes_.resize(n_);
  for (Eigen::Index i = 0; i < n_; ++i) nodes_[i] = static_cast<double>(i) * h_;
  nodes_[n_ - 1] = radius_;

  weights_.resize(n_);
  for (Eigen::Index i = 0; i < n_; ++i) {
    double w = sphere_ * h_ * std::pow(nodes_[i], dim_ - 1);
    if (i == 0 || i == n_ - 1) w *= 0.5;
    weights_[i] = w;
  }
}

RadialGrid build_grid(int dim, double radius, Eigen::Index nodes) {
  return RadialGrid(dim, radius, nodes);
}

void require_same_grid(const Profile& u, const Profile& v) {
  if (u.grid == nullptr || v.grid == nullptr)
    throw std::invalid_argument("profile has no grid");
  if (u.grid != v.grid && !(*u.grid == *v.grid))
    throw std::invalid_argument("profiles live on different grids");
  if (u.values.size() != u.grid->size() || v.values.size() != v.grid->size())
    throw std::invalid_argument("profile length does not match its grid");
}

Profile laplacian_apply(const Profile& f) {
  const RadialGrid& g = *f.grid;
  const Eigen::Index n = g.size();
  if (f.values.size() != n)
    throw std::invalid_argument("profile length does not match its grid");
  const double h = g.spacing();
  const double h2 = h * h;
  const int N = g.dim();
  const auto& u = f.values;

  Profile out = Profile::zero(g);
  out.values[0] = N * 2.0 * (u[1] - u[0]) / h2;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double r = g.node(i);
    out.values[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2 +
                    (N - 1) / r * (u[i + 1] - u[i - 1]) / (2.0 * h);
  }
  out.values[n - 1] = 0.0;
  return out;
}

Profile derivative(const Profile& f) {
  const RadialGrid& g = *f.grid;
  const Eigen::Index n = g.size();
  const double h = g.spacing();
  const auto& u = f.values;

  Profile out = Profile::zero(g);
  out.values[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    out.values[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
  out.values[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return out;
}

double integrate(const Profile& f) {
  if (f.values.size() != f.grid->size())
    throw std::invalid_argument("profile length does not match its grid");
  return f.grid->quad_weights().dot(f.values);
}

double inner_l2(const Profile& u, const Profile& v) {
  require_same_grid(u, v);
  return u.grid->quad_weights().dot(
      (u.values.array() * v.values.array()).matrix());
}

double l2_norm(const Profile& u) { return std::sqrt(inner_l2(u, u)); }

double inner_h1(const Profile& u, const Profile& v) {
  require_same_grid(u, v);
  Profile du = derivative(u);
  Profile dv = derivative(v);
  return inner_l2(du, dv) + inner_l2(u, v);
}

double h1_norm(const Profile& u) { return std::sqrt(inner_h1(u, u)); }

double pair_norm(const Profile& u, const Profile& v) {
  return std::sqrt(inner_h1(u, u) + inner_h1(v, v));
}

Tridiagonal neg_laplacian(const RadialGrid& g) {
  const Eigen::Index m = g.size() - 1;  // active nodes 0..n-2
  const double h = g.spacing();
  const double h2 = h * h;
  const int N = g.dim();

  Tridiagonal T;
  T.diag.resize(m);
  T.lower.resize(m - 1);
  T.upper.resize(m - 1);

  T.diag[0] = 2.0 * N / h2;
  T.upper[0] = -2.0 * N / h2;
  for (Eigen::Index i = 1; i < m; ++i) {
    const double r = g.node(i);
    const double adv = (N - 1) / (2.0 * h * r);
    T.diag[i] = 2.0 / h2;
    T.lower[i - 1] = -1.0 / h2 + adv;
    if (i + 1 < m) T.upper[i] = -1.0 / h2 - adv;
  }
  return T;
}

}  // namespace schro
