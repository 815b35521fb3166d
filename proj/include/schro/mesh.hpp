#pragma once

#include <Eigen/Core>

#include "schro/tridiag.hpp"

namespace schro {

/// Uniform radial mesh on [0, R] for even/radial functions in dimension
/// N in {1,2,3}. Nodes are r_i = i*h with h = R/(n-1). Quadrature realizes
/// sphere_factor * int_0^R f(r) r^{N-1} dr by the trapezoid rule;
/// sphere_factor is 2 for N=1 (both half-lines of an even function),
/// 2*pi for N=2 and 4*pi for N=3.
class RadialGrid {
 public:
  RadialGrid(int dim, double radius, Eigen::Index nodes);

  int dim() const { return dim_; }
  double radius() const { return radius_; }
  Eigen::Index size() const { return n_; }
  double spacing() const { return h_; }
  double sphere_factor() const { return sphere_; }
  double node(Eigen::Index i) const { return nodes_[i]; }
  const Eigen::VectorXd& nodes() const { return nodes_; }

  /// Quadrature weights w_i with integrate(f) = sum_i w_i f_i.
  const Eigen::VectorXd& quad_weights() const { return weights_; }

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.radius_ == b.radius_;
  }

 private:
  int dim_;
  double radius_;
  Eigen::Index n_;
  double h_;
  double sphere_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
};

RadialGrid build_grid(int dim, double radius, Eigen::Index nodes);

/// One scalar radial function sampled on a RadialGrid. The value at r = R
/// is a decay surrogate and is pinned to zero by all solvers.
struct Profile {
  const RadialGrid* grid = nullptr;
  Eigen::VectorXd values;

  static Profile zero(const RadialGrid& g) {
    return Profile{&g, Eigen::VectorXd::Zero(g.size())};
  }

  template <class F>
  static Profile from_function(const RadialGrid& g, F&& f) {
    Profile p{&g, Eigen::VectorXd(g.size())};
    for (Eigen::Index i = 0; i < g.size(); ++i) p.values[i] = f(g.node(i));
    return p;
  }
};

/// Throws std::invalid_argument unless both profiles live on equal grids.
void require_same_grid(const Profile& u, const Profile& v);

/// Radial Laplacian f'' + (N-1)/r f' by second-order central differences.
/// The r=0 row uses the even-limit Delta f(0) = N f''(0); the output at
/// r = R is zero.
Profile laplacian_apply(const Profile& f);

/// d/dr by central differences, one-sided (second order) at both ends.
Profile derivative(const Profile& f);

/// sphere_factor * trapezoid of f(r) r^{N-1} over [0, R].
double integrate(const Profile& f);

/// L2(grid) pairing integrate(u * v) and norm.
double inner_l2(const Profile& u, const Profile& v);
double l2_norm(const Profile& u);

/// H1 inner product integrate(u' v' + u v) with difference-quotient
/// derivatives.
double inner_h1(const Profile& u, const Profile& v);
double h1_norm(const Profile& u);

/// sqrt(|u|_H1^2 + |v|_H1^2).
double pair_norm(const Profile& u, const Profile& v);

/// -Delta restricted to the active nodes 0..n-2 (the node at r = R is a
/// Dirichlet zero). Row 0 is the even-limit origin row. Every solver and
/// eigenproblem in the toolkit is assembled from this one matrix.
Tridiagonal neg_laplacian(const RadialGrid& g);

}  // namespace schro
