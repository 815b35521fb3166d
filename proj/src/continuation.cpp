#include "schro/continuation.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "schro/errors.hpp"
#include "schro/tridiag.hpp"

namespace schro {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::StepLimit: return "StepLimit";
    case Termination::LeftParameterWindow: return "LeftParameterWindow";
    case Termination::NewtonFailure: return "NewtonFailure";
    default: return "ReconnectedToTrivial";
  }
}

std::pair<Profile, Profile> system_residual(const Params& p, const Profile& u,
                                            const Profile& v, bool cutoff) {
  p.validate();
  require_same_grid(u, v);
  Profile ru = laplacian_apply(u);
  Profile rv = laplacian_apply(v);
  const auto uu = u.values.array();
  const auto vv = v.values.array();
  auto cube = [cutoff](const auto& x) -> Eigen::ArrayXd {
    if (cutoff) return x.max(0.0).cube();
    return x.cube();
  };
  ru.values = (-ru.values.array() + uu + p.kappa * vv - p.mu1 * cube(uu) -
               p.beta * uu * vv.square())
                  .matrix();
  rv.values = (-rv.values.array() + vv + p.kappa * uu - p.mu2 * cube(vv) -
               p.beta * vv * uu.square())
                  .matrix();
  return {std::move(ru), std::move(rv)};
}

double system_residual_norm(const Params& p, const Profile& u,
                            const Profile& v, bool cutoff) {
  auto [ru, rv] = system_residual(p, u, v, cutoff);
  return std::sqrt(inner_l2(ru, ru) + inner_l2(rv, rv));
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Jacobian of the (possibly cutoff) system on the active nodes, ordered
// [u_0..u_{m-1}, v_0..v_{m-1}].
void jacobian_triplets(const Params& p, const Tridiagonal& A,
                       const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                       bool cutoff, std::vector<Triplet>& trip) {
  const Eigen::Index m = A.size();
  auto sq_plus = [cutoff](double x) {
    if (cutoff) x = std::max(x, 0.0);
    return x * x;
  };
  for (Eigen::Index i = 0; i < m; ++i) {
    const double duu =
        A.diag[i] + 1.0 - 3.0 * p.mu1 * sq_plus(u[i]) - p.beta * v[i] * v[i];
    const double dvv =
        A.diag[i] + 1.0 - 3.0 * p.mu2 * sq_plus(v[i]) - p.beta * u[i] * u[i];
    const double cross = p.kappa - 2.0 * p.beta * u[i] * v[i];
    trip.emplace_back(i, i, duu);
    trip.emplace_back(m + i, m + i, dvv);
    trip.emplace_back(i, m + i, cross);
    trip.emplace_back(m + i, i, cross);
    if (i + 1 < m) {
      trip.emplace_back(i, i + 1, A.upper[i]);
      trip.emplace_back(i + 1, i, A.lower[i]);
      trip.emplace_back(m + i, m + i + 1, A.upper[i]);
      trip.emplace_back(m + i + 1, m + i, A.lower[i]);
    }
  }
}

Eigen::VectorXd active_residual(const Params& p, const Profile& u,
                                const Profile& v, bool cutoff) {
  auto [ru, rv] = system_residual(p, u, v, cutoff);
  const Eigen::Index m = u.grid->size() - 1;
  Eigen::VectorXd r(2 * m);
  r.head(m) = ru.values.head(m);
  r.tail(m) = rv.values.head(m);
  return r;
}

double weighted_norm(const RadialGrid& g, const Eigen::VectorXd& r) {
  const Eigen::Index m = g.size() - 1;
  const Eigen::VectorXd& w = g.quad_weights();
  double s = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    s += w[i] * (r[i] * r[i] + r[m + i] * r[m + i]);
  return std::sqrt(s);
}

bool strictly_positive(const Profile& u) {
  return u.values.head(u.grid->size() - 1).minCoeff() > 0.0;
}

}  // namespace

BranchPoint newton_solve(const Params& p, std::pair<Profile, Profile> init,
                         bool cutoff, double tol) {
  p.validate();
  require_same_grid(init.first, init.second);
  if (!(tol > 0.0) || tol > 1e-6)
    throw std::invalid_argument("newton_solve: tol must be in (0, 1e-6]");

  const RadialGrid& g = *init.first.grid;
  const Eigen::Index m = g.size() - 1;
  const Tridiagonal A = neg_laplacian(g);

  Profile u = std::move(init.first);
  Profile v = std::move(init.second);
  u.values[g.size() - 1] = 0.0;
  v.values[g.size() - 1] = 0.0;

  Eigen::VectorXd res = active_residual(p, u, v, cutoff);
  double rn = weighted_norm(g, res);
  std::vector<double> history{rn};

  std::vector<Triplet> trip;
  SpMat J(2 * m, 2 * m);
  Eigen::SparseLU<SpMat> lu;

  for (int it = 0; it < 50; ++it) {
    if (rn <= tol) break;
    trip.clear();
    jacobian_triplets(p, A, u.values.head(m), v.values.head(m), cutoff, trip);
    J.setFromTriplets(trip.begin(), trip.end());
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw SingularJacobianError("newton_solve: Jacobian factorization failed",
                                  std::numeric_limits<double>::infinity());
    Eigen::VectorXd delta = lu.solve(res);
    const double dn = delta.norm();
    if (!std::isfinite(dn))
      throw SingularJacobianError("newton_solve: singular Jacobian", dn / rn);

    double t = 1.0;
    bool moved = false;
    for (int half = 0; half < 30; ++half) {
      Profile tu = u, tv = v;
      tu.values.head(m) -= t * delta.head(m);
      tv.values.head(m) -= t * delta.tail(m);
      Eigen::VectorXd tres = active_residual(p, tu, tv, cutoff);
      const double trn = weighted_norm(g, tres);
      if (trn < (1.0 - 1e-4 * t) * rn || trn <= tol) {
        u = std::move(tu);
        v = std::move(tv);
        res = std::move(tres);
        rn = trn;
        history.push_back(rn);
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved)
      throw NewtonFailureError("newton_solve: damped step made no progress");
  }
  if (rn > tol)
    throw NewtonFailureError("newton_solve: no convergence in 50 damped steps");

  BranchPoint out;
  out.kappa = p.kappa;
  out.residual = rn;
  out.newton_steps = static_cast<int>(history.size()) - 1;
  Profile diff = u;
  diff.values -= v.values;
  out.asymmetry = l2_norm(diff);
  out.positive = strictly_positive(u) && strictly_positive(v);
  // Quadratic tail: r_k <= 10 * r_{k-1}^2 / r_ref with r_ref the scale of
  // the first step, checked on the last two contractions.
  if (history.size() >= 3) {
    const double a = history[history.size() - 3];
    const double b = history[history.size() - 2];
    const double c = history.back();
    out.quadratic_tail = (c <= 10.0 * b * b / std::max(a, 1e-300)) || c <= tol;
  }
  out.pair = {std::move(u), std::move(v)};
  return out;
}

std::pair<Profile, Profile> branch_switch(const BifurcationPoint& bp,
                                          double eps) {
  const double scale =
      0.1 * pair_norm(bp.pair.first, bp.pair.second);
  if (std::abs(eps) > scale)
    throw std::invalid_argument("branch_switch: |eps| exceeds 0.1 |pair|");
  Profile u = bp.pair.first;
  Profile v = bp.pair.second;
  u.values += eps * bp.kernel_phi.values;
  v.values -= eps * bp.kernel_phi.values;
  return {std::move(u), std::move(v)};
}

BranchSegment continue_branch(const BranchPoint& seg_start,
                              const BifurcationPoint& origin, const Params& p,
                              double step, int max_points, bool cutoff) {
  p.validate();
  if (!(step > 1e-4) || step > 0.1)
    throw std::invalid_argument("continue_branch: step must be in (1e-4, 0.1]");
  if (max_points < 1)
    throw std::invalid_argument("continue_branch: max_points must be positive");

  const RadialGrid& g = *seg_start.pair.first.grid;
  const Eigen::Index m = g.size() - 1;
  const Tridiagonal A = neg_laplacian(g);
  const Eigen::VectorXd& w = g.quad_weights();

  const double kappa_floor = -1.0 + 1e-3;
  const double kappa_ceil = 2.5;

  // Extended state X = (kappa, u_act, v_act) with the L2 metric on profiles.
  auto pack = [&](double kappa, const Profile& u, const Profile& v) {
    Eigen::VectorXd x(1 + 2 * m);
    x[0] = kappa;
    x.segment(1, m) = u.values.head(m);
    x.segment(1 + m, m) = v.values.head(m);
    return x;
  };
  auto metric_dot = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double s = a[0] * b[0];
    for (Eigen::Index i = 0; i < m; ++i)
      s += w[i] * (a[1 + i] * b[1 + i] + a[1 + m + i] * b[1 + m + i]);
    return s;
  };
  auto unpack = [&](const Eigen::VectorXd& x, Profile& u, Profile& v) {
    u.values.head(m) = x.segment(1, m);
    u.values[g.size() - 1] = 0.0;
    v.values.head(m) = x.segment(1 + m, m);
    v.values[g.size() - 1] = 0.0;
  };

  BranchSegment seg;
  seg.beta = p.beta;
  seg.origin = origin;
  seg.points.push_back(seg_start);
  seg.points.back().arclength = 0.0;
  seg.termination = Termination::StepLimit;

  Eigen::VectorXd x_prev =
      pack(seg_start.kappa, seg_start.pair.first, seg_start.pair.second);
  Eigen::VectorXd x_origin =
      pack(origin.kappa_j, origin.pair.first, origin.pair.second);
  Eigen::VectorXd tangent = x_prev - x_origin;
  {
    const double tn = std::sqrt(metric_dot(tangent, tangent));
    if (!(tn > 0.0))
      throw std::invalid_argument("continue_branch: start coincides with origin");
    tangent /= tn;
  }

  double s = step;
  int easy = 0;
  double arclength = 0.0;
  Profile u = seg_start.pair.first;
  Profile v = seg_start.pair.second;
  Params q = p;

  std::vector<Triplet> trip;
  SpMat J(2 * m + 1, 2 * m + 1);
  Eigen::SparseLU<SpMat> lu;

  while (static_cast<int>(seg.points.size()) < max_points) {
    const Eigen::VectorXd x_pred = x_prev + s * tangent;
    Eigen::VectorXd x = x_pred;
    unpack(x, u, v);
    q.kappa = x[0];

    bool ok = false;
    int iters = 0;
    for (; iters < 12; ++iters) {
      Eigen::VectorXd res = active_residual(q, u, v, cutoff);
      const double rn = weighted_norm(g, res);
      const double cn = metric_dot(tangent, x - x_pred);
      const double scale = 1.0 + std::sqrt(metric_dot(x, x));
      if (rn <= 1e-10 * scale && std::abs(cn) <= 1e-12 * scale) {
        ok = true;
        break;
      }
      trip.clear();
      jacobian_triplets(q, A, u.values.head(m), v.values.head(m), cutoff, trip);
      // shift block indices by one column/row; add parameter column and
      // the arclength constraint row
      for (auto& t : trip)
        t = Triplet(t.row(), t.col() + 1, t.value());
      for (Eigen::Index i = 0; i < m; ++i) {
        trip.emplace_back(i, 0, v.values[i]);
        trip.emplace_back(m + i, 0, u.values[i]);
      }
      // constraint gradient in the weighted metric
      trip.emplace_back(2 * m, 0, tangent[0]);
      for (Eigen::Index i = 0; i < m; ++i) {
        trip.emplace_back(2 * m, 1 + i, w[i] * tangent[1 + i]);
        trip.emplace_back(2 * m, 1 + m + i, w[i] * tangent[1 + m + i]);
      }
      J.setFromTriplets(trip.begin(), trip.end());
      lu.compute(J);
      if (lu.info() != Eigen::Success) break;

      Eigen::VectorXd rhs(2 * m + 1);
      rhs.head(2 * m) = res;
      rhs[2 * m] = cn;
      Eigen::VectorXd delta = lu.solve(rhs);
      if (!delta.allFinite()) break;
      x -= delta;
      unpack(x, u, v);
      q.kappa = x[0];
    }

    if (!ok) {
      s *= 0.5;
      easy = 0;
      if (s < step / 4096.0) {
        seg.termination = Termination::NewtonFailure;
        break;
      }
      continue;
    }

    Eigen::VectorXd dx = x - x_prev;
    const double ds = std::sqrt(metric_dot(dx, dx));
    arclength += ds;

    BranchPoint bp;
    bp.kappa = x[0];
    bp.pair = {u, v};
    bp.residual = system_residual_norm(q, u, v, cutoff);
    Profile diff = u;
    diff.values -= v.values;
    bp.asymmetry = l2_norm(diff);
    bp.positive = strictly_positive(u) && strictly_positive(v);
    bp.arclength = arclength;
    seg.points.push_back(std::move(bp));

    tangent = dx / ds;
    x_prev = x;

    if (x[0] <= kappa_floor || x[0] >= kappa_ceil) {
      seg.termination = Termination::LeftParameterWindow;
      break;
    }
    if (seg.points.back().asymmetry <
            1e-7 * (1.0 + pair_norm(u, v)) &&
        seg.points.size() > 3) {
      seg.termination = Termination::ReconnectedToTrivial;
      break;
    }
    if (iters <= 3) {
      if (++easy >= 3) {
        s = std::min(s * 2.0, 0.1);
        easy = 0;
      }
    } else {
      easy = 0;
    }
  }
  return seg;
}

bool verify_cutoff_equivalence(const Params& p, const BranchPoint& bp) {
  const double rn =
      system_residual_norm(p, bp.pair.first, bp.pair.second, false);
  return rn <= 1e-6 * (1.0 + pair_norm(bp.pair.first, bp.pair.second));
}

}  // namespace schro
