#include "schro/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "schro/errors.hpp"

namespace schro {
namespace {

enum class Shot { Undershoot, Overshoot };

struct ShootResult {
  Shot kind;
  std::vector<double> at_nodes;  // trajectory sampled at grid nodes, 0-filled past a stop
};

// w'' = -(N-1)/r w' + w - w^3, started one step from the origin with the
// even expansion w(r) = a + c2 r^2 + c4 r^4.
ShootResult shoot(double a, const RadialGrid& g, double h_ode, int per_node,
                  bool record) {
  const int N = g.dim();
  const double c2 = (a - a * a * a) / (2.0 * N);
  const double c4 = c2 * (1.0 - 3.0 * a * a) / (4.0 * N + 8.0);

  auto rhs = [N](double r, double w, double p, double& dw, double& dp) {
    dw = p;
    dp = w - w * w * w - (N - 1) / r * p;
  };

  ShootResult out;
  if (record) out.at_nodes.assign(g.size(), 0.0);
  if (record) out.at_nodes[0] = a;

  double r = h_ode;
  double w = a + c2 * r * r + c4 * r * r * r * r;
  double p = 2.0 * c2 * r + 4.0 * c4 * r * r * r;
  long step = 1;
  const long total = (g.size() - 1) * per_node;
  if (record && per_node == 1) out.at_nodes[1] = w;

  out.kind = Shot::Undershoot;
  while (step < total) {
    double k1w, k1p, k2w, k2p, k3w, k3p, k4w, k4p;
    rhs(r, w, p, k1w, k1p);
    rhs(r + 0.5 * h_ode, w + 0.5 * h_ode * k1w, p + 0.5 * h_ode * k1p, k2w, k2p);
    rhs(r + 0.5 * h_ode, w + 0.5 * h_ode * k2w, p + 0.5 * h_ode * k2p, k3w, k3p);
    rhs(r + h_ode, w + h_ode * k3w, p + h_ode * k3p, k4w, k4p);
    w += h_ode / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    p += h_ode / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    r += h_ode;
    ++step;

    if (!std::isfinite(w) || !std::isfinite(p)) break;
    if (w < 0.0) {
      out.kind = Shot::Overshoot;
      break;
    }
    if (p > 0.0) {
      out.kind = Shot::Undershoot;
      break;
    }
    if (record && step % per_node == 0) out.at_nodes[step / per_node] = w;
  }
  return out;
}

// Replaces a truncated or clipped tail by the linear-regime decay
// w(r) ~ w(r0) exp(-rate (r - r0)), keeping the seed strictly positive so
// Newton converges to the strictly positive discrete solution.
void extend_tail(const RadialGrid& g, Eigen::VectorXd& w, double rate) {
  Eigen::Index last = -1;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] > 0.0) last = i;
  if (last < 0)
    throw NumericalError("extend_tail: seed has no positive values");
  for (Eigen::Index i = last + 1; i < w.size(); ++i)
    w[i] = w[last] * std::exp(-rate * (g.node(i) - g.node(last)));
}

Eigen::VectorXd newton_refine(const RadialGrid& g, Eigen::VectorXd w,
                              double sigma, double tol, const char* what) {
  const Eigen::Index m = g.size() - 1;
  const Tridiagonal A = neg_laplacian(g);
  const Eigen::VectorXd& quad = g.quad_weights();

  auto residual = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r = A.apply(x) + sigma * (x - x.array().cube().matrix());
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) s += quad[i] * r[i] * r[i];
    return std::pair(r, std::sqrt(s));
  };

  // Roundoff floor of the residual evaluation; the operator scale is 1/h^2.
  const double floor_est = 1e4 * std::numeric_limits<double>::epsilon() /
                           (g.spacing() * g.spacing());

  auto [res, rn] = residual(w);
  for (int it = 0; it < 50; ++it) {
    if (rn <= tol) return w;
    Tridiagonal J = A;
    J.diag += sigma * (1.0 - 3.0 * w.array().square()).matrix();
    Eigen::VectorXd delta = tridiag_solve(J, res);

    double t = 1.0;
    for (int half = 0; half < 25; ++half) {
      Eigen::VectorXd trial = w - t * delta;
      auto [tres, trn] = residual(trial);
      if (trn < rn || trn <= tol) {
        w = std::move(trial);
        res = std::move(tres);
        rn = trn;
        break;
      }
      t *= 0.5;
      if (half == 24) {
        if (rn <= std::max(tol, floor_est)) return w;
        std::ostringstream msg;
        msg << what << ": Newton stalled at residual " << rn;
        throw NumericalError(msg.str());
      }
    }
  }
  if (rn > tol) {
    std::ostringstream msg;
    msg << what << ": Newton did not reach tol " << tol << " in 50 iterations"
        << " (residual " << rn << ")";
    throw NumericalError(msg.str());
  }
  return w;
}

}  // namespace

GroundState solve_ground_state(const RadialGrid& grid, double tol) {
  if (!(tol > 0.0) || tol > 1e-4)
    throw std::invalid_argument("solve_ground_state: tol must be in (0, 1e-4]");

  // ODE substep: at most 2e-3 and aligned with the grid spacing.
  const int per_node =
      std::max(1, static_cast<int>(std::ceil(grid.spacing() / 2e-3)));
  const double h_ode = grid.spacing() / per_node;

  // Bracket the amplitude on the undershoot/overshoot dichotomy.
  double lo = 0.0, hi = 0.0;
  double prev = 1.0 + 1e-3;
  Shot prev_kind = shoot(prev, grid, h_ode, per_node, false).kind;
  if (prev_kind == Shot::Overshoot)
    throw std::invalid_argument(
        "solve_ground_state: no undershoot at a = 1; bracket not found in (1, 10)");
  bool found = false;
  for (double a = 1.5; a < 10.0; a += 0.5) {
    Shot kind = shoot(a, grid, h_ode, per_node, false).kind;
    if (kind == Shot::Overshoot) {
      lo = prev;
      hi = a;
      found = true;
      break;
    }
    prev = a;
  }
  if (!found)
    throw std::invalid_argument(
        "solve_ground_state: shooting bracket not found in a in (1, 10)");

  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (shoot(mid, grid, h_ode, per_node, false).kind == Shot::Overshoot)
      hi = mid;
    else
      lo = mid;
  }
  const double a_star = 0.5 * (lo + hi);
  ShootResult traj = shoot(a_star, grid, h_ode, per_node, true);

  Eigen::VectorXd seed(grid.size() - 1);
  for (Eigen::Index i = 0; i + 1 < grid.size(); ++i)
    seed[i] = std::max(traj.at_nodes[i], 0.0);
  extend_tail(grid, seed, 1.0);

  Eigen::VectorXd w =
      newton_refine(grid, seed, 1.0, std::min(tol, 1e-11), "solve_ground_state");

  GroundState gs;
  gs.omega = Profile::zero(grid);
  gs.omega.values.head(grid.size() - 1) = w;
  gs.center_value = w[0];

  Profile res = laplacian_apply(gs.omega);
  res.values = -res.values + gs.omega.values - gs.omega.values.array().cube().matrix();
  res.values[grid.size() - 1] = 0.0;
  gs.residual_norm = l2_norm(res);
  return gs;
}

double sup_norm(const GroundState& gs) { return gs.center_value; }

namespace {

// Fritsch-Carlson slopes for a monotone cubic Hermite interpolant on a
// uniform mesh.
Eigen::VectorXd pchip_slopes(const Eigen::VectorXd& y, double h) {
  const Eigen::Index n = y.size();
  Eigen::VectorXd delta(n - 1), d(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / h;

  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0)
      d[i] = 0.0;
    else
      d[i] = 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
  }
  auto end_slope = [](double del0, double del1) {
    double s = (3.0 * del0 - del1) / 2.0;
    if (s * del0 <= 0.0) return 0.0;
    if (del0 * del1 < 0.0 && std::abs(s) > 3.0 * std::abs(del0))
      return 3.0 * del0;
    return s;
  };
  d[0] = end_slope(delta[0], delta[1]);
  d[n - 1] = end_slope(delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

Profile rescale(const GroundState& gs, double s, const RadialGrid& grid) {
  if (!(s > 0.0)) throw std::invalid_argument("rescale: s must be positive");
  const RadialGrid& src = *gs.omega.grid;
  const double h = src.spacing();
  const Eigen::VectorXd& y = gs.omega.values;
  const Eigen::VectorXd d = pchip_slopes(y, h);

  Profile out = Profile::zero(grid);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double x = s * grid.node(i);
    if (x >= src.radius()) continue;  // zero beyond R/s
    Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(x / h),
                                            src.size() - 2);
    const double t = (x - src.node(k)) / h;
    const double t2 = t * t, t3 = t2 * t;
    out.values[i] = (2.0 * t3 - 3.0 * t2 + 1.0) * y[k] +
                    (t3 - 2.0 * t2 + t) * h * d[k] +
                    (-2.0 * t3 + 3.0 * t2) * y[k + 1] +
                    (t3 - t2) * h * d[k + 1];
  }
  return out;
}

Profile scaled_ground_state(const GroundState& gs, double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("scaled_ground_state: sigma must be positive");
  const RadialGrid& grid = *gs.omega.grid;
  Profile seed = rescale(gs, std::sqrt(sigma), grid);
  Eigen::VectorXd head = seed.values.head(grid.size() - 1);
  head = head.cwiseMax(0.0);
  extend_tail(grid, head, std::sqrt(sigma));
  Eigen::VectorXd w =
      newton_refine(grid, head, sigma, 1e-11, "scaled_ground_state");
  Profile out = Profile::zero(grid);
  out.values.head(grid.size() - 1) = w;
  return out;
}

}  // namespace schro
