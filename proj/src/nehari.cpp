#include "schro/nehari.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "schro/errors.hpp"
#include "schro/tridiag.hpp"

namespace schro {
namespace {

// int u (-Delta v + v), the operator realization of the H1 pairing.
double h1_form(const Profile& u, const Profile& v) {
  Profile lap = laplacian_apply(v);
  return -inner_l2(u, lap) + inner_l2(u, v);
}

double quartic_part(const Params& p, const Profile& u, const Profile& v) {
  const Eigen::VectorXd& w = u.grid->quad_weights();
  const auto uu = u.values.array();
  const auto vv = v.values.array();
  return w.dot((p.mu1 * uu.pow(4) + p.mu2 * vv.pow(4) +
                2.0 * p.beta * uu.square() * vv.square())
                   .matrix());
}

double quadratic_part(const Params& p, const Profile& u, const Profile& v) {
  return h1_form(u, u) + h1_form(v, v) + 2.0 * p.kappa * inner_l2(u, v);
}

}  // namespace

double energy_I(const Params& p, const Profile& u, const Profile& v) {
  p.validate();
  require_same_grid(u, v);
  const Eigen::VectorXd& w = u.grid->quad_weights();
  const auto uu = u.values.array();
  const auto vv = v.values.array();
  const double quartic =
      w.dot((0.25 * (p.mu1 * uu.pow(4) + p.mu2 * vv.pow(4)) +
             0.5 * p.beta * uu.square() * vv.square())
                .matrix());
  return 0.5 * (h1_form(u, u) + h1_form(v, v)) +
         p.kappa * inner_l2(u, v) - quartic;
}

std::pair<Profile, Profile> gradient_I(const Params& p, const Profile& u,
                                       const Profile& v) {
  p.validate();
  require_same_grid(u, v);
  Profile gu = laplacian_apply(u);
  Profile gv = laplacian_apply(v);
  const auto uu = u.values.array();
  const auto vv = v.values.array();
  gu.values = (-gu.values.array() + uu + p.kappa * vv - p.mu1 * uu.cube() -
               p.beta * uu * vv.square())
                  .matrix();
  gv.values = (-gv.values.array() + vv + p.kappa * uu - p.mu2 * vv.cube() -
               p.beta * vv * uu.square())
                  .matrix();
  return {std::move(gu), std::move(gv)};
}

NehariProjection nehari_t(const Params& p, const Profile& u, const Profile& v) {
  p.validate();
  require_same_grid(u, v);
  const double denom = quartic_part(p, u, v);
  if (!(denom > 0.0))
    throw NotProjectableError("nehari_t: quartic denominator is not positive");
  const double num = quadratic_part(p, u, v);
  if (!(num > 0.0))
    throw NotCoerciveError("nehari_t: quadratic form is not positive here");
  NehariProjection proj;
  proj.t = std::sqrt(num / denom);
  proj.degenerate_component =
      inner_l2(u, u) == 0.0 || inner_l2(v, v) == 0.0;
  return proj;
}

namespace {

struct Iterate {
  Profile u, v;
  double energy;
};

Iterate project_abs(const Params& p, Profile u, Profile v) {
  u.values = u.values.cwiseAbs();
  v.values = v.values.cwiseAbs();
  const double t = nehari_t(p, u, v).t;
  u.values *= t;
  v.values *= t;
  return {u, v, energy_I(p, u, v)};
}

}  // namespace

NehariState minimize_ground_state(const Params& p,
                                  std::pair<Profile, Profile> init, double tol,
                                  int max_iter) {
  p.validate();
  if (!(p.kappa > -1.0))
    throw std::invalid_argument("minimize_ground_state: kappa must exceed -1");
  require_same_grid(init.first, init.second);
  if (inner_l2(init.first, init.first) == 0.0 ||
      inner_l2(init.second, init.second) == 0.0)
    throw std::invalid_argument("minimize_ground_state: init components must be nonzero");

  const RadialGrid& g = *init.first.grid;
  const Eigen::Index m = g.size() - 1;
  Tridiagonal precond = neg_laplacian(g);
  precond.diag.array() += 1.0;

  Iterate cur = project_abs(p, init.first, init.second);

  auto descend = [&](const Profile& grad) {
    Profile d = Profile::zero(g);
    d.values.head(m) = tridiag_solve(precond, grad.values.head(m));
    return d;
  };

  NehariState best;
  best.residual = std::numeric_limits<double>::infinity();
  double step = 1.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    auto [gu, gv] = gradient_I(p, cur.u, cur.v);
    const double res = std::sqrt(inner_l2(gu, gu) + inner_l2(gv, gv));
    if (res < best.residual) {
      best.pair = {cur.u, cur.v};
      best.energy = cur.energy;
      best.residual = res;
    }
    if (res <= tol) break;

    Profile du = descend(gu);
    Profile dv = descend(gv);

    bool accepted = false;
    while (step >= 1e-14) {
      Profile tu = cur.u;
      Profile tv = cur.v;
      tu.values -= step * du.values;
      tv.values -= step * dv.values;
      try {
        Iterate trial = project_abs(p, std::move(tu), std::move(tv));
        if (trial.energy < cur.energy) {
          cur = std::move(trial);
          accepted = true;
          step = std::min(step * 2.0, 4.0);
          break;
        }
      } catch (const NotProjectableError&) {
        // shrink until the trial projects again
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search exhausted; report best iterate
  }

  NehariState out;
  auto [gu, gv] = gradient_I(p, cur.u, cur.v);
  const double res = std::sqrt(inner_l2(gu, gu) + inner_l2(gv, gv));
  if (res <= best.residual) {
    out.pair = {cur.u, cur.v};
    out.energy = cur.energy;
    out.residual = res;
  } else {
    out = std::move(best);
  }
  out.iterations = it;
  out.converged = out.residual <= tol;
  out.on_manifold_defect =
      std::abs(quadratic_part(p, out.pair.first, out.pair.second) -
               quartic_part(p, out.pair.first, out.pair.second));
  out.positive = out.pair.first.values.head(g.size() - 1).minCoeff() > 0.0 &&
                 out.pair.second.values.head(g.size() - 1).minCoeff() > 0.0;
  return out;
}

}  // namespace schro
