#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "schro/errors.hpp"
#include "schro/nehari.hpp"

using namespace schro;

namespace {

const GroundState& gs1() {
  static RadialGrid g(1, 15.0, 3001);
  static GroundState gs = solve_ground_state(g);
  return gs;
}

const GroundState& gs3() {
  static RadialGrid g(3, 20.0, 2001);
  static GroundState gs = solve_ground_state(g);
  return gs;
}

Params symmetric(double kappa, double beta, int dim) {
  Params p;
  p.kappa = kappa;
  p.beta = beta;
  p.mu1 = p.mu2 = 1.0;
  p.dim = dim;
  return p;
}

Profile random_profile(const RadialGrid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(0.2, 1.0);
  Profile p = Profile::zero(g);
  for (int k = 0; k < 3; ++k) {
    const double a = coef(rng), c = coef(rng);
    for (Eigen::Index i = 0; i + 1 < g.size(); ++i)
      p.values[i] += a * std::exp(-c * g.node(i) * g.node(i));
  }
  return p;
}

double norm1_sq(const Params& p, const Profile& u, const Profile& v) {
  return inner_h1(u, u) + inner_h1(v, v) + 2.0 * p.kappa * inner_l2(u, v);
}

}  // namespace

TEST_CASE("energy at simple points") {
  const GroundState& gs = gs1();
  const RadialGrid& g = *gs.omega.grid;
  Params p = symmetric(0.0, 0.0, 1);

  CHECK(energy_I(p, Profile::zero(g), Profile::zero(g)) == 0.0);

  const double e = energy_I(p, gs.omega, gs.omega);
  CHECK(e == doctest::Approx(8.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("manifold energy identity after projection") {
  const GroundState& gs = gs3();
  const RadialGrid& g = *gs.omega.grid;
  Params p = symmetric(-0.4, 0.8, 3);

  Profile u = random_profile(g, 1);
  Profile v = random_profile(g, 2);
  const double t = nehari_t(p, u, v).t;
  u.values *= t;
  v.values *= t;

  const double lhs = energy_I(p, u, v);
  const double rhs =
      0.25 * (-inner_l2(laplacian_apply(u), u) + inner_l2(u, u) -
              inner_l2(laplacian_apply(v), v) + inner_l2(v, v) +
              2.0 * p.kappa * inner_l2(u, v));
  CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(rhs)));
}

TEST_CASE("gradient: zeros, synchronized points, finite differences") {
  const GroundState& gs = gs3();
  const RadialGrid& g = *gs.omega.grid;
  Params p = symmetric(-0.5, 1.0, 3);

  auto [gz_u, gz_v] = gradient_I(p, Profile::zero(g), Profile::zero(g));
  CHECK(l2_norm(gz_u) == 0.0);
  CHECK(l2_norm(gz_v) == 0.0);

  auto tp = synchronized_plus(p.kappa, p.beta, gs);
  auto [gu, gv] = gradient_I(p, tp.first, tp.second);
  CHECK(l2_norm(gu) < 1e-6);
  CHECK(l2_norm(gv) < 1e-6);

  // directional derivatives against central differences, random directions
  Profile u = random_profile(g, 3);
  Profile v = random_profile(g, 4);
  auto [du, dv] = gradient_I(p, u, v);
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double h = 1e-4;
  for (int t = 0; t < 10; ++t) {
    Profile phi = Profile::zero(g);
    for (Eigen::Index i = 0; i + 1 < g.size(); ++i) phi.values[i] = gauss(rng);

    Profile up = u, um = u;
    up.values += h * phi.values;
    um.values -= h * phi.values;
    const double fd =
        (energy_I(p, up, v) - energy_I(p, um, v)) / (2.0 * h);
    const double pairing = inner_l2(du, phi);
    CHECK(fd == doctest::Approx(pairing).epsilon(1e-5));
  }
}

TEST_CASE("nehari projection scaling") {
  const GroundState& gs = gs1();
  const RadialGrid& g = *gs.omega.grid;
  Params p = symmetric(0.0, 0.0, 1);

  CHECK(nehari_t(p, gs.omega, gs.omega).t == doctest::Approx(1.0).epsilon(1e-10));

  Profile two = gs.omega;
  two.values *= 2.0;
  CHECK(nehari_t(p, two, two).t == doctest::Approx(0.5).epsilon(1e-10));

  NehariProjection degen = nehari_t(p, gs.omega, Profile::zero(g));
  CHECK(degen.t == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(degen.degenerate_component);
  CHECK_FALSE(nehari_t(p, gs.omega, gs.omega).degenerate_component);

  // beta < -1 with strongly overlapping components: quartic form negative
  Params neg = symmetric(0.0, -2.0, 1);
  CHECK_THROWS_AS(nehari_t(neg, gs.omega, gs.omega), NotProjectableError);

  // non-coercive quadratic form at kappa <= -1 territory
  Params coarse = symmetric(-3.0, 0.5, 1);
  Profile wide = Profile::from_function(
      g, [](double r) { return std::exp(-0.05 * r * r); });
  wide.values[g.size() - 1] = 0.0;
  CHECK_THROWS_AS(nehari_t(coarse, wide, wide), NotCoerciveError);

  // idempotence: a projected pair projects to t = 1
  Profile u = random_profile(g, 10);
  Profile v = random_profile(g, 11);
  Params q = symmetric(-0.3, 0.7, 1);
  const double t0 = nehari_t(q, u, v).t;
  u.values *= t0;
  v.values *= t0;
  CHECK(nehari_t(q, u, v).t == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("norm equivalence (1+k)|.|_H <= |.|_1 <= sqrt(2)|.|_H") {
  const GroundState& gs = gs1();
  const RadialGrid& g = *gs.omega.grid;
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> kap(-0.99, -0.01);
  for (int t = 0; t < 50; ++t) {
    const double kappa = kap(rng);
    Params p = symmetric(kappa, 0.5, 1);
    Profile u = random_profile(g, 100 + t);
    Profile v = random_profile(g, 200 + t);
    const double h = std::sqrt(inner_h1(u, u) + inner_h1(v, v));
    const double n1 = std::sqrt(norm1_sq(p, u, v));
    CHECK(n1 >= (1.0 + kappa) * h - 1e-8);
    CHECK(n1 <= std::sqrt(2.0) * h + 1e-8);
  }
}

TEST_CASE("minimizer at kappa=-0.5, beta=1, N=3") {
  const GroundState& gs = gs3();
  Params p = symmetric(-0.5, 1.0, 3);

  NehariState st =
      minimize_ground_state(p, {gs.omega, gs.omega}, 1e-6, 4000);
  CHECK(st.converged);
  CHECK(st.residual <= 1e-6);
  CHECK(st.positive);
  CHECK(st.energy > 0.0);

  auto tp = synchronized_plus(p.kappa, p.beta, gs);
  const double e_plus = energy_I(p, tp.first, tp.second);
  CHECK(st.energy <= e_plus + 1e-8);

  const double pn = pair_norm(st.pair.first, st.pair.second);
  CHECK(st.on_manifold_defect <= 1e-8 * pn * pn);
}

TEST_CASE("minimizer error paths") {
  const GroundState& gs = gs1();
  const RadialGrid& g = *gs.omega.grid;
  Params p = symmetric(-0.5, 1.0, 1);
  CHECK_THROWS_AS(
      minimize_ground_state(p, {gs.omega, Profile::zero(g)}, 1e-6, 100),
      std::invalid_argument);
  Params bad = symmetric(-1.5, 1.0, 1);
  CHECK_THROWS_AS(minimize_ground_state(bad, {gs.omega, gs.omega}, 1e-6, 100),
                  std::invalid_argument);
}
