#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>

#include "schro/continuation.hpp"
#include "schro/errors.hpp"
#include "schro/tridiag.hpp"

using namespace schro;

namespace {

const GroundState& gs1() {
  static RadialGrid g(1, 15.0, 2001);
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

BifurcationPoint first_bifurcation(const GroundState& gs, double beta) {
  auto bps = find_bifurcation_kappas(gs, beta, 1, 0.5);
  REQUIRE(bps.size() == 1);
  return bps.front();
}

}  // namespace

TEST_CASE("newton_solve from an exact root returns it unchanged") {
  const GroundState& gs = gs1();
  Params p = symmetric(-0.3, 0.4, 1);
  auto tp = synchronized_plus(p.kappa, p.beta, gs);
  BranchPoint bp = newton_solve(p, tp, false, 1e-8);
  CHECK(bp.newton_steps <= 2);
  CHECK(bp.residual <= 1e-8);
  CHECK((bp.pair.first.values - tp.first.values).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(bp.positive);
  CHECK(bp.asymmetry < 1e-12);
}

TEST_CASE("sigma image of a converged point solves the mirrored system") {
  const GroundState& gs = gs1();
  Params p = symmetric(-0.45, 0.2, 1);
  auto tp = synchronized_plus(p.kappa, p.beta, gs);
  BranchPoint bp = newton_solve(p, tp, false, 1e-9);
  SigmaImage img = sigma_action(p, bp.pair.first, bp.pair.second);
  CHECK(system_residual_norm(img.params, img.u, img.v, false) <= 1e-9);
}

TEST_CASE("branch switch geometry") {
  const GroundState& gs = gs1();
  BifurcationPoint bp = first_bifurcation(gs, 0.0);
  CHECK(std::abs(bp.kappa_j + 0.6) < 1e-4);

  auto same = branch_switch(bp, 0.0);
  CHECK((same.first.values - bp.pair.first.values).cwiseAbs().maxCoeff() == 0.0);

  const double eps = 0.02;
  auto guess = branch_switch(bp, eps);
  Profile diff = guess.first;
  diff.values -= guess.second.values;
  CHECK(l2_norm(diff) ==
        doctest::Approx(2.0 * eps * l2_norm(bp.kernel_phi)).epsilon(1e-10));

  CHECK_THROWS_AS(branch_switch(bp, 1e9), std::invalid_argument);
}

TEST_CASE("a genuinely bifurcating solution exists beside the branch point") {
  const GroundState& gs = gs1();
  BifurcationPoint bp = first_bifurcation(gs, 0.0);

  bool found = false;
  for (double eps : {0.01, 0.04}) {
    auto guess = branch_switch(bp, eps);
    const double thresh = eps * l2_norm(bp.kernel_phi);
    for (double offset : {1e-3, -1e-3, 3e-3, -3e-3}) {
      Params p = symmetric(bp.kappa_j + offset, 0.0, 1);
      try {
        BranchPoint pt = newton_solve(p, guess, false, 1e-9);
        if (pt.asymmetry > thresh) found = true;
      } catch (const NumericalError&) {
        // basins beside a pitchfork are narrow; other combinations deliver
      }
    }
  }
  CHECK(found);
}

TEST_CASE("cutoff system: Jacobian kink, equivalence and positivity") {
  const GroundState& gs = gs1();
  Params p = symmetric(-0.3, -0.2, 1);
  auto tp = synchronized_plus(p.kappa, p.beta, gs);

  BranchPoint bp = newton_solve(p, tp, true, 1e-9);
  CHECK(bp.positive);
  CHECK(verify_cutoff_equivalence(p, bp));

  // a manufactured sign-changing pair does not satisfy the uncut system
  BranchPoint fake = bp;
  fake.pair.second.values = -fake.pair.second.values;
  CHECK_FALSE(verify_cutoff_equivalence(p, fake));

  // the cutoff residual genuinely differs from the uncut one off positivity
  const double cut =
      system_residual_norm(p, fake.pair.first, fake.pair.second, true);
  const double uncut =
      system_residual_norm(p, fake.pair.first, fake.pair.second, false);
  CHECK(std::abs(cut - uncut) > 1e-3);
}

TEST_CASE("kernel of the full linearization at a bifurcation point is (phi, -phi)") {
  const GroundState& gs = gs1();
  const RadialGrid& g = *gs.omega.grid;
  const Eigen::Index m = g.size() - 1;
  BifurcationPoint bp = first_bifurcation(gs, 0.0);
  const auto& u = bp.pair.first.values;
  const auto& v = bp.pair.second.values;

  // independent assembly of the 2x2-block linearization (beta = 0)
  Tridiagonal A = neg_laplacian(g);
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index i = 0; i < m; ++i) {
    trip.emplace_back(i, i, A.diag[i] + 1.0 - 3.0 * u[i] * u[i]);
    trip.emplace_back(m + i, m + i, A.diag[i] + 1.0 - 3.0 * v[i] * v[i]);
    trip.emplace_back(i, m + i, bp.kappa_j);
    trip.emplace_back(m + i, i, bp.kappa_j);
    if (i + 1 < m) {
      trip.emplace_back(i, i + 1, A.upper[i]);
      trip.emplace_back(i + 1, i, A.lower[i]);
      trip.emplace_back(m + i, m + i + 1, A.upper[i]);
      trip.emplace_back(m + i + 1, m + i, A.lower[i]);
    }
  }
  Eigen::SparseMatrix<double> J(2 * m, 2 * m);
  J.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J);
  REQUIRE(lu.info() == Eigen::Success);

  Eigen::VectorXd x = Eigen::VectorXd::Ones(2 * m).normalized();
  for (int it = 0; it < 4; ++it) x = lu.solve(x).normalized();

  Eigen::VectorXd phi = x.head(m), psi = x.tail(m);
  const double rel = (phi + psi).norm() / phi.norm();
  CHECK(rel < 1e-5);
}

TEST_CASE("continuation from the first bifurcation at beta = -0.5") {
  const GroundState& gs = gs1();
  const double beta = -0.5;
  BifurcationPoint bp = first_bifurcation(gs, beta);
  CHECK(std::abs(bp.kappa_j + 0.8294) < 1e-3);

  const double eps = 0.025;
  auto guess = branch_switch(bp, eps);
  BranchPoint start;
  bool have = false;
  double offset_used = 0.0;
  for (double offset : {5e-4, -5e-4}) {
    Params p = symmetric(bp.kappa_j + offset, beta, 1);
    try {
      BranchPoint pt = newton_solve(p, guess, true, 1e-9);
      if (pt.asymmetry > eps * l2_norm(bp.kernel_phi)) {
        start = pt;
        offset_used = offset;
        have = true;
        break;
      }
    } catch (const NumericalError&) {
    }
  }
  REQUIRE(have);
  CHECK(start.quadratic_tail);

  // first point sits within twice the switch amplitude of the origin pair
  {
    Profile du = start.pair.first;
    du.values -= bp.pair.first.values;
    Profile dv = start.pair.second;
    dv.values -= bp.pair.second.values;
    const double dist = std::sqrt(inner_l2(du, du) + inner_l2(dv, dv));
    CHECK(dist <= 2.0 * 2.0 * eps * l2_norm(bp.kernel_phi));
  }

  Params p = symmetric(0.0, beta, 1);
  BranchSegment seg = continue_branch(start, bp, p, 0.02, 60, true);
  INFO("termination: ", std::string(to_string(seg.termination)),
       " points: ", seg.points.size());
  CHECK(seg.points.size() >= 30);

  int positive_in_window = 0;
  for (const auto& pt : seg.points) {
    CHECK(pt.asymmetry > 1e-4);
    CHECK(pt.residual <= 1e-8 * (1.0 + pair_norm(pt.pair.first, pt.pair.second)));
    if (pt.kappa > -1.0 && pt.kappa <= 0.0) {
      CHECK(pt.positive);
      ++positive_in_window;
    }
    // sigma image of every positive point solves the -kappa system (the
    // uncut and cutoff systems coincide on positive pairs)
    if (pt.positive) {
      Params q = symmetric(pt.kappa, beta, 1);
      SigmaImage img = sigma_action(q, pt.pair.first, pt.pair.second);
      CHECK(system_residual_norm(img.params, img.u, img.v, false) <=
            1e-7 * (1.0 + pair_norm(img.u, img.v)));
    }
  }
  CHECK(positive_in_window > 0);

  // arclengths strictly increase
  for (size_t i = 1; i < seg.points.size(); ++i)
    CHECK(seg.points[i].arclength > seg.points[i - 1].arclength);

  // reversing the tangent traces the other side; both sides agree at the
  // origin within the switch amplitude scale
  Params pm = symmetric(bp.kappa_j - offset_used, beta, 1);
  try {
    BranchPoint mirror = newton_solve(pm, branch_switch(bp, -eps), true, 1e-9);
    Profile du = mirror.pair.first;
    du.values -= start.pair.first.values;
    // the two half-branches emanate from the same root
    CHECK(l2_norm(du) < 10.0 * eps);
  } catch (const NumericalError&) {
    // acceptable: the mirrored guess may sit on the non-solvable side
  }
}

TEST_CASE("Morse index jumps by one across each bifurcation point") {
  const GroundState& gs = gs1();
  for (double beta : {0.0, -0.5}) {
    auto bps = find_bifurcation_kappas(gs, beta, 2, 0.5);
    for (const auto& bp : bps) {
      const int below = morse_index_on_branch(gs, bp.kappa_j - 1e-2, beta).index;
      const int above = morse_index_on_branch(gs, bp.kappa_j + 1e-2, beta).index;
      CHECK(above == below + 1);
    }
  }
}

TEST_CASE("newton_solve preconditions") {
  const GroundState& gs = gs1();
  Params p = symmetric(-0.3, 0.4, 1);
  auto tp = synchronized_plus(p.kappa, p.beta, gs);
  CHECK_THROWS_AS(newton_solve(p, tp, false, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(continue_branch(BranchPoint{}, BifurcationPoint{}, p, 0.5,
                                  10, false),
                  std::invalid_argument);
}
