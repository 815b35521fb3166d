#include "schro/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "schro/errors.hpp"
#include "schro/tridiag.hpp"

namespace schro {

double coupling_C(double kappa) {
  if (!(kappa > -1.0))
    throw std::invalid_argument("coupling_C: kappa must exceed -1");
  return (1.0 - kappa) / (1.0 + kappa);
}

namespace {

// Weighted pencil T x = lambda diag(b) x on the active nodes. For N = 1
// the active range starts at the origin; for N >= 2 the origin has zero
// quadrature weight and is folded into the first interior row with the
// ratio omega(0)/omega(h), which keeps omega itself an exact eigenprofile
// at C = 1.
struct WeightedPencil {
  Tridiagonal T;
  Eigen::VectorXd b;
  Eigen::Index first = 0;
  double origin_ratio = 1.0;
};

WeightedPencil assemble_pencil(const GroundState& gs, double c0) {
  const RadialGrid& g = *gs.omega.grid;
  const Eigen::VectorXd& om = gs.omega.values;
  const Tridiagonal A = neg_laplacian(g);
  const Eigen::Index m = A.size();

  WeightedPencil P;
  if (g.dim() == 1) {
    P.first = 0;
    P.T = A;
    P.T.diag.array() += c0;
    P.b = om.head(m).array().square();
  } else {
    P.first = 1;
    P.origin_ratio = om[0] / om[1];
    P.T.diag = A.diag.segment(1, m - 1);
    P.T.lower = A.lower.segment(1, m - 2);
    P.T.upper = A.upper.segment(1, m - 2);
    P.T.diag.array() += c0;
    P.T.diag[0] += A.lower[0] * P.origin_ratio;
    P.b = om.segment(1, m - 1).array().square();
  }
  if ((om.head(g.size() - 1).array() <= 0.0).any())
    throw NumericalError("eigen pencil: omega is not positive");
  // omega^2 may underflow in a long tail even though omega itself is
  // positive; the pencil never inverts the weight, so a floor at the
  // smallest normal keeps those nodes inert.
  P.b = P.b.cwiseMax(std::numeric_limits<double>::min());
  return P;
}

Profile embed_eigenvector(const GroundState& gs, const WeightedPencil& P,
                          const Eigen::VectorXd& x) {
  const RadialGrid& g = *gs.omega.grid;
  Profile phi = Profile::zero(g);
  phi.values.segment(P.first, x.size()) = x;
  if (P.first == 1) phi.values[0] = P.origin_ratio * x[0];

  Eigen::Index imax = 0;
  phi.values.cwiseAbs().maxCoeff(&imax);
  if (phi.values[imax] < 0.0) phi.values = -phi.values;

  Profile w2phi2{&g, (gs.omega.values.array().square() *
                      phi.values.array().square())
                         .matrix()};
  phi.values /= std::sqrt(integrate(w2phi2));
  return phi;
}

double pair_residual(const GroundState& gs, const Profile& phi, double c0,
                     double lambda) {
  Profile res = laplacian_apply(phi);
  res.values = -res.values + c0 * phi.values -
               lambda * (gs.omega.values.array().square() *
                         phi.values.array())
                            .matrix();
  res.values[gs.omega.grid->size() - 1] = 0.0;
  return l2_norm(res) / l2_norm(phi);
}

}  // namespace

std::vector<EigenPair> eigen_lambda(const GroundState& gs, double kappa,
                                    int m) {
  const double c0 = coupling_C(kappa);
  const RadialGrid& g = *gs.omega.grid;
  if (m < 1) throw std::invalid_argument("eigen_lambda: m must be positive");
  if (m > g.size() / 10)
    throw std::invalid_argument("eigen_lambda: m exceeds the grid resolution limit");

  WeightedPencil P = assemble_pencil(gs, c0);

  std::vector<EigenPair> out;
  out.reserve(m);
  for (int j = 1; j <= m; ++j) {
    EigenPair ep;
    ep.index = j;
    ep.kappa = kappa;
    ep.lambda = pencil_kth_eigenvalue(P.T, P.b, j - 1);
    Eigen::VectorXd x = inverse_iteration(P.T, P.b, ep.lambda);
    ep.phi = embed_eigenvector(gs, P, x);
    ep.residual = pair_residual(gs, ep.phi, c0, ep.lambda);
    out.push_back(std::move(ep));
  }
  return out;
}

double lambda_j(const GroundState& gs, double kappa, int j) {
  const double c0 = coupling_C(kappa);
  if (j < 1) throw std::invalid_argument("lambda_j: j must be positive");
  WeightedPencil P = assemble_pencil(gs, c0);
  return pencil_kth_eigenvalue(P.T, P.b, j - 1);
}

double rayleigh_J(const GroundState& gs, const Profile& phi, double kappa) {
  const double c0 = coupling_C(kappa);
  require_same_grid(gs.omega, phi);
  Profile w2phi2{phi.grid, (gs.omega.values.array().square() *
                            phi.values.array().square())
                               .matrix()};
  const double denom = integrate(w2phi2);
  if (!(denom > 0.0))
    throw std::invalid_argument("rayleigh_J: phi vanishes against the weight");
  Profile lap = laplacian_apply(phi);
  const double num = -inner_l2(lap, phi) + c0 * inner_l2(phi, phi);
  return num / denom;
}

double lambda1_lower_bound(const GroundState& gs, double kappa) {
  const double c0 = coupling_C(kappa);
  const double s = gs.center_value * gs.center_value;
  return std::max(c0 / s, 1.0 + (c0 - 1.0) / s);
}

namespace {

// Negative-eigenvalue count and values of -Delta + diag(pot) in the radial
// class. Uses the full active matrix; inertia is exact under the diagonal
// similarity, and the vanishing origin coupling for N = 3 splits the
// matrix transparently.
std::pair<int, std::vector<double>> negative_spectrum(const RadialGrid& g,
                                                      const Eigen::VectorXd& pot) {
  Tridiagonal T = neg_laplacian(g);
  T.diag += pot.head(T.size());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(T.size());
  const int k = pencil_count_below(T, ones, 0.0);
  std::vector<double> vals;
  vals.reserve(k);
  for (int i = 0; i < k; ++i) vals.push_back(pencil_kth_eigenvalue(T, ones, i));
  return {k, vals};
}

}  // namespace

MorseIndexReport morse_index_on_branch(const GroundState& gs, double kappa,
                                       double beta) {
  if (!(kappa > -1.0) || !(beta > -1.0))
    throw std::invalid_argument("morse_index_on_branch: need kappa > -1 and beta > -1");
  const RadialGrid& g = *gs.omega.grid;
  const double sk = 1.0 + kappa;
  Profile wk = scaled_ground_state(gs, sk);
  Eigen::VectorXd wk2 = wk.values.array().square();

  Eigen::VectorXd pot_plus = (sk - 3.0 * sk * wk2.array()).matrix();
  Eigen::VectorXd pot_minus =
      ((1.0 - kappa) - sk * (3.0 - beta) / (1.0 + beta) * wk2.array()).matrix();

  auto [kp, vp] = negative_spectrum(g, pot_plus);
  auto [km, vm] = negative_spectrum(g, pot_minus);

  MorseIndexReport rep;
  rep.kappa = kappa;
  rep.beta = beta;
  rep.sum_block = kp;
  rep.difference_block = km;
  rep.index = kp + km;
  rep.negative_eigenvalues = std::move(vp);
  rep.negative_eigenvalues.insert(rep.negative_eigenvalues.end(), vm.begin(),
                                  vm.end());
  std::sort(rep.negative_eigenvalues.begin(), rep.negative_eigenvalues.end());
  return rep;
}

}  // namespace schro
