#include "schro/branches.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace schro {

void Params::validate() const {
  if (!(mu1 > 0.0) || !(mu2 >= mu1))
    throw std::invalid_argument("Params: need mu2 >= mu1 > 0");
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("Params: dim must be 1, 2 or 3");
}

std::pair<Profile, Profile> synchronized_plus(double kappa, double beta,
                                              const GroundState& gs) {
  if (!(kappa > -1.0) || !(beta > -1.0))
    throw std::invalid_argument("synchronized_plus: domain is kappa > -1, beta > -1");
  Profile w = scaled_ground_state(gs, 1.0 + kappa);
  const double amp = std::sqrt((1.0 + kappa) / (1.0 + beta));
  w.values *= amp;
  return {w, w};
}

std::pair<Profile, Profile> synchronized_minus(double kappa, double beta,
                                               const GroundState& gs) {
  if (!(kappa < 1.0) || !(beta > -1.0))
    throw std::invalid_argument("synchronized_minus: domain is kappa < 1, beta > -1");
  Profile w = scaled_ground_state(gs, 1.0 - kappa);
  const double amp = std::sqrt((1.0 - kappa) / (1.0 + beta));
  w.values *= amp;
  Profile v = w;
  v.values = -v.values;
  return {w, v};
}

SigmaImage sigma_action(const Params& p, const Profile& u, const Profile& v) {
  SigmaImage img;
  img.params = p;
  img.params.kappa = -p.kappa;
  img.u = u;
  img.v = v;
  img.v.values = -img.v.values;
  return img;
}

std::vector<std::array<double, 3>> solve_algebraic_system(double kappa,
                                                          double beta) {
  std::vector<std::array<double, 3>> out;
  if (!(beta > -1.0)) return out;  // amplitudes diverge at beta = -1
  if (kappa > -1.0) {
    const double b = std::sqrt(1.0 + kappa);
    const double a = std::sqrt((1.0 + kappa) / (1.0 + beta));
    out.push_back({a, a, b});
  }
  if (kappa < 1.0) {
    const double b = std::sqrt(1.0 - kappa);
    const double a = std::sqrt((1.0 - kappa) / (1.0 + beta));
    out.push_back({a, -a, b});
  }
  return out;
}

double f_of_beta(double beta) {
  if (!(beta > -1.0))
    throw std::invalid_argument("f_of_beta: beta must exceed -1");
  return (3.0 - beta) / (1.0 + beta);
}

std::vector<BifurcationPoint> find_bifurcation_kappas(const GroundState& gs,
                                                      double beta, int j_max,
                                                      double kappa_hi) {
  const double f = f_of_beta(beta);
  if (j_max < 1) throw std::invalid_argument("find_bifurcation_kappas: j_max >= 1");
  if (!(kappa_hi > -1.0))
    throw std::invalid_argument("find_bifurcation_kappas: kappa_hi must exceed -1");

  std::vector<BifurcationPoint> out;
  for (int j = 1; j <= j_max; ++j) {
    // lambda_j is decreasing in kappa, so a root exists in (-1, kappa_hi]
    // iff lambda_j(kappa_hi) <= f.
    if (lambda_j(gs, kappa_hi, j) > f) continue;

    double hi = kappa_hi;
    double lo = kappa_hi;
    bool bracketed = false;
    while (coupling_C(lo) <= 1e8) {
      lo = -1.0 + 0.25 * (1.0 + lo);
      if (lambda_j(gs, lo, j) > f) {
        bracketed = true;
        break;
      }
      hi = lo;
    }
    if (!bracketed) continue;

    while (hi - lo > 5e-12) {
      const double mid = 0.5 * (lo + hi);
      if (lambda_j(gs, mid, j) > f)
        lo = mid;
      else
        hi = mid;
    }

    BifurcationPoint bp;
    bp.j = j;
    bp.beta = beta;
    bp.kappa_j = 0.5 * (lo + hi);
    auto pairs = eigen_lambda(gs, bp.kappa_j, j);
    bp.lambda = pairs.back().lambda;
    bp.kernel_phi = std::move(pairs.back().phi);
    bp.pair = synchronized_plus(bp.kappa_j, beta, gs);
    bp.in_unit_interval = bp.kappa_j <= 0.0;
    out.push_back(std::move(bp));
  }
  return out;
}

int count_bifurcations_in_unit_interval(const GroundState& gs, double beta) {
  const double f = f_of_beta(beta);
  const int cap =
      static_cast<int>(std::min<Eigen::Index>(gs.omega.grid->size() / 10, 64));
  int count = 0;
  for (int j = 1; j <= cap; ++j) {
    if (lambda_j(gs, 0.0, j) <= f)
      ++count;
    else
      break;
  }
  return count;
}

const char* to_string(RegionVerdict v) {
  switch (v) {
    case RegionVerdict::NoPositiveSolution: return "NoPositiveSolution";
    case RegionVerdict::PositiveGroundState: return "PositiveGroundState";
    case RegionVerdict::ExistsSymmetric: return "ExistsSymmetric";
    default: return "Unknown";
  }
}

RegionVerdict classify_region(const Params& p) {
  p.validate();
  const double beta_bar = -std::cbrt(p.mu1 * p.mu1 * p.mu2);
  if ((p.kappa < -1.0 && p.beta >= beta_bar) ||
      (p.kappa == -1.0 && p.beta > 0.0))
    return RegionVerdict::NoPositiveSolution;
  if (p.kappa > -1.0 && p.kappa < 0.0 && p.beta > 0.0)
    return RegionVerdict::PositiveGroundState;
  if (p.mu1 == p.mu2 && ((p.kappa > -1.0 && p.kappa <= 0.0) ||
                         (p.kappa > -1.0 && p.beta > -1.0)))
    return RegionVerdict::ExistsSymmetric;
  return RegionVerdict::Unknown;
}

RegionVerdict classify_opposite_sign(const Params& p) {
  Params q = p;
  q.kappa = -p.kappa;
  return classify_region(q);
}

}  // namespace schro
