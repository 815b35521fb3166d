#pragma once

#include <array>
#include <utility>
#include <vector>

#include "schro/ground_state.hpp"
#include "schro/spectrum.hpp"

namespace schro {

/// Problem datum (kappa, beta, mu1, mu2, N) with the standing assumption
/// mu2 >= mu1 > 0.
struct Params {
  double kappa = 0.0;
  double beta = 0.0;
  double mu1 = 1.0;
  double mu2 = 1.0;
  int dim = 3;

  void validate() const;
};

/// T+ : u = v = sqrt((1+k)/(1+b)) * w_k with w_k the discrete scaled
/// ground profile; an exact zero of the grid system. Domain k > -1, b > -1.
std::pair<Profile, Profile> synchronized_plus(double kappa, double beta,
                                              const GroundState& gs);

/// T- : (a w, -a w) with a = sqrt((1-k)/(1+b)), scale sqrt(1-k).
/// Domain k < 1, b > -1.
std::pair<Profile, Profile> synchronized_minus(double kappa, double beta,
                                               const GroundState& gs);

struct SigmaImage {
  Params params;
  Profile u;
  Profile v;
};

/// sigma: (kappa, beta, u, v) -> (-kappa, beta, u, -v); an involution that
/// exchanges the positive and opposite-sign families.
SigmaImage sigma_action(const Params& p, const Profile& u, const Profile& v);

/// Real solutions (a1, a2, b), a1*a2 != 0, b > 0, of
///   a1 + kappa a2 = a1 b^2,       a2 + kappa a1 = a2 b^2,
///   a1^2 + beta a2^2 = b^2,       a2^2 + beta a1^2 = b^2,
/// one representative per sign orbit: the a1 = a2 family requires
/// kappa > -1, the a1 = -a2 family kappa < 1; both need beta > -1.
/// Empty when no real solution exists.
std::vector<std::array<double, 3>> solve_algebraic_system(double kappa,
                                                          double beta);

/// f(beta) = (3 - beta)/(1 + beta); the bifurcation threshold.
double f_of_beta(double beta);

struct BifurcationPoint {
  int j = 0;
  double beta = 0.0;
  double kappa_j = 0.0;
  double lambda = 0.0;  // lambda_j(kappa_j), equals f(beta) at the root
  std::pair<Profile, Profile> pair;
  Profile kernel_phi;
  bool in_unit_interval = false;  // kappa_j <= 0; roots beyond are conditional
};

/// Roots of lambda_j(kappa) = f(beta) for each j <= j_max, located by
/// bisection on the monotone eigenvalue curves. The bracket expands toward
/// kappa = -1 until a sign change appears or C(kappa) exceeds 1e8. A j
/// without a root in (-1, kappa_hi] is simply absent.
std::vector<BifurcationPoint> find_bifurcation_kappas(const GroundState& gs,
                                                      double beta, int j_max,
                                                      double kappa_hi);

/// #\{ i : lambda_i(0) <= f(beta) \}; the number of bifurcation kappas in
/// (-1, 0]. Zero when f(beta) < lambda_1(0).
int count_bifurcations_in_unit_interval(const GroundState& gs, double beta);

enum class RegionVerdict {
  NoPositiveSolution,
  PositiveGroundState,
  ExistsSymmetric,
  Unknown,
};

const char* to_string(RegionVerdict v);

/// Region classifier for positive solutions. Verdicts cover only the
/// proved regions; everything else is Unknown. Precedence:
/// NoPositiveSolution > PositiveGroundState > ExistsSymmetric.
RegionVerdict classify_region(const Params& p);

/// The same classifier composed with the sigma map kappa -> -kappa,
/// answering for opposite-sign solutions.
RegionVerdict classify_opposite_sign(const Params& p);

}  // namespace schro
