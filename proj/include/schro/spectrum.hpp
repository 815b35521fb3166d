#pragma once

#include <vector>

#include "schro/ground_state.hpp"

namespace schro {

/// C(kappa) = (1 - kappa)/(1 + kappa), the reduced linear coefficient.
/// Decreasing on (-1, inf); requires kappa > -1.
double coupling_C(double kappa);

/// One eigenpair of -Delta phi + C(kappa) phi = lambda omega^2 phi in the
/// radial class. phi is normalized to integrate(omega^2 phi^2) = 1 and the
/// residual is measured in the grid L2 norm relative to |phi|_L2.
struct EigenPair {
  int index = 0;  // j >= 1
  double kappa = 0.0;
  double lambda = 0.0;
  Profile phi;
  double residual = 0.0;
};

/// The m smallest eigenvalues of the omega^2-weighted pencil, by symmetric
/// reduction and Sturm-sequence bisection, with eigenprofiles from inverse
/// iteration. For N >= 2 the origin node carries zero quadrature weight;
/// it is folded into the first interior row through the ground state's own
/// origin ratio and reconstructed on output.
std::vector<EigenPair> eigen_lambda(const GroundState& gs, double kappa,
                                    int m);

/// Eigenvalues only; j is 1-based.
double lambda_j(const GroundState& gs, double kappa, int j);

/// Rayleigh quotient (int |grad phi|^2 + C(kappa) phi^2) / int omega^2 phi^2,
/// with the numerator evaluated through the grid operator.
double rayleigh_J(const GroundState& gs, const Profile& phi, double kappa);

/// max(C(kappa)/|omega|_inf^2, 1 + (C(kappa)-1)/|omega|_inf^2). A valid
/// lower bound for lambda_1(kappa) when C(kappa) >= 1; both expressions
/// lose their bounding property once C < 1 resp. C < 0.
double lambda1_lower_bound(const GroundState& gs, double kappa);

/// Morse index of the energy along the synchronized branch T+ at (kappa,
/// beta): negative eigenvalue counts of the two decoupled blocks
///   L+ = -Delta + (1+k) - 3(1+k) w_k^2
///   L- = -Delta + (1-k) - (1+k)(3-b)/(1+b) w_k^2
/// in the radial class.
struct MorseIndexReport {
  double kappa = 0.0;
  double beta = 0.0;
  int index = 0;
  std::vector<double> negative_eigenvalues;
  int sum_block = 0;         // contribution of L+
  int difference_block = 0;  // contribution of L-
};

MorseIndexReport morse_index_on_branch(const GroundState& gs, double kappa,
                                       double beta);

}  // namespace schro
