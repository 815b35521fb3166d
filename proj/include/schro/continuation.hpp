#pragma once

#include <utility>
#include <vector>

#include "schro/branches.hpp"
#include "schro/nehari.hpp"

namespace schro {

struct BranchPoint {
  double kappa = 0.0;
  std::pair<Profile, Profile> pair;
  double residual = 0.0;
  double asymmetry = 0.0;  // L2 norm of u - v
  bool positive = false;
  double arclength = 0.0;
  bool quadratic_tail = true;  // Newton ratio test on the last two steps
  int newton_steps = 0;
};

enum class Termination {
  StepLimit,
  LeftParameterWindow,
  NewtonFailure,
  ReconnectedToTrivial,
};

const char* to_string(Termination t);

struct BranchSegment {
  double beta = 0.0;
  BifurcationPoint origin;
  std::vector<BranchPoint> points;
  Termination termination = Termination::StepLimit;
};

/// Full-system residual profiles; with cutoff the pure cubics use the
/// positive parts (u+)^3, (v+)^3.
std::pair<Profile, Profile> system_residual(const Params& p, const Profile& u,
                                            const Profile& v, bool cutoff);

/// Combined L2 norm of the system residual.
double system_residual_norm(const Params& p, const Profile& u,
                            const Profile& v, bool cutoff);

/// Damped Newton on the discretized system (cutoff or not). The cutoff
/// Jacobian uses the weak derivative 3(u+)^2. Throws SingularJacobianError
/// or NewtonFailureError.
BranchPoint newton_solve(const Params& p, std::pair<Profile, Profile> init,
                         bool cutoff, double tol);

/// Switched initial guess (u + eps phi_j, v - eps phi_j) along the kernel
/// direction (phi, -phi); a negative eps selects the mirrored side.
std::pair<Profile, Profile> branch_switch(const BifurcationPoint& bp,
                                          double eps);

/// Pseudo-arclength predictor-corrector in (kappa, u, v) at fixed beta.
/// Secant tangent, bordered Newton corrector, step halving on failure and
/// doubling after three easy successes. p.kappa is ignored; the window
/// kappa in (-1 + 1e-3, 2.5] bounds the trace.
BranchSegment continue_branch(const BranchPoint& seg_start,
                              const BifurcationPoint& origin, const Params& p,
                              double step, int max_points, bool cutoff);

/// True iff the pair also solves the uncut system at the same tolerance;
/// automatic for positive cutoff solutions.
bool verify_cutoff_equivalence(const Params& p, const BranchPoint& bp);

}  // namespace schro
