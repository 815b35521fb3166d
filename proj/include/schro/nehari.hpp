#pragma once

#include <utility>

#include "schro/branches.hpp"

namespace schro {

struct NehariState {
  std::pair<Profile, Profile> pair;
  double energy = 0.0;
  double residual = 0.0;            // L2 norm of the free gradient
  double on_manifold_defect = 0.0;  // |<I'(u,v),(u,v)>|
  bool converged = false;
  bool positive = false;
  int iterations = 0;
};

/// I(u,v) = 1/2(|u|^2 + |v|^2) + k int uv - 1/4 int(mu1 u^4 + mu2 v^4)
///          - b/2 int u^2 v^2.
/// The quadratic part is evaluated through the grid operator, so the
/// manifold identity I|_M = 1/4(|u|^2 + |v|^2 + 2k int uv) holds exactly
/// in the discrete algebra.
double energy_I(const Params& p, const Profile& u, const Profile& v);

/// Residual profiles (-Du + u + kv - mu1 u^3 - b u v^2,
///                    -Dv + v + ku - mu2 v^3 - b u^2 v).
std::pair<Profile, Profile> gradient_I(const Params& p, const Profile& u,
                                       const Profile& v);

struct NehariProjection {
  double t = 0.0;
  /// One component vanishes identically; (tu, tv) satisfies the manifold
  /// identity but is not in M.
  bool degenerate_component = false;
};

/// The positive scaling t with (tu, tv) on the Nehari manifold:
/// t^2 = (|u|^2 + |v|^2 + 2k int uv) / int(mu1 u^4 + mu2 v^4 + 2b u^2 v^2).
/// Throws NotProjectableError / NotCoerciveError when denominator resp.
/// numerator is not positive.
NehariProjection nehari_t(const Params& p, const Profile& u, const Profile& v);

/// Ground state by projected gradient descent on M: take absolute values,
/// descend along the (-Delta + 1)-preconditioned free gradient with
/// backtracking, re-project; stop when the free gradient norm reaches tol.
/// On max_iter the best iterate is returned with converged = false.
NehariState minimize_ground_state(const Params& p,
                                  std::pair<Profile, Profile> init, double tol,
                                  int max_iter);

}  // namespace schro
