#pragma once

#include "schro/mesh.hpp"

namespace schro {

/// The positive radial ground state of -Delta w + w = w^3 as a discrete
/// zero of the grid operator. center_value is w(0), which is also the sup
/// norm since the profile decreases in r.
struct GroundState {
  Profile omega;
  double center_value = 0.0;
  double residual_norm = 0.0;
};

/// Two-stage solve: shooting (RK4 + bisection on the initial amplitude)
/// followed by Newton iteration on the grid operator, so the stored
/// profile is a discrete zero of the same operator used by every other
/// module.
GroundState solve_ground_state(const RadialGrid& grid, double tol = 1e-11);

double sup_norm(const GroundState& gs);

/// r -> omega(s*r) by monotone cubic interpolation of the stored profile,
/// zero beyond R/s.
Profile rescale(const GroundState& gs, double s, const RadialGrid& grid);

/// Discrete zero of -Delta w + sigma*w = sigma*w^3 on the grid of gs,
/// obtained by Newton refinement of the rescaled profile
/// omega(sqrt(sigma)*r). This is the building block of the synchronized
/// branches and of the linearized operators along them.
Profile scaled_ground_state(const GroundState& gs, double sigma);

}  // namespace schro
