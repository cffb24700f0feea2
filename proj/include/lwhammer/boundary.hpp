#pragma once

#include "lwhammer/core.hpp"

namespace lwhammer {

/// Reservoir densities and the current boundary regime. After closure the
/// right reservoir no longer takes part.
struct BoundarySpec {
  Phase phase = Phase::PreClosure;
  double rho_left = 1000.0;
  double rho_right = 1000.0;
};

/// Velocity at a reservoir end from the discrete mass balance
///   P0 (V1 - V0) + V0 (P1 - P0) = 0  =>  V0 = P0 V1 / (2 P0 - P1).
/// Throws BoundaryDegeneracyError when |2 P0 - P1| < 1e-9 rho_a.
double reservoir_velocity(double rho_end, double rho_neighbor, double v_neighbor,
                          const FluidParams& params);

/// Pins both end densities to the reservoirs and sets both end velocities
/// from the already-updated neighbours.
void apply_pre_closure(State& state, const BoundarySpec& spec, const FluidParams& params);

/// Restricts a pre-closure state to [0, L] at the closing instant: the left
/// half is kept, the valve velocity becomes 0 and the valve density copies
/// its left neighbour. Throws PhaseError if the state is already closed or
/// |state.t - t_close| exceeds half a step.
State close_valve(const State& state, const Grid& grid, double t_close, double dt);

/// Left end as before closure; valve end V = 0, P(L) = P(L - dx).
void apply_post_closure(State& state, const BoundarySpec& spec, const FluidParams& params);

}  // namespace lwhammer
