#include "lwhammer/boundary.hpp"

#include <cmath>
#include <string>

namespace lwhammer {

double reservoir_velocity(double rho_end, double rho_neighbor, double v_neighbor,
                          const FluidParams& params) {
  const double denom = 2.0 * rho_end - rho_neighbor;
  if (std::abs(denom) < 1e-9 * params.rho_a)
    throw BoundaryDegeneracyError("reservoir closure denominator 2P0 - P1 = " +
                                  std::to_string(denom) + " vanishes");
  return rho_end * v_neighbor / denom;
}

void apply_pre_closure(State& state, const BoundarySpec& spec, const FluidParams& params) {
  if (state.phase != Phase::PreClosure || spec.phase != Phase::PreClosure)
    throw PhaseError("pre-closure boundaries applied to a closed pipe");
  const auto n = state.size();
  if (n < 3) throw SizeError("state needs at least 3 nodes");
  state.rho[0] = spec.rho_left;
  state.v[0] = reservoir_velocity(state.rho[0], state.rho[1], state.v[1], params);
  state.rho[n - 1] = spec.rho_right;
  state.v[n - 1] = reservoir_velocity(state.rho[n - 1], state.rho[n - 2], state.v[n - 2], params);
}

State close_valve(const State& state, const Grid& grid, double t_close, double dt) {
  if (state.phase != Phase::PreClosure) throw PhaseError("valve is already closed");
  if (std::abs(state.t - t_close) > 0.5 * dt)
    throw PhaseError("valve closure requested at t = " + std::to_string(state.t) +
                     ", expected " + std::to_string(t_close));
  if (state.size() != grid.n_nodes_full())
    throw SizeError("pre-closure state does not span [0, 2L]");
  const auto nv = grid.valve_index();
  State post;
  post.t = state.t;
  post.phase = Phase::PostClosure;
  post.rho.assign(state.rho.begin(), state.rho.begin() + static_cast<std::ptrdiff_t>(nv + 1));
  post.v.assign(state.v.begin(), state.v.begin() + static_cast<std::ptrdiff_t>(nv + 1));
  post.v[nv] = 0.0;
  post.rho[nv] = post.rho[nv - 1];
  return post;
}

void apply_post_closure(State& state, const BoundarySpec& spec, const FluidParams& params) {
  if (state.phase != Phase::PostClosure || spec.phase != Phase::PostClosure)
    throw PhaseError("post-closure boundaries applied to an open pipe");
  const auto n = state.size();
  if (n < 3) throw SizeError("state needs at least 3 nodes");
  state.rho[0] = spec.rho_left;
  state.v[0] = reservoir_velocity(state.rho[0], state.rho[1], state.v[1], params);
  state.v[n - 1] = 0.0;
  state.rho[n - 1] = state.rho[n - 2];
}

}  // namespace lwhammer
