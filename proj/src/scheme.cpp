#include "lwhammer/scheme.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lwhammer {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Courant numbers within this much of 1 count as 1 (dt = dx / c rounds).
constexpr double kCourantSlack = 1e-12;

void require_interior_density(const State& state) {
  for (std::size_t j = 1; j + 1 < state.size(); ++j) {
    if (!(state.rho[j] > 0.0))
      throw DomainError("non-positive density " + std::to_string(state.rho[j]) + " at node " +
                        std::to_string(j));
  }
}

NodeJet jet_at(const State& s, const DerivativeStencil& st, std::size_t j) {
  return {s.rho[j], s.v[j], st.d1_rho[j], st.d1_v[j], st.d2_rho[j], st.d2_v[j]};
}

void check_stencil(const State& state, const DerivativeStencil& stencil) {
  const auto n = state.size();
  if (stencil.d1_rho.size() != n || stencil.d1_v.size() != n || stencil.d2_rho.size() != n ||
      stencil.d2_v.size() != n)
    throw SizeError("stencil does not match the state size");
}

}  // namespace

CentralDiffs central_diffs(std::span<const double> values, double dx) {
  const auto n = values.size();
  if (n < 3) throw SizeError("central differences need at least 3 values, got " + std::to_string(n));
  CentralDiffs out{std::vector<double>(n, kNaN), std::vector<double>(n, kNaN)};
  const double inv2dx = 1.0 / (2.0 * dx);
  const double invdx2 = 1.0 / (dx * dx);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    out.first[j] = (values[j + 1] - values[j - 1]) * inv2dx;
    out.second[j] = (values[j + 1] - 2.0 * values[j] + values[j - 1]) * invdx2;
  }
  return out;
}

DerivativeStencil make_stencil(const State& state, double dx) {
  auto r = central_diffs(state.rho, dx);
  auto u = central_diffs(state.v, dx);
  return {std::move(r.first), std::move(u.first), std::move(r.second), std::move(u.second)};
}

NodeRates node_rates(const NodeJet& q, const FluidParams& params) {
  const double a = params.stiffness_ratio();
  const double C = params.friction_coefficient();
  const double speed = std::abs(q.v);
  const double inv_rho = 1.0 / q.rho;

  const double rho_t = -q.rho * q.v_x - q.v * q.rho_x;
  const double v_t = -q.v * q.v_x - a * q.rho_x * inv_rho - C * q.v * speed;

  // x-derivatives of the two rates above.
  const double rho_xt = -2.0 * q.rho_x * q.v_x - q.rho * q.v_xx - q.v * q.rho_xx;
  const double v_xt = -q.v_x * q.v_x - q.v * q.v_xx -
                      a * (q.rho_xx * inv_rho - q.rho_x * q.rho_x * inv_rho * inv_rho) -
                      2.0 * C * speed * q.v_x;

  const double rho_tt = -rho_t * q.v_x - q.rho * v_xt - v_t * q.rho_x - q.v * rho_xt;
  const double v_tt = -v_t * q.v_x - q.v * v_xt - a * rho_xt * inv_rho +
                      a * q.rho_x * rho_t * inv_rho * inv_rho - 2.0 * C * speed * v_t;
  return {rho_t, v_t, rho_tt, v_tt};
}

TimeDerivatives first_time_derivs(const State& state, const DerivativeStencil& stencil,
                                  const FluidParams& params) {
  check_stencil(state, stencil);
  require_interior_density(state);
  const auto n = state.size();
  TimeDerivatives td{std::vector<double>(n, kNaN), std::vector<double>(n, kNaN), {}, {}};
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const auto r = node_rates(jet_at(state, stencil, j), params);
    td.dt_rho[j] = r.rho_t;
    td.dt_v[j] = r.v_t;
  }
  return td;
}

TimeDerivatives second_time_derivs(const State& state, const DerivativeStencil& stencil,
                                   const FluidParams& params) {
  check_stencil(state, stencil);
  require_interior_density(state);
  const auto n = state.size();
  TimeDerivatives td{std::vector<double>(n, kNaN), std::vector<double>(n, kNaN),
                     std::vector<double>(n, kNaN), std::vector<double>(n, kNaN)};
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const auto r = node_rates(jet_at(state, stencil, j), params);
    td.dt_rho[j] = r.rho_t;
    td.dt_v[j] = r.v_t;
    td.dtt_rho[j] = r.rho_tt;
    td.dtt_v[j] = r.v_tt;
  }
  return td;
}

double courant_number(const FluidParams& params, double dx, double dt) {
  return dt * sound_speed(params) / dx;
}

double cfl_max_dt(const FluidParams& params, double dx, double courant) {
  if (!(courant > 0.0) || courant > 1.0)
    throw ParameterError("courant number must lie in (0, 1], got " + std::to_string(courant));
  if (!(dx > 0.0)) throw ParameterError("dx must be positive");
  return courant * dx / sound_speed(params);
}

State lw_interior_step(const State& state, double dt, double dx, const FluidParams& params,
                       CflPolicy policy) {
  if (policy == CflPolicy::Enforce) {
    const double co = courant_number(params, dx, dt);
    if (co > 1.0 + kCourantSlack)
      throw CflError(co, "time step violates the CFL bound: Courant number " + std::to_string(co));
  }
  const auto n = state.size();
  if (n < 3) throw SizeError("state needs at least 3 nodes");
  require_interior_density(state);

  State next = state;
  next.t = state.t + dt;
  const double half_dt2 = 0.5 * dt * dt;
  const double inv2dx = 1.0 / (2.0 * dx);
  const double invdx2 = 1.0 / (dx * dx);
  const auto& rho = state.rho;
  const auto& v = state.v;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const NodeJet jet{rho[j],
                      v[j],
                      (rho[j + 1] - rho[j - 1]) * inv2dx,
                      (v[j + 1] - v[j - 1]) * inv2dx,
                      (rho[j + 1] - 2.0 * rho[j] + rho[j - 1]) * invdx2,
                      (v[j + 1] - 2.0 * v[j] + v[j - 1]) * invdx2};
    const auto r = node_rates(jet, params);
    next.rho[j] = rho[j] + dt * r.rho_t + half_dt2 * r.rho_tt;
    next.v[j] = v[j] + dt * r.v_t + half_dt2 * r.v_tt;
  }
  return next;
}

}  // namespace lwhammer
