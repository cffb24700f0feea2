#pragma once

#include <span>
#include <vector>

#include "lwhammer/core.hpp"

namespace lwhammer {

/// Central first and second differences. Entries 0 and n-1 are NaN.
struct CentralDiffs {
  std::vector<double> first;
  std::vector<double> second;
};

CentralDiffs central_diffs(std::span<const double> values, double dx);

struct DerivativeStencil {
  std::vector<double> d1_rho, d1_v;
  std::vector<double> d2_rho, d2_v;
};

DerivativeStencil make_stencil(const State& state, double dx);

/// Local space derivatives at one node.
struct NodeJet {
  double rho, v;
  double rho_x, v_x;
  double rho_xx, v_xx;
};

struct NodeRates {
  double rho_t, v_t;
  double rho_tt, v_tt;
};

/// First and second time derivatives of (rho, v) obtained from the
/// quasi-linear system by the Cauchy-Kovalevskaya substitution.
///
///   rho_t = -rho v_x - v rho_x
///   v_t   = -v v_x - a rho_x / rho - C v|v|,     a = K / rho_a
///
/// The second derivatives differentiate these in time and replace every
/// time derivative by the rules above, with d|v|/dt = sign(v) v_t and
/// sign(0) = 0. The v_tt source contribution is -2C|v| v_t, which carries
/// the 2 C^2 v^3 term.
NodeRates node_rates(const NodeJet& jet, const FluidParams& params);

/// Time derivatives per node. Entries outside the interior are NaN.
struct TimeDerivatives {
  std::vector<double> dt_rho, dt_v;
  std::vector<double> dtt_rho, dtt_v;  ///< empty when only the first part was requested
};

/// Throws DomainError naming the node if an interior density is not positive.
TimeDerivatives first_time_derivs(const State& state, const DerivativeStencil& stencil,
                                  const FluidParams& params);
/// Populates both the first and the second derivatives.
TimeDerivatives second_time_derivs(const State& state, const DerivativeStencil& stencil,
                                   const FluidParams& params);

enum class CflPolicy { Enforce, Unchecked };

/// Courant number dt * sqrt(K / rho_a) / dx.
double courant_number(const FluidParams& params, double dx, double dt);

/// courant * dx / c. Throws ParameterError for courant outside (0, 1].
double cfl_max_dt(const FluidParams& params, double dx, double courant);

/// One second-order Taylor step on the interior nodes,
///   u_new = u + dt u_t + dt^2 / 2 u_tt,
/// reading only the old level. End nodes are copied unchanged for the
/// boundary closures. Throws CflError when the Courant number exceeds 1
/// under CflPolicy::Enforce.
State lw_interior_step(const State& state, double dt, double dx, const FluidParams& params,
                       CflPolicy policy = CflPolicy::Enforce);

}  // namespace lwhammer
