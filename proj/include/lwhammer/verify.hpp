#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "lwhammer/core.hpp"
#include "lwhammer/driver.hpp"

namespace lwhammer {

// ---------------------------------------------------------------------------
// Method-of-characteristics oracles for scalar transport
// ---------------------------------------------------------------------------

/// C^2 ramp from 0 (x <= -eps) to 1 (x >= eps), odd about (0, 1/2):
/// the quintic smoothstep of s = (x + eps) / (2 eps).
double smoothed_heaviside(double x, double epsilon);

/// Derivative of smoothed_heaviside with respect to x.
double smoothed_heaviside_slope(double x, double epsilon);

/// Scalar transport u_t + c u_x = -b u^2 with data f(x) H_eps(x) and an odd
/// reflection about x = 0. Profiles are sampled on [sample_min, sample_max]
/// when searching for breakdown times.
struct MocOracle {
  std::function<double(double)> profile;
  std::function<double(double)> profile_slope;  ///< optional; central differences otherwise
  double epsilon = 0.1;
  double wave_speed = 1.0;
  double damping = 0.0;
  double sample_min = -10.0;
  double sample_max = 10.0;
  std::size_t samples = 20001;

  void validate() const;
  /// f(xi) H_eps(xi)
  double data(double xi) const;
  /// d/dxi [f(xi) H_eps(xi)]
  double data_slope(double xi) const;
};

/// Two-term reflected solution for constant wave speed c:
///   u = g(x - ct) / (1 + b t g(x - ct)) - g(-x - ct) / (1 - b t g(-x - ct)),
/// g = f H_eps. Each term solves u' = -b u^2 along its characteristic.
/// Throws ParameterError when either denominator is not positive (the
/// damped characteristic has blown up).
double moc_scalar_solution(const MocOracle& oracle, double t, double x);

/// Earliest positive zero over the sampled profile of
///   D(t) = (b g t + 1)^2 + g' c'(u) t,   u = g / (1 + b g t).
/// An empty wave_speed_derivative means constant speed (c' = 0). Returns
/// +infinity when no sample produces a root.
double critical_time(const MocOracle& oracle,
                     const std::function<double(double)>& wave_speed_derivative = {});

// ---------------------------------------------------------------------------
// Observed order of accuracy
// ---------------------------------------------------------------------------

struct MeshLevel {
  double dx = 0.0;
  double dt = 0.0;
};

/// Node values x_j = j dx, j = 0..n-1, at the comparison time.
struct LevelSolution {
  MeshLevel level;
  std::vector<double> values;
};

struct OrderReport {
  std::vector<MeshLevel> mesh_levels;
  std::vector<double> errors;
  std::vector<double> observed_orders;
};

/// Max-norm error of every level against an exact solution, measured on the
/// nodes of the coarsest level. Levels must be ordered coarse to fine with
/// nested grids; orders are log(e_i / e_{i+1}) / log(dt_i / dt_{i+1}).
/// Throws AlignmentError for non-nested or mis-ordered levels.
OrderReport observed_order(std::span<const LevelSolution> levels,
                           const std::function<double(double)>& exact);

/// Same, with each level compared to the next finer one (Richardson
/// self-convergence); the finest level serves only as a reference.
OrderReport observed_order_richardson(std::span<const LevelSolution> levels);

// ---------------------------------------------------------------------------
// Discrete weak residual after valve closure
// ---------------------------------------------------------------------------

/// Tensor-product C^2 bump (1 - s^2)^3 in t and in x, applied with separate
/// weights to the mass and momentum components.
struct TestFunction {
  double t_center = 0.0;
  double x_center = 0.0;
  double t_half = 1.0;
  double x_half = 1.0;
  double mass_weight = 1.0;
  double momentum_weight = 1.0;

  double operator()(double t, double x) const;
  bool operator==(const TestFunction&) const = default;
};

/// The fixed family: 3 centres x 2 scales inside [t_1, T] x [0, L].
std::vector<TestFunction> standard_test_family(double t_close, double t_end, double length_half);

struct WeakFormOptions {
  double t1_line_coefficient = 2.0;
  /// Sign in front of the source term G. +1 gives the weak form of
  /// w_t + F_x = G; -1 reproduces the alternative sign convention.
  double source_sign = 1.0;
};

/// Accumulates I(W) level by level so that long runs need not be stored.
///
/// Cells Omega_j^n = [t_1 + (n-1)dt, t_1 + n dt] x [(j-1)dx, j dx] carry the
/// node value W_j^n = (rho, rho v). Test values are averages over the five-cell
/// cross around each cell (midpoint rule per cell). With phi_j^n these values,
///
///   I = sum W_j^n . (phi_j^n - phi_j^{n-1}) dx
///     + sum F(W_j^n) . (phi_{j+1}^n - phi_{j-1}^n) / 2 dt
///     + s sum G(W_j^n) . phi_j^n dx dt
///     + k sum_j W_j^1 . phi_j^1 dx - sum_n F(W_{N_x}^n) . phi_{N_x}^n dt
///
/// with s the source sign and k the t_1 line coefficient.
class WeakResidualAccumulator {
public:
  /// Throws SupportError when a test function reaches the boundary of
  /// [t_1, T] x [0, L].
  WeakResidualAccumulator(FluidParams params, double dx, double dt, std::size_t valve_index,
                          double t_close, double t_end, std::vector<TestFunction> tests,
                          WeakFormOptions options = {});

  /// Feed post-closure levels in order, starting at t_1. Throws
  /// AlignmentError if a level is off the uniform time grid.
  void add_level(const State& state);

  std::vector<double> residuals() const;
  std::size_t levels_seen() const noexcept { return levels_; }

private:
  double time_factor(const TestFunction& phi, std::ptrdiff_t n) const;
  double cross_average(std::size_t test, std::ptrdiff_t n, std::ptrdiff_t j) const;

  FluidParams params_;
  double dx_, dt_;
  std::size_t nx_;
  double t1_, t_end_;
  std::vector<TestFunction> tests_;
  WeakFormOptions options_;
  std::vector<std::vector<double>> space_factors_;
  std::vector<double> sums_;
  std::size_t levels_ = 0;
};

struct WeakResidualReport {
  std::vector<TestFunction> test_functions;
  std::vector<MeshLevel> mesh_levels;
  std::vector<std::vector<double>> residuals;  ///< [test][level], |I|
  std::vector<std::vector<double>> ratios;     ///< [test][level - 1], |I_i| / |I_{i+1}|
};

/// |I| for every test function on a trajectory that recorded every level
/// after closure (snapshot stride 1).
std::vector<double> weak_residual(const Trajectory& trajectory,
                                  std::span<const TestFunction> tests,
                                  const WeakFormOptions& options = {});

// ---------------------------------------------------------------------------
// Oscillation metrics
// ---------------------------------------------------------------------------

struct OscillationMetrics {
  double overshoot = 0.0;
  double total_variation = 0.0;
  double plateau = 0.0;
};

/// Overshoot (max - plateau) / amplitude and total variation of a
/// post-closure signal. The plateau is the median of the first surge lobe:
/// the samples from the first rise through baseline + (max - baseline) / 2
/// until the signal falls back below that level. The amplitude is
/// `reference_amplitude` when positive (e.g. the Joukowsky surge) and
/// |plateau - baseline| otherwise. Throws InsufficientDataError on an empty
/// signal.
OscillationMetrics oscillation_metrics(std::span<const double> signal,
                                       double reference_amplitude = 0.0);

}  // namespace lwhammer
