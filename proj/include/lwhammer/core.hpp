#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lwhammer/errors.hpp"

namespace lwhammer {

/// Physical constants of the pipe and the fluid.
///
/// Pressure follows the linear law p(rho) = p_a + K (rho - rho_a) / rho_a,
/// so the sound speed sqrt(K / rho_a) does not depend on the state.
struct FluidParams {
  double K = 2.5e8;       ///< bulk stiffness [Pa]
  double rho_a = 1000.0;  ///< reference density [kg/m^3]
  double p_a = 1.01e5;    ///< atmospheric pressure [Pa]
  double c_f = 2.0;       ///< friction factor [-]
  double D = 0.2;         ///< pipe diameter [m]

  /// Throws ParameterError unless K, rho_a, D > 0 and c_f, p_a >= 0.
  void validate() const;

  /// Friction coefficient C = c_f / (2 D) [1/m].
  double friction_coefficient() const noexcept { return c_f / (2.0 * D); }

  /// K / rho_a, the squared sound speed [m^2/s^2].
  double stiffness_ratio() const noexcept { return K / rho_a; }

  bool operator==(const FluidParams&) const = default;
};

double pressure_of_density(double rho, const FluidParams& params);
double sound_speed(const FluidParams& params);

/// Uniform node-centred mesh over [0, 2L] with the valve at x = L.
class Grid {
public:
  /// Throws ParameterError if L/dx is not an integer (relative tolerance 1e-9).
  Grid(double length_half, double dx);

  double dx() const noexcept { return dx_; }
  double length_half() const noexcept { return length_half_; }
  std::size_t valve_index() const noexcept { return nx_; }
  std::size_t cells_per_half() const noexcept { return nx_; }
  /// Node count over [0, 2L]: 2 N_x + 1.
  std::size_t n_nodes_full() const noexcept { return 2 * nx_ + 1; }
  /// Node count over [0, L]: N_x + 1.
  std::size_t n_nodes_half() const noexcept { return nx_ + 1; }
  double x(std::size_t j) const noexcept { return static_cast<double>(j) * dx_; }
  std::size_t nearest_node(double x, std::size_t n_nodes) const;

private:
  double length_half_;
  double dx_;
  std::size_t nx_;
};

enum class Phase { PreClosure, PostClosure };

const char* to_string(Phase phase) noexcept;

enum class MonitorKind { Ok, NonPositiveDensity, Supersonic, NonFinite };

const char* to_string(MonitorKind kind) noexcept;

struct MonitorStatus {
  MonitorKind kind = MonitorKind::Ok;
  std::size_t node = 0;
  double value = 0.0;

  bool ok() const noexcept { return kind == MonitorKind::Ok; }
};

/// Density and velocity at every active node at one time level.
struct State {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> v;
  Phase phase = Phase::PreClosure;

  /// Checked construction: sizes must agree and every rho must be > 0.
  static State make(double t, std::vector<double> rho, std::vector<double> v,
                    Phase phase = Phase::PreClosure);

  std::size_t size() const noexcept { return rho.size(); }
};

/// First failing node of: finite values, rho > 0, |v| < sound speed.
MonitorStatus monitor(const State& state, double sound_speed);

/// Initial-data profile of x. Constants and Gaussian pulses are supported so
/// that scenarios stay serialisable.
struct Profile {
  enum class Kind { Constant, Gaussian };

  Kind kind = Kind::Constant;
  double base = 0.0;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;

  static Profile constant(double value);
  /// base + amplitude * exp(-((x - center) / width)^2)
  static Profile gaussian(double base, double amplitude, double center, double width);

  double operator()(double x) const;
  std::string to_text() const;
  bool operator==(const Profile&) const = default;
};

/// Complete description of one experiment.
///
/// A closing time at or beyond t_end means the valve never closes. Setting
/// enforce_cfl to false admits Courant numbers above one for stability
/// experiments; the scheme then runs unchecked.
struct Scenario {
  FluidParams params;
  double length_half = 20.0;
  double dx = 0.1;
  double courant = 0.5;
  double t_close = 0.04;
  double t_end = 0.8;
  Profile rho_init = Profile::constant(1000.0);
  Profile v_init = Profile::constant(1.0);
  double rho_left = 1000.0;
  double rho_right = 1000.0;
  bool enforce_cfl = true;

  void validate() const;
  bool closes() const noexcept { return t_close < t_end; }
  Grid grid() const { return Grid(length_half, dx); }
  bool operator==(const Scenario&) const = default;
};

/// The pipe experiment used throughout for figures: L = 20 m, D = 0.2 m,
/// K = 2.5e8 Pa, c_f = 2, valve closing at 0.04 s, horizon 0.8 s.
Scenario reference_scenario();

}  // namespace lwhammer
