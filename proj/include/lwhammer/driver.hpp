#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lwhammer/core.hpp"
#include "lwhammer/scheme.hpp"

namespace lwhammer {

/// Which data a run keeps. Probes are sampled every step; snapshots every
/// `snapshot_stride` steps (0 keeps only the initial and final levels).
struct Recording {
  std::vector<double> probe_x;
  std::size_t snapshot_stride = 0;
};

struct Snapshot {
  double t = 0.0;
  Phase phase = Phase::PreClosure;
  std::vector<double> rho, v, p;
};

struct ProbeSample {
  double t, rho, v, p;
};

struct Probe {
  double requested_x = 0.0;
  double x_snapped = 0.0;
  std::size_t node = 0;
  std::vector<ProbeSample> samples;
};

enum class EventKind { ValveClosure, ClosureSnapped, ProbeSnapped, ProbeDropped };

const char* to_string(EventKind kind) noexcept;

struct Event {
  double t = 0.0;
  EventKind kind = EventKind::ValveClosure;
  std::string detail;
};

/// Bounds watched during a run. The closure entries describe the state just
/// before the valve shuts; they stay zero when the valve never closes.
struct RunDiagnostics {
  std::size_t steps = 0;
  double final_step = 0.0;         ///< length of the last step (a remainder when t_end is off-grid)
  double close_snap_distance = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double max_abs_v = 0.0;
  double closure_gradient_mismatch = 0.0;  ///< |rho(L) - rho(L - dx)| at t_1-
  double closure_flux_variation = 0.0;     ///< sum_j |F(W_{j+1}) - F(W_j)| at t_1-
};

struct Trajectory {
  Scenario scenario;
  double dx = 0.0;
  double dt = 0.0;
  double courant = 0.0;
  std::size_t valve_index = 0;
  std::vector<Snapshot> snapshots;
  std::vector<Probe> probes;
  std::vector<Event> events;
  RunDiagnostics diagnostics;
};

/// Replacement for the interior update, e.g. a reference scheme in tests.
using InteriorKernel =
    std::function<State(const State&, double dt, double dx, const FluidParams&, CflPolicy)>;

/// Called with every time level, including the initial one. At the closing
/// instant it sees the last open level and then the freshly closed one.
using LevelObserver = std::function<void(const State&)>;

struct RunOptions {
  InteriorKernel kernel;  ///< defaults to lw_interior_step
  LevelObserver observer;
};

State initial_state(const Scenario& scenario);

/// Marches the scenario through both phases. Deterministic for a given
/// scenario. Throws MonitorAbort (with the step and node) when density
/// vanishes, a velocity reaches the sound speed, or a value is not finite.
Trajectory run(const Scenario& scenario, const Recording& recording, const RunOptions& options = {});

/// Classical instantaneous-closure surge rho_a * c * delta_v [Pa].
double joukowsky_surge(const FluidParams& params, double delta_v);

/// Dominant period of a probe signal from the spacing of its rising edges.
/// An edge is a passage from below mean - h to above mean + h with h a
/// quarter of the half range; the median spacing is returned. Throws
/// InsufficientDataError with fewer than three edges.
double oscillation_period_estimate(std::span<const double> t, std::span<const double> signal);

/// Convenience overload reading the pressure column of a probe.
double oscillation_period_estimate(std::span<const ProbeSample> samples);

}  // namespace lwhammer
