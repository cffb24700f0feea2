#include "lwhammer/driver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lwhammer/boundary.hpp"

namespace lwhammer {

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::ValveClosure: return "valve_closure";
    case EventKind::ClosureSnapped: return "closure_snapped";
    case EventKind::ProbeSnapped: return "probe_snapped";
    case EventKind::ProbeDropped: return "probe_dropped";
  }
  return "unknown";
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Snapshot snapshot_of(const State& s, const FluidParams& params) {
  Snapshot snap{s.t, s.phase, s.rho, s.v, std::vector<double>(s.size())};
  for (std::size_t j = 0; j < s.size(); ++j) snap.p[j] = pressure_of_density(s.rho[j], params);
  return snap;
}

double momentum_flux(double rho, double v, const FluidParams& params) {
  return rho * v * v + pressure_of_density(rho, params);
}

class Recorder {
public:
  Recorder(Trajectory& traj, const Recording& rec, const Grid& grid, const FluidParams& params)
      : traj_(traj), rec_(rec), params_(params) {
    for (double x : rec.probe_x) {
      Probe probe;
      probe.requested_x = x;
      probe.node = grid.nearest_node(x, grid.n_nodes_full());
      probe.x_snapped = grid.x(probe.node);
      if (probe.x_snapped != x)
        traj_.events.push_back({0.0, EventKind::ProbeSnapped,
                                "probe " + fmt(x) + " snapped to " + fmt(probe.x_snapped)});
      traj_.probes.push_back(std::move(probe));
    }
  }

  void level(const State& s, std::size_t step, bool force_snapshot) {
    for (auto& probe : traj_.probes) {
      if (probe.node >= s.size()) continue;
      const double r = s.rho[probe.node];
      probe.samples.push_back({s.t, r, s.v[probe.node], pressure_of_density(r, params_)});
    }
    const bool on_stride = rec_.snapshot_stride > 0 && step % rec_.snapshot_stride == 0;
    if (force_snapshot || on_stride) {
      if (!traj_.snapshots.empty() && traj_.snapshots.back().t >= s.t) traj_.snapshots.pop_back();
      traj_.snapshots.push_back(snapshot_of(s, params_));
    }
  }

  void drop_probes_beyond(std::size_t n_active, double t) {
    for (const auto& probe : traj_.probes) {
      if (probe.node >= n_active)
        traj_.events.push_back({t, EventKind::ProbeDropped,
                                "probe at " + fmt(probe.x_snapped) + " lies beyond the closed valve"});
    }
  }

private:
  Trajectory& traj_;
  const Recording& rec_;
  const FluidParams& params_;
};

void watch(const State& s, double c, std::size_t step, RunDiagnostics& diag) {
  const auto status = monitor(s, c);
  if (!status.ok()) {
    throw MonitorAbort(step, status.node, s.t,
                       std::string("monitor: ") + to_string(status.kind) + " at step " +
                           std::to_string(step) + ", node " + std::to_string(status.node) +
                           ", t = " + fmt(s.t) + ", value " + fmt(status.value));
  }
  const auto [rmin, rmax] = std::minmax_element(s.rho.begin(), s.rho.end());
  diag.min_rho = std::min(diag.min_rho, *rmin);
  diag.max_rho = std::max(diag.max_rho, *rmax);
  for (double u : s.v) diag.max_abs_v = std::max(diag.max_abs_v, std::abs(u));
}

}  // namespace

State initial_state(const Scenario& scenario) {
  const Grid grid = scenario.grid();
  const auto n = grid.n_nodes_full();
  std::vector<double> rho(n), v(n);
  for (std::size_t j = 0; j < n; ++j) {
    rho[j] = scenario.rho_init(grid.x(j));
    v[j] = scenario.v_init(grid.x(j));
  }
  return State::make(0.0, std::move(rho), std::move(v), Phase::PreClosure);
}

Trajectory run(const Scenario& scenario, const Recording& recording, const RunOptions& options) {
  scenario.validate();
  const Grid grid = scenario.grid();
  const FluidParams& params = scenario.params;
  const double c = sound_speed(params);
  const double dx = grid.dx();
  const CflPolicy policy = scenario.enforce_cfl ? CflPolicy::Enforce : CflPolicy::Unchecked;
  const double dt = scenario.enforce_cfl ? cfl_max_dt(params, dx, scenario.courant)
                                         : scenario.courant * dx / c;
  const InteriorKernel kernel = options.kernel ? options.kernel : InteriorKernel(lw_interior_step);

  Trajectory traj;
  traj.scenario = scenario;
  traj.dx = dx;
  traj.dt = dt;
  traj.courant = courant_number(params, dx, dt);
  traj.valve_index = grid.valve_index();

  auto n_full = static_cast<std::size_t>(std::floor(scenario.t_end / dt + 1e-9));
  double remainder = scenario.t_end - static_cast<double>(n_full) * dt;
  if (remainder <= 1e-9 * dt) remainder = 0.0;
  const std::size_t n_steps = n_full + (remainder > 0.0 ? 1 : 0);

  bool closes = scenario.closes();
  std::size_t n_close = 0;
  if (closes) {
    n_close = static_cast<std::size_t>(std::llround(scenario.t_close / dt));
    if (n_close > n_full) closes = false;
  }

  BoundarySpec spec{Phase::PreClosure, scenario.rho_left, scenario.rho_right};
  Recorder recorder(traj, recording, grid, params);
  auto& diag = traj.diagnostics;

  State state = initial_state(scenario);
  diag.min_rho = diag.max_rho = state.rho.front();
  watch(state, c, 0, diag);

  auto close = [&](std::size_t step) {
    const double t_snap = static_cast<double>(step) * dt;
    diag.close_snap_distance = std::abs(t_snap - scenario.t_close);
    if (diag.close_snap_distance > 0.0)
      traj.events.push_back({t_snap, EventKind::ClosureSnapped,
                             "closing time " + fmt(scenario.t_close) + " snapped to " + fmt(t_snap)});
    const auto nv = grid.valve_index();
    diag.closure_gradient_mismatch = std::abs(state.rho[nv] - state.rho[nv - 1]);
    double variation = 0.0;
    for (std::size_t j = 0; j + 1 < state.size(); ++j) {
      variation += std::abs(state.rho[j + 1] * state.v[j + 1] - state.rho[j] * state.v[j]);
      variation += std::abs(momentum_flux(state.rho[j + 1], state.v[j + 1], params) -
                            momentum_flux(state.rho[j], state.v[j], params));
    }
    diag.closure_flux_variation = variation;
    state = close_valve(state, grid, t_snap, dt);
    spec.phase = Phase::PostClosure;
    traj.events.push_back({t_snap, EventKind::ValveClosure, "valve closed at x = L"});
    recorder.drop_probes_beyond(state.size(), t_snap);
    if (options.observer) options.observer(state);
  };

  recorder.level(state, 0, true);
  if (options.observer) options.observer(state);
  if (closes && n_close == 0) {
    close(0);
    recorder.level(state, 0, true);
  }

  for (std::size_t k = 1; k <= n_steps; ++k) {
    const bool partial = k > n_full;
    const double h = partial ? remainder : dt;
    state = kernel(state, h, dx, params, policy);
    state.t = partial ? scenario.t_end : static_cast<double>(k) * dt;
    if (state.phase == Phase::PreClosure)
      apply_pre_closure(state, spec, params);
    else
      apply_post_closure(state, spec, params);
    watch(state, c, k, diag);
    if (options.observer) options.observer(state);

    const bool closing_now = closes && k == n_close;
    if (closing_now) close(k);
    recorder.level(state, k, closing_now || k == n_steps);
    diag.steps = k;
    diag.final_step = h;
  }
  return traj;
}

double joukowsky_surge(const FluidParams& params, double delta_v) {
  return params.rho_a * sound_speed(params) * delta_v;
}

double oscillation_period_estimate(std::span<const double> t, std::span<const double> signal) {
  if (t.size() != signal.size()) throw SizeError("time and signal lengths differ");
  if (signal.size() < 4) throw InsufficientDataError("signal too short for a period estimate");
  const auto [lo_it, hi_it] = std::minmax_element(signal.begin(), signal.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) throw InsufficientDataError("constant signal has no oscillation");
  double mean = 0.0;
  for (double s : signal) mean += s;
  mean /= static_cast<double>(signal.size());
  const double h = 0.25 * 0.5 * (hi - lo);
  const double upper = mean + h;
  const double lower = mean - h;

  std::vector<double> edges;
  bool armed = false;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    if (signal[i] < lower) armed = true;
    if (armed && signal[i] > upper && i > 0) {
      const double s0 = signal[i - 1];
      const double s1 = signal[i];
      const double w = (upper - s0) / (s1 - s0);
      edges.push_back(t[i - 1] + w * (t[i] - t[i - 1]));
      armed = false;
    }
  }
  if (edges.size() < 3)
    throw InsufficientDataError("fewer than two full periods in the signal");
  std::vector<double> spacing(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) spacing[i] = edges[i + 1] - edges[i];
  std::sort(spacing.begin(), spacing.end());
  const auto m = spacing.size();
  return m % 2 == 1 ? spacing[m / 2] : 0.5 * (spacing[m / 2 - 1] + spacing[m / 2]);
}

double oscillation_period_estimate(std::span<const ProbeSample> samples) {
  std::vector<double> t(samples.size()), p(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    t[i] = samples[i].t;
    p[i] = samples[i].p;
  }
  return oscillation_period_estimate(t, p);
}

}  // namespace lwhammer
