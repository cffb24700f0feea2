#include "lwhammer/studies.hpp"

#include <cmath>
#include <exception>
#include <thread>

namespace lwhammer {

namespace {

// Runs fn(i) for i in [0, n) on separate threads and rethrows the first
// failure in index order.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pool.emplace_back([&, i] {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

LevelSolution final_level(const Trajectory& traj, bool density) {
  const auto& last = traj.snapshots.back();
  return {{traj.dx, traj.dt}, density ? last.rho : last.v};
}

}  // namespace

double friction_decay_exact(const FluidParams& params, double v0, double t) {
  return v0 / (1.0 + params.friction_coefficient() * std::abs(v0) * t);
}

OrderReport friction_decay_study(const FrictionDecayConfig& config, const InteriorKernel& kernel) {
  if (config.courant.size() < 2) throw InsufficientDataError("need at least two Courant numbers");
  std::vector<LevelSolution> levels(config.courant.size());
  parallel_for(levels.size(), [&](std::size_t i) {
    Scenario sc;
    sc.params = config.params;
    sc.dx = config.dx;
    sc.courant = config.courant[i];
    sc.t_end = config.t_end;
    sc.t_close = config.t_end;
    sc.rho_init = Profile::constant(config.params.rho_a);
    sc.v_init = Profile::constant(config.v0);
    sc.rho_left = sc.rho_right = config.params.rho_a;
    levels[i] = final_level(run(sc, {}, {kernel, {}}), false);
  });
  const double exact = friction_decay_exact(config.params, config.v0, config.t_end);
  return observed_order(levels, [exact](double) { return exact; });
}

Scenario acoustic_pulse_scenario(const AcousticPulseConfig& config, double dx) {
  Scenario sc;
  sc.params = config.params;
  sc.params.c_f = 0.0;
  sc.length_half = config.length_half;
  sc.dx = dx;
  sc.courant = config.courant;
  sc.t_end = config.t_end;
  sc.t_close = config.t_end;
  const double rho_a = config.params.rho_a;
  sc.rho_init = Profile::gaussian(rho_a, config.amplitude, config.length_half, config.width);
  sc.v_init = Profile::constant(0.0);
  sc.rho_left = sc.rho_right = rho_a;
  return sc;
}

OrderReport acoustic_pulse_study(const AcousticPulseConfig& config, const InteriorKernel& kernel) {
  std::vector<LevelSolution> levels(config.dx.size());
  parallel_for(levels.size(), [&](std::size_t i) {
    levels[i] = final_level(run(acoustic_pulse_scenario(config, config.dx[i]), {}, {kernel, {}}), true);
  });
  return observed_order_richardson(levels);
}

WeakResidualReport weak_residual_study(const WeakStudyConfig& config) {
  const Scenario& base = config.scenario;
  if (!base.closes()) throw PhaseError("weak residual needs a closing valve");
  if (config.dx.size() < 2) throw InsufficientDataError("need at least two meshes");

  WeakResidualReport rep;
  rep.test_functions = config.tests.empty()
                           ? standard_test_family(base.t_close, base.t_end, base.length_half)
                           : config.tests;
  const std::size_t n_tests = rep.test_functions.size();
  std::vector<std::vector<double>> per_level(config.dx.size());
  rep.mesh_levels.resize(config.dx.size());

  parallel_for(config.dx.size(), [&](std::size_t i) {
    Scenario sc = base;
    sc.dx = config.dx[i];
    sc.validate();
    const double dt = cfl_max_dt(sc.params, sc.dx, sc.courant);
    const double t1 = static_cast<double>(std::llround(sc.t_close / dt)) * dt;
    WeakResidualAccumulator acc(sc.params, sc.dx, dt, sc.grid().valve_index(), t1, sc.t_end,
                                rep.test_functions, config.options);
    RunOptions opts;
    opts.observer = [&](const State& s) {
      if (s.phase == Phase::PostClosure && s.t <= sc.t_end) {
        // The remainder step of an off-grid t_end falls outside the support.
        if (std::abs(s.t - (t1 + static_cast<double>(acc.levels_seen()) * dt)) <= 1e-6 * dt)
          acc.add_level(s);
      }
    };
    run(sc, {}, opts);
    rep.mesh_levels[i] = {sc.dx, dt};
    per_level[i] = acc.residuals();
  });

  rep.residuals.assign(n_tests, std::vector<double>(config.dx.size()));
  rep.ratios.assign(n_tests, std::vector<double>(config.dx.size() - 1));
  for (std::size_t k = 0; k < n_tests; ++k) {
    for (std::size_t i = 0; i < config.dx.size(); ++i) rep.residuals[k][i] = std::abs(per_level[i][k]);
    for (std::size_t i = 0; i + 1 < config.dx.size(); ++i)
      rep.ratios[k][i] = rep.residuals[k][i] / rep.residuals[k][i + 1];
  }
  return rep;
}

std::vector<SweepResult> sweep(const Scenario& base, const std::vector<double>& courant,
                               const std::vector<double>& dx, const Recording& recording) {
  std::vector<SweepResult> out;
  for (double h : dx)
    for (double co : courant) out.push_back({co, h, false, {}, {}});
  parallel_for(out.size(), [&](std::size_t i) {
    Scenario sc = base;
    sc.courant = out[i].courant;
    sc.dx = out[i].dx;
    if (sc.courant > 1.0) sc.enforce_cfl = false;
    try {
      out[i].trajectory = run(sc, recording);
    } catch (const NumericalAbort& e) {
      out[i].aborted = true;
      out[i].message = e.what();
      out[i].trajectory.scenario = sc;
    }
  });
  return out;
}

}  // namespace lwhammer
