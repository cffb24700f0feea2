// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance        run all criteria
//   acceptance <k>    run criterion k only (1..10)
//
// Exit status is 0 only if every selected criterion passes, including its
// runtime budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures/reference_kernels.hpp"
#include "lwhammer/studies.hpp"

using namespace lwhammer;

namespace {

// Tolerances are pinned here.
constexpr double kConstantStateTol = 1e-11;
constexpr double kFrictionOrderLo = 1.8, kFrictionOrderHi = 2.2;
constexpr double kPulseOrderLo = 1.7, kPulseOrderHi = 2.3;
constexpr double kMaxStableSpeed = 2.0;
constexpr double kSurgeTol = 0.20;
constexpr double kPeriodTol = 0.10;
constexpr double kWeakRatioLo = 1.5, kWeakRatioHi = 3.0;
constexpr double kPlateauTol = 1e-12;
constexpr double kCrossingTol = 0.02;
constexpr double kFixtureOrderLo = 0.8, kFixtureOrderHi = 1.2;
constexpr double kSchemeOrderMin = 1.7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

std::string join(const std::vector<double>& xs) {
  std::ostringstream os;
  os.precision(4);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  return "[" + os.str() + "]";
}

bool all_within(const std::vector<double>& xs, double lo, double hi) {
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return x >= lo && x <= hi; });
}

// Post-closure samples of a probe (the closing level included).
std::vector<ProbeSample> after(const Probe& probe, double t1) {
  std::vector<ProbeSample> out;
  for (const auto& s : probe.samples)
    if (s.t >= t1 - 1e-12) out.push_back(s);
  return out;
}

std::vector<double> pressures(const std::vector<ProbeSample>& samples) {
  std::vector<double> p;
  for (const auto& s : samples) p.push_back(s.p);
  return p;
}

double closing_time(const Trajectory& traj) {
  for (const auto& e : traj.events)
    if (e.kind == EventKind::ValveClosure) return e.t;
  return traj.scenario.t_end;
}

// ---------------------------------------------------------------------------

Outcome constant_state() {
  Scenario s = reference_scenario();
  s.params.c_f = 0.0;
  s.t_end = 1000 * cfl_max_dt(s.params, s.dx, s.courant);
  s.t_close = s.t_end;
  const auto traj = run(s, {{}, 1});
  double dev = 0.0;
  for (const auto& snap : traj.snapshots)
    for (std::size_t j = 0; j < snap.rho.size(); ++j) {
      dev = std::max(dev, std::abs(snap.rho[j] - 1000.0) / 1000.0);
      dev = std::max(dev, std::abs(snap.v[j] - 1.0));
    }
  std::ostringstream os;
  os << traj.diagnostics.steps << " steps, max relative deviation " << dev << " (tol " << kConstantStateTol
     << ")";
  return {traj.diagnostics.steps == 1000 && dev <= kConstantStateTol, os.str()};
}

Outcome friction_order() {
  const auto rep = friction_decay_study({});
  return {all_within(rep.observed_orders, kFrictionOrderLo, kFrictionOrderHi),
          "dt {4e-4, 2e-4, 1e-4}: orders " + join(rep.observed_orders) + " in [1.8, 2.2]"};
}

Outcome pulse_order() {
  const auto rep = acoustic_pulse_study({});
  return {all_within(rep.observed_orders, kPulseOrderLo, kPulseOrderHi),
          "dx {0.4, 0.2, 0.1} (0.05 as reference): Richardson orders " + join(rep.observed_orders) +
              " in [1.7, 2.3]"};
}

Outcome cfl_dichotomy() {
  const Scenario s = reference_scenario();
  const auto stable = run(s, {});
  const bool stable_ok = stable.diagnostics.max_abs_v <= kMaxStableSpeed &&
                         std::abs(stable.snapshots.back().t - s.t_end) < 1e-12;
  Scenario fast = s;
  fast.courant = 1.5;
  fast.enforce_cfl = false;
  std::ostringstream os;
  os << "Co 0.5 reached T with max|v| " << stable.diagnostics.max_abs_v;
  bool aborted = false;
  try {
    run(fast, {});
    os << "; Co 1.5 completed without abort";
  } catch (const MonitorAbort& e) {
    aborted = e.time() < fast.t_end;
    os << "; Co 1.5 aborted at step " << e.step() << ", t = " << e.time();
  }
  return {stable_ok && aborted, os.str()};
}

Outcome surge_and_period() {
  const Scenario s = reference_scenario();
  const double x_probe = s.length_half - s.dx;  // node next to the valve
  const auto traj = run(s, {{x_probe}, 0});
  const double t1 = closing_time(traj);
  const auto& probe = traj.probes.front();

  double p_before = 0.0;
  for (const auto& smp : probe.samples)
    if (smp.t < t1 - 1e-12) p_before = smp.p;
  const auto post = after(probe, t1);
  const auto p = pressures(post);
  const double rise = *std::max_element(p.begin(), p.end()) - p_before;

  const double v_before = friction_decay_exact(s.params, 1.0, t1);
  const double joukowsky = joukowsky_surge(s.params, v_before);
  const double period = oscillation_period_estimate(post);
  const double period_ref = 4.0 * s.length_half / sound_speed(s.params);

  const double surge_err = std::abs(rise - joukowsky) / joukowsky;
  const double period_err = std::abs(period - period_ref) / period_ref;
  std::ostringstream os;
  os << "probe x = " << probe.x_snapped << ": rise " << rise << " Pa vs Joukowsky " << joukowsky << " ("
     << 100 * surge_err << "%), period " << period << " s vs " << period_ref << " s (" << 100 * period_err
     << "%)";
  return {surge_err <= kSurgeTol && period_err <= kPeriodTol, os.str()};
}

Outcome tv_ordering() {
  const Scenario base = reference_scenario();
  const double x_probe = 0.5 * base.length_half;
  const auto results = sweep(base, {1.0, 0.5, 0.1}, {base.dx}, {{x_probe}, 0});
  std::vector<double> tv;
  for (const auto& r : results) {
    if (r.aborted) return {false, "run at Co " + std::to_string(r.courant) + " aborted: " + r.message};
    const auto post = after(r.trajectory.probes.front(), closing_time(r.trajectory));
    tv.push_back(oscillation_metrics(pressures(post)).total_variation);
  }
  return {tv[0] < tv[1] && tv[1] < tv[2], "TV at x = L/2 for Co {1, 0.5, 0.1}: " + join(tv)};
}

Outcome mesh_sensitivity() {
  const Scenario base = reference_scenario();
  const double x_probe = 0.5 * base.length_half;
  const auto results = sweep(base, {0.1}, {0.5, 0.1, 0.05}, {{x_probe}, 0});
  const double joukowsky = joukowsky_surge(base.params, friction_decay_exact(base.params, 1.0, base.t_close));
  std::vector<double> overshoot;
  for (const auto& r : results) {
    if (r.aborted) return {false, "run at dx " + std::to_string(r.dx) + " aborted: " + r.message};
    const auto post = after(r.trajectory.probes.front(), closing_time(r.trajectory));
    overshoot.push_back(oscillation_metrics(pressures(post), joukowsky).overshoot);
  }
  const bool non_increasing = overshoot[1] <= overshoot[0] && overshoot[2] <= overshoot[1];
  return {non_increasing, "overshoot/|J| at x = L/2 for dx {0.5, 0.1, 0.05}: " + join(overshoot) +
                              " (required non-increasing)"};
}

Outcome weak_convergence() {
  const auto rep = weak_residual_study({});
  bool ok = true;
  std::ostringstream os;
  os << "ratios per bump (dx 0.2/0.1, 0.1/0.05):";
  for (const auto& r : rep.ratios) {
    ok = ok && all_within(r, kWeakRatioLo, kWeakRatioHi);
    os << ' ' << join(r);
  }
  return {ok, os.str()};
}

// Integrates characteristics dx/dt = c(u), du/dt = -b u^2 with RK4 from a
// fine grid of feet and returns the first time two neighbours meet.
double first_crossing(const MocOracle& o, const std::function<double(double)>& speed, double xi_lo,
                      double xi_hi, std::size_t n, double dt, double t_max) {
  std::vector<double> x(n), u(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = xi_lo + (xi_hi - xi_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    u[i] = o.data(x[i]);
  }
  const double b = o.damping;
  for (double t = 0.0; t < t_max; t += dt) {
    for (std::size_t i = 0; i < n; ++i) {
      auto fu = [&](double uu) { return -b * uu * uu; };
      const double k1u = fu(u[i]), k1x = speed(u[i]);
      const double k2u = fu(u[i] + 0.5 * dt * k1u), k2x = speed(u[i] + 0.5 * dt * k1u);
      const double k3u = fu(u[i] + 0.5 * dt * k2u), k3x = speed(u[i] + 0.5 * dt * k2u);
      const double k4u = fu(u[i] + dt * k3u), k4x = speed(u[i] + dt * k3u);
      x[i] += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
      u[i] += dt / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (x[i + 1] <= x[i]) return t + dt;
  }
  return std::numeric_limits<double>::infinity();
}

Outcome moc_suite() {
  std::ostringstream os;
  // Transport identity where H_eps = 1 and the image term vanishes.
  MocOracle transport;
  transport.profile = [](double x) { return 2.0 + std::sin(x); };
  transport.wave_speed = 1.5;
  double transport_err = 0.0;
  for (double t : {0.0, 0.4, 1.1})
    for (double x : {1.0, 2.5, 4.0}) {
      const double xx = x + 1.5 * t;
      transport_err = std::max(transport_err, std::abs(moc_scalar_solution(transport, t, xx) -
                                                       (2.0 + std::sin(xx - 1.5 * t))));
    }

  // Damped plateau f = 1.
  MocOracle plateau;
  plateau.profile = [](double) { return 1.0; };
  plateau.damping = 0.7;
  double plateau_err = 0.0;
  for (double t : {0.1, 1.0, 3.0})
    plateau_err = std::max(plateau_err, std::abs(moc_scalar_solution(plateau, t, 4.0 + t) - 1.0 / (0.7 * t + 1.0)));

  // Gradient catastrophe for c(u) = u, b = 0.
  MocOracle wave;
  wave.profile = [](double x) { return 1.0 - 0.5 * std::tanh(x - 3.0); };
  wave.sample_min = 0.0;
  wave.sample_max = 8.0;
  const double t_star = critical_time(wave, [](double) { return 1.0; });
  const double t_cross = first_crossing(wave, [](double u) { return u; }, 0.0, 8.0, 8001, 1e-3, 10.0);
  const double cross_err = std::abs(t_star - t_cross) / t_cross;

  os << "transport error " << transport_err << ", plateau error " << plateau_err << ", t* " << t_star
     << " vs crossing " << t_cross << " (" << 100 * cross_err << "%)";
  return {transport_err == 0.0 && plateau_err <= kPlateauTol && cross_err <= kCrossingTol, os.str()};
}

Outcome harness_discrimination() {
  const auto lw_f = friction_decay_study({});
  const auto up_f = friction_decay_study({}, fixtures::upwind_step);
  const auto lw_p = acoustic_pulse_study({});
  const auto up_p = acoustic_pulse_study({}, fixtures::upwind_step);
  auto min_of = [](const std::vector<double>& xs) { return *std::min_element(xs.begin(), xs.end()); };
  const bool ok = all_within(up_f.observed_orders, kFixtureOrderLo, kFixtureOrderHi) &&
                  all_within(up_p.observed_orders, kFixtureOrderLo, kFixtureOrderHi) &&
                  min_of(lw_f.observed_orders) >= kSchemeOrderMin && min_of(lw_p.observed_orders) >= kSchemeOrderMin;
  return {ok, "friction decay: LW " + join(lw_f.observed_orders) + ", upwind " + join(up_f.observed_orders) +
                  "; acoustic pulse: LW " + join(lw_p.observed_orders) + ", upwind " +
                  join(up_p.observed_orders)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "constant-state preservation", 1.0, constant_state},
      {2, "friction-decay temporal order", 5.0, friction_order},
      {3, "joint-refinement order with live boundaries", 30.0, pulse_order},
      {4, "CFL dichotomy", 60.0, cfl_dichotomy},
      {5, "water-hammer surge and period", 60.0, surge_and_period},
      {6, "oscillation ordering in Courant number", 180.0, tv_ordering},
      {7, "mesh-sensitivity overshoot trend", 300.0, mesh_sensitivity},
      {8, "weak-residual convergence", 300.0, weak_convergence},
      {9, "characteristic oracle suite", 5.0, moc_suite},
      {10, "order-harness discrimination", 60.0, harness_discrimination},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  bool all_pass = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs <= c.budget_s;
    const bool pass = out.pass && in_budget;
    all_pass = all_pass && pass;
    std::printf("[%s] criterion %d: %s | %s | %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.budget_s, in_budget ? "" : ", exceeded");
  }
  return all_pass ? 0 : 1;
}
