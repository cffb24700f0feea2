// Command-line front end: single runs, convergence studies, weak-residual
// studies, Courant/mesh sweeps and the scalar characteristic oracle.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical abort.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lwhammer/scenario_io.hpp"
#include "lwhammer/studies.hpp"

namespace fs = std::filesystem;
using namespace lwhammer;

namespace {

Scenario scenario_from(const std::string& file) {
  return file.empty() ? reference_scenario() : load_scenario(file);
}

std::vector<double> default_probes(const Scenario& s) {
  return {0.5 * s.length_half, s.length_half - s.dx};
}

void write_scenario_copy(const fs::path& dir, const Scenario& s) {
  std::ofstream out(dir / "scenario.json");
  out << scenario_to_text(s) << '\n';
}

int cmd_run(const std::string& scenario_file, const fs::path& out, std::vector<double> probes,
            std::size_t stride, std::optional<double> courant, std::optional<double> dx, bool force) {
  Scenario s = scenario_from(scenario_file);
  if (courant) s.courant = *courant;
  if (dx) s.dx = *dx;
  if (s.courant > 1.0) s.enforce_cfl = false;
  s.validate();
  if (probes.empty()) probes = default_probes(s);
  prepare_output_dir(out, force);
  write_scenario_copy(out, s);
  const auto traj = run(s, {probes, stride});
  emit_run_outputs(out, traj);
  std::cout << "steps " << traj.diagnostics.steps << ", dt " << traj.dt << ", max|v| "
            << traj.diagnostics.max_abs_v << "\n";
  for (const auto& e : traj.events) std::cout << "event " << to_string(e.kind) << ": " << e.detail << "\n";
  std::cout << "outputs in " << out.string() << "\n";
  return 0;
}

int cmd_converge(const fs::path& out, bool force) {
  prepare_output_dir(out, force);
  const FrictionDecayConfig fd;
  const auto friction = friction_decay_study(fd);
  Scenario fs_scn;
  fs_scn.dx = fd.dx;
  fs_scn.t_end = fs_scn.t_close = fd.t_end;
  write_order_table(out / "order_friction_decay.csv", fs_scn, friction);

  const AcousticPulseConfig ap;
  const auto pulse = acoustic_pulse_study(ap);
  write_order_table(out / "order_acoustic_pulse.csv", acoustic_pulse_scenario(ap, ap.dx.front()), pulse);

  auto show = [](const char* name, const OrderReport& r) {
    std::cout << name << ":";
    for (double p : r.observed_orders) std::cout << ' ' << p;
    std::cout << "\n";
  };
  show("friction decay observed orders", friction);
  show("acoustic pulse observed orders", pulse);
  return 0;
}

int cmd_weak(const std::string& scenario_file, const fs::path& out, const std::vector<double>& dx,
             double source_sign, bool force) {
  WeakStudyConfig cfg;
  cfg.scenario = scenario_from(scenario_file);
  if (!dx.empty()) cfg.dx = dx;
  cfg.options.source_sign = source_sign;
  prepare_output_dir(out, force);
  const auto rep = weak_residual_study(cfg);
  write_weak_table(out / "weak_residual.csv", cfg.scenario, rep);
  for (std::size_t k = 0; k < rep.ratios.size(); ++k) {
    std::cout << "test " << k << " ratios:";
    for (double r : rep.ratios[k]) std::cout << ' ' << r;
    std::cout << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& scenario_file, const fs::path& out, const std::vector<double>& courant,
              std::vector<double> dx, std::vector<double> probes, std::size_t stride, bool force) {
  const Scenario base = scenario_from(scenario_file);
  if (dx.empty()) dx = {base.dx};
  if (probes.empty()) probes = default_probes(base);
  prepare_output_dir(out, force);
  const auto results = sweep(base, courant, dx, {probes, stride});
  int status = 0;
  for (const auto& r : results) {
    std::ostringstream name;
    name.precision(6);
    name << "co_" << r.courant << "_dx_" << r.dx;
    const fs::path sub = out / name.str();
    fs::create_directories(sub);
    write_scenario_copy(sub, r.trajectory.scenario);
    if (r.aborted) {
      std::ofstream(sub / "aborted.txt") << r.message << '\n';
      std::cout << name.str() << ": aborted (" << r.message << ")\n";
      continue;
    }
    emit_run_outputs(sub, r.trajectory);
    std::cout << name.str() << ": ok, max|v| " << r.trajectory.diagnostics.max_abs_v << "\n";
  }
  return status;
}

int cmd_moc(double amplitude, double width, double epsilon, double speed, double damping,
            double t, double x_max, std::size_t points, bool nonlinear) {
  MocOracle oracle;
  oracle.profile = [=](double x) { return amplitude * std::exp(-std::pow((x - 2.0 * width) / width, 2)); };
  oracle.epsilon = epsilon;
  oracle.wave_speed = speed;
  oracle.damping = damping;
  oracle.sample_max = std::max(10.0 * width, x_max);
  const auto tc = nonlinear ? critical_time(oracle, [](double) { return 1.0; }) : critical_time(oracle);
  std::cout.precision(10);
  std::cout << "# critical_time " << tc << "\n" << "x,u\n";
  for (std::size_t i = 0; i < points; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(points - 1);
    std::cout << x << ',' << moc_scalar_solution(oracle, t, x) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lax-Wendroff water-hammer solver for friction-damped pipe flow"};
  app.require_subcommand(1);

  std::string scenario_file;
  std::string out_dir = "out";
  std::vector<double> probes, dx_list, courant_list;
  std::size_t stride = 10;
  bool force = false;
  std::optional<double> courant, dx;

  auto* run_cmd = app.add_subcommand("run", "simulate one scenario and write probe/heatmap CSVs");
  run_cmd->add_option("--scenario", scenario_file, "scenario JSON (default: reference experiment)");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--probes", probes, "probe positions [m]")->delimiter(',');
  run_cmd->add_option("--stride", stride, "snapshot stride in steps");
  run_cmd->add_option("--courant", courant, "override the Courant number");
  run_cmd->add_option("--dx", dx, "override the mesh spacing");
  run_cmd->add_flag("--force", force, "overwrite a non-empty output directory");

  auto* conv_cmd = app.add_subcommand("converge", "observed-order studies (friction decay, acoustic pulse)");
  conv_cmd->add_option("--out", out_dir, "output directory");
  conv_cmd->add_flag("--force", force, "overwrite a non-empty output directory");

  double source_sign = 1.0;
  auto* weak_cmd = app.add_subcommand("weak", "discrete weak residual on a mesh sequence");
  weak_cmd->add_option("--scenario", scenario_file, "scenario JSON");
  weak_cmd->add_option("--out", out_dir, "output directory");
  weak_cmd->add_option("--dx", dx_list, "mesh spacings, coarse to fine")->delimiter(',');
  weak_cmd->add_option("--source-sign", source_sign, "sign of the friction term in the weak form")
      ->check(CLI::IsMember({-1.0, 1.0}));
  weak_cmd->add_flag("--force", force, "overwrite a non-empty output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a scenario over Courant numbers and meshes");
  sweep_cmd->add_option("--scenario", scenario_file, "scenario JSON");
  sweep_cmd->add_option("--out", out_dir, "output directory");
  sweep_cmd->add_option("--courant", courant_list, "Courant numbers")->delimiter(',')->required();
  sweep_cmd->add_option("--dx", dx_list, "mesh spacings")->delimiter(',');
  sweep_cmd->add_option("--probes", probes, "probe positions [m]")->delimiter(',');
  sweep_cmd->add_option("--stride", stride, "snapshot stride in steps");
  sweep_cmd->add_flag("--force", force, "overwrite a non-empty output directory");

  double amplitude = 1.0, width = 1.0, epsilon = 0.1, speed = 1.0, damping = 0.0, t = 0.0, x_max = 10.0;
  std::size_t points = 101;
  bool nonlinear = false;
  auto* moc_cmd = app.add_subcommand("moc", "reflected characteristic solution of scalar transport");
  moc_cmd->add_option("--amplitude", amplitude);
  moc_cmd->add_option("--width", width);
  moc_cmd->add_option("--epsilon", epsilon);
  moc_cmd->add_option("--speed", speed);
  moc_cmd->add_option("--damping", damping);
  moc_cmd->add_option("--t", t);
  moc_cmd->add_option("--x-max", x_max);
  moc_cmd->add_option("--points", points)->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  moc_cmd->add_flag("--burgers", nonlinear, "report the breaking time for c(u) = u");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(scenario_file, out_dir, probes, stride, courant, dx, force);
    if (*conv_cmd) return cmd_converge(out_dir, force);
    if (*weak_cmd) return cmd_weak(scenario_file, out_dir, dx_list, source_sign, force);
    if (*sweep_cmd) return cmd_sweep(scenario_file, out_dir, courant_list, dx_list, probes, stride, force);
    if (*moc_cmd) return cmd_moc(amplitude, width, epsilon, speed, damping, t, x_max, points, nonlinear);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
