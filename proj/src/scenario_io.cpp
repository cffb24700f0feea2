#include "lwhammer/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lwhammer {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::set<std::string> kKnownKeys = {
    "length_half", "dx",    "courant", "t_close", "t_end",    "K",         "beta",       "rho_a",
    "p_a",         "c_f",   "D",       "rho_init", "v_init",  "rho_left", "rho_right", "enforce_cfl"};

double number_at(const json& obj, const std::string& key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ParseError(key, "expected a number");
  const double x = it->get<double>();
  if (!std::isfinite(x)) throw ParseError(key, "value is not finite");
  return x;
}

Profile profile_at(const json& obj, const std::string& key, const Profile& fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (it->is_number()) return Profile::constant(it->get<double>());
  if (it->is_object() && it->size() == 1 && it->contains("gaussian")) {
    const auto& a = (*it)["gaussian"];
    if (!a.is_array() || a.size() != 4)
      throw ParseError(key, "gaussian needs [base, amplitude, center, width]");
    for (const auto& e : a)
      if (!e.is_number()) throw ParseError(key, "gaussian parameters must be numbers");
    const double width = a[3].get<double>();
    if (!(width > 0.0)) throw ParseError(key, "gaussian width must be positive");
    return Profile::gaussian(a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), width);
  }
  throw ParseError(key, "expected a number or {\"gaussian\": [base, amplitude, center, width]}");
}

json profile_json(const Profile& p) {
  if (p.kind == Profile::Kind::Constant) return p.base;
  return json{{"gaussian", {p.base, p.amplitude, p.center, p.width}}};
}

json scenario_json(const Scenario& s) {
  return json{{"length_half", s.length_half},
              {"dx", s.dx},
              {"courant", s.courant},
              {"t_close", s.t_close},
              {"t_end", s.t_end},
              {"K", s.params.K},
              {"rho_a", s.params.rho_a},
              {"p_a", s.params.p_a},
              {"c_f", s.params.c_f},
              {"D", s.params.D},
              {"rho_init", profile_json(s.rho_init)},
              {"v_init", profile_json(s.v_init)},
              {"rho_left", s.rho_left},
              {"rho_right", s.rho_right},
              {"enforce_cfl", s.enforce_cfl}};
}

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw ValidationError("cannot write " + file.string());
  out.precision(17);
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ParseError("<document>", "scenario must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!kKnownKeys.count(key)) throw ParseError(key, "unknown key");
  if (doc.contains("K") && doc.contains("beta")) throw ParseError("beta", "give either K or beta, not both");

  Scenario s;
  s.length_half = number_at(doc, "length_half", s.length_half);
  s.dx = number_at(doc, "dx", s.dx);
  s.courant = number_at(doc, "courant", s.courant);
  s.t_close = number_at(doc, "t_close", s.t_close);
  s.t_end = number_at(doc, "t_end", s.t_end);
  s.params.K = number_at(doc, "K", s.params.K);
  if (doc.contains("beta")) {
    const double beta = number_at(doc, "beta", 0.0);
    if (!(beta > 0.0)) throw ParseError("beta", "compressibility must be positive");
    s.params.K = 1.0 / beta;
  }
  s.params.rho_a = number_at(doc, "rho_a", s.params.rho_a);
  s.params.p_a = number_at(doc, "p_a", s.params.p_a);
  s.params.c_f = number_at(doc, "c_f", s.params.c_f);
  s.params.D = number_at(doc, "D", s.params.D);
  s.rho_init = profile_at(doc, "rho_init", s.rho_init);
  s.v_init = profile_at(doc, "v_init", s.v_init);
  s.rho_left = number_at(doc, "rho_left", s.rho_left);
  s.rho_right = number_at(doc, "rho_right", s.rho_right);
  if (const auto it = doc.find("enforce_cfl"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError("enforce_cfl", "expected true or false");
    s.enforce_cfl = it->get<bool>();
  }
  s.validate();
  return s;
}

Scenario load_scenario(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_text(const Scenario& scenario) { return scenario_json(scenario).dump(2); }

std::string scenario_hash(const Scenario& scenario) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : scenario_to_text(scenario)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void prepare_output_dir(const fs::path& dir, bool force) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) throw OutputExistsError(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir) && !force)
      throw OutputExistsError(dir.string() + " is not empty; pass --force to overwrite");
  }
  fs::create_directories(dir);
}

std::string provenance_header(const Scenario& scenario) {
  std::string out = "# scenario_hash " + scenario_hash(scenario) + "\n";
  out += "# scenario " + scenario_json(scenario).dump() + "\n";
  return out;
}

void write_probe_csv(const fs::path& file, const Trajectory& traj, const Probe& probe) {
  auto out = open_out(file);
  out << provenance_header(traj.scenario);
  out << "# requested_x " << probe.requested_x << "\n";
  out << "t,x_snapped,rho,v,p\n";
  for (const auto& s : probe.samples)
    out << s.t << ',' << probe.x_snapped << ',' << s.rho << ',' << s.v << ',' << s.p << '\n';
}

void write_heatmap_csv(const fs::path& file, const Trajectory& traj, HeatmapField field) {
  auto out = open_out(file);
  out << provenance_header(traj.scenario);
  out << "# row: t, then node values at x_j = j * " << traj.dx << "\n";
  for (const auto& snap : traj.snapshots) {
    out << snap.t;
    const auto& values = field == HeatmapField::Velocity ? snap.v : snap.p;
    for (double x : values) out << ',' << x;
    out << '\n';
  }
}

void write_order_table(const fs::path& file, const Scenario& scenario, const OrderReport& report) {
  auto out = open_out(file);
  out << provenance_header(scenario);
  out << "dx,dt,error,observed_order\n";
  for (std::size_t i = 0; i < report.errors.size(); ++i) {
    out << report.mesh_levels[i].dx << ',' << report.mesh_levels[i].dt << ',' << report.errors[i] << ',';
    if (i < report.observed_orders.size()) out << report.observed_orders[i];
    out << '\n';
  }
}

void write_weak_table(const fs::path& file, const Scenario& scenario, const WeakResidualReport& report) {
  auto out = open_out(file);
  out << provenance_header(scenario);
  out << "test,t_center,x_center,t_half,x_half,dx,dt,abs_residual,ratio_to_next\n";
  for (std::size_t k = 0; k < report.test_functions.size(); ++k) {
    const auto& f = report.test_functions[k];
    for (std::size_t i = 0; i < report.mesh_levels.size(); ++i) {
      out << k << ',' << f.t_center << ',' << f.x_center << ',' << f.t_half << ',' << f.x_half << ','
          << report.mesh_levels[i].dx << ',' << report.mesh_levels[i].dt << ','
          << report.residuals[k][i] << ',';
      if (i < report.ratios[k].size()) out << report.ratios[k][i];
      out << '\n';
    }
  }
}

void write_run_summary(const fs::path& file, const Trajectory& traj) {
  const auto& d = traj.diagnostics;
  json doc;
  doc["scenario"] = scenario_json(traj.scenario);
  doc["scenario_hash"] = scenario_hash(traj.scenario);
  doc["dx"] = traj.dx;
  doc["dt"] = traj.dt;
  doc["courant"] = traj.courant;
  doc["valve_index"] = traj.valve_index;
  doc["diagnostics"] = {{"steps", d.steps},
                        {"final_step", d.final_step},
                        {"close_snap_distance", d.close_snap_distance},
                        {"min_rho", d.min_rho},
                        {"max_rho", d.max_rho},
                        {"max_abs_v", d.max_abs_v},
                        {"closure_gradient_mismatch", d.closure_gradient_mismatch},
                        {"closure_flux_variation", d.closure_flux_variation}};
  doc["events"] = json::array();
  for (const auto& e : traj.events)
    doc["events"].push_back({{"t", e.t}, {"kind", to_string(e.kind)}, {"detail", e.detail}});
  doc["probes"] = json::array();
  for (const auto& p : traj.probes)
    doc["probes"].push_back({{"requested_x", p.requested_x},
                             {"x_snapped", p.x_snapped},
                             {"node", p.node},
                             {"samples", p.samples.size()}});
  auto out = open_out(file);
  out << doc.dump(2) << '\n';
}

void emit_run_outputs(const fs::path& dir, const Trajectory& traj) {
  for (std::size_t k = 0; k < traj.probes.size(); ++k)
    write_probe_csv(dir / ("probe_" + std::to_string(k) + ".csv"), traj, traj.probes[k]);
  write_heatmap_csv(dir / "heatmap_v.csv", traj, HeatmapField::Velocity);
  write_heatmap_csv(dir / "heatmap_p.csv", traj, HeatmapField::Pressure);
  write_run_summary(dir / "summary.json", traj);
}

}  // namespace lwhammer
