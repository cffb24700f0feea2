#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lwhammer/core.hpp"
#include "lwhammer/driver.hpp"
#include "lwhammer/studies.hpp"
#include "lwhammer/verify.hpp"

namespace lwhammer {

// Scenario files are JSON objects. Every key is optional and falls back to
// the reference experiment:
//
//   { "length_half": 20, "dx": 0.1, "courant": 0.5, "t_close": 0.04,
//     "t_end": 0.8, "K": 2.5e8, "rho_a": 1000, "p_a": 101000, "c_f": 2,
//     "D": 0.2, "rho_init": 1000, "v_init": 1, "rho_left": 1000,
//     "rho_right": 1000, "enforce_cfl": true }
//
// "beta" (compressibility, K = 1/beta) may replace "K". Profiles are a number
// or {"gaussian": [base, amplitude, center, width]}.

/// Throws ParseError naming the offending key.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON: sorted keys, K rather than beta, round-trip precision.
/// parse_scenario(scenario_to_text(s)) == s.
std::string scenario_to_text(const Scenario& scenario);

/// FNV-1a (64 bit) of the canonical text, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

/// Creates `dir`, refusing (OutputExistsError) to reuse a non-empty
/// directory unless `force` is set.
void prepare_output_dir(const std::filesystem::path& dir, bool force);

/// Comment lines that start every written table.
std::string provenance_header(const Scenario& scenario);

/// probe_<k>.csv with columns t,x_snapped,rho,v,p.
void write_probe_csv(const std::filesystem::path& file, const Trajectory& traj, const Probe& probe);

enum class HeatmapField { Velocity, Pressure };

/// One row per snapshot: t followed by the node values. Rows after closure
/// are shorter because the domain is truncated at the valve.
void write_heatmap_csv(const std::filesystem::path& file, const Trajectory& traj, HeatmapField field);

void write_order_table(const std::filesystem::path& file, const Scenario& scenario,
                       const OrderReport& report);
void write_weak_table(const std::filesystem::path& file, const Scenario& scenario,
                      const WeakResidualReport& report);

/// summary.json with the diagnostics, events and probe metadata of a run.
void write_run_summary(const std::filesystem::path& file, const Trajectory& traj);

/// Writes the probe, heatmap and summary files of a run into `dir`.
void emit_run_outputs(const std::filesystem::path& dir, const Trajectory& traj);

}  // namespace lwhammer
