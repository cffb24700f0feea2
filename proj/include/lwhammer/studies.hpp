#pragma once

#include <cstddef>
#include <vector>

#include "lwhammer/driver.hpp"
#include "lwhammer/verify.hpp"

namespace lwhammer {

/// Spatially uniform flow decaying under friction alone. With uniform data
/// and reservoir ends at the same density the exact velocity is
/// v(t) = v0 / (1 + C v0 t), so every node can be compared to it.
struct FrictionDecayConfig {
  double dx = 0.4;
  std::vector<double> courant = {0.5, 0.25, 0.125};
  double t_end = 0.2;
  double v0 = 1.0;
  FluidParams params;
};

double friction_decay_exact(const FluidParams& params, double v0, double t);

OrderReport friction_decay_study(const FrictionDecayConfig& config, const InteriorKernel& kernel = {});

/// Small Gaussian density pulse in a frictionless pipe, compared between
/// successive mesh halvings at fixed Courant number. The last entry of
/// `dx` is used only as the reference for its neighbour.
struct AcousticPulseConfig {
  std::vector<double> dx = {0.4, 0.2, 0.1, 0.05};
  double courant = 0.5;
  double length_half = 20.0;
  double amplitude = 1.0;
  double width = 5.0;
  double t_end = 0.06;
  FluidParams params;
};

Scenario acoustic_pulse_scenario(const AcousticPulseConfig& config, double dx);

OrderReport acoustic_pulse_study(const AcousticPulseConfig& config, const InteriorKernel& kernel = {});

/// Weak residual of the closed-valve solution on a sequence of meshes. The
/// levels run in parallel, one thread each.
struct WeakStudyConfig {
  Scenario scenario = reference_scenario();
  std::vector<double> dx = {0.2, 0.1, 0.05};
  std::vector<TestFunction> tests;  ///< empty selects standard_test_family
  WeakFormOptions options;
};

WeakResidualReport weak_residual_study(const WeakStudyConfig& config);

/// One run of a parameter sweep. `aborted` runs carry the monitor message and
/// no probe data.
struct SweepResult {
  double courant = 0.0;
  double dx = 0.0;
  bool aborted = false;
  std::string message;
  Trajectory trajectory;
};

/// Runs `base` once per (courant, dx) pair in parallel. Scenarios with a
/// Courant number above one are run with the stability check disabled so
/// that the blow-up itself is observable.
std::vector<SweepResult> sweep(const Scenario& base, const std::vector<double>& courant,
                               const std::vector<double>& dx, const Recording& recording);

}  // namespace lwhammer
