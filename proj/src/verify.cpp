#include "lwhammer/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lwhammer {

double smoothed_heaviside(double x, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("smoothing width must be positive");
  if (x <= -epsilon) return 0.0;
  if (x >= epsilon) return 1.0;
  const double s = (x + epsilon) / (2.0 * epsilon);
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double smoothed_heaviside_slope(double x, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("smoothing width must be positive");
  if (x <= -epsilon || x >= epsilon) return 0.0;
  const double s = (x + epsilon) / (2.0 * epsilon);
  const double ds = 30.0 * s * s * (1.0 - s) * (1.0 - s);
  return ds / (2.0 * epsilon);
}

void MocOracle::validate() const {
  if (!profile) throw ParameterError("MoC oracle needs a profile");
  if (!(epsilon > 0.0)) throw ParameterError("smoothing width must be positive");
  if (!(sample_max > sample_min)) throw ParameterError("empty sampling interval");
  if (samples < 2) throw ParameterError("need at least two samples");
}

double MocOracle::data(double xi) const { return profile(xi) * smoothed_heaviside(xi, epsilon); }

double MocOracle::data_slope(double xi) const {
  double fp;
  if (profile_slope) {
    fp = profile_slope(xi);
  } else {
    const double h = 1e-6 * std::max(1.0, std::abs(xi));
    fp = (profile(xi + h) - profile(xi - h)) / (2.0 * h);
  }
  return fp * smoothed_heaviside(xi, epsilon) + profile(xi) * smoothed_heaviside_slope(xi, epsilon);
}

double moc_scalar_solution(const MocOracle& oracle, double t, double x) {
  oracle.validate();
  if (t < 0.0) throw DomainError("negative time");
  const double c = oracle.wave_speed;
  const double b = oracle.damping;
  const double g_direct = oracle.data(x - c * t);
  const double g_image = oracle.data(-x - c * t);
  const double den_direct = 1.0 + b * t * g_direct;
  const double den_image = 1.0 - b * t * g_image;
  if (!(den_direct > 0.0) || !(den_image > 0.0))
    throw ParameterError("damped characteristic blew up before t = " + std::to_string(t));
  return g_direct / den_direct - g_image / den_image;
}

namespace {

// Smallest t > 0 with d(t) <= 0, found on a geometric scan and refined by
// bisection. d(0) = 1 always.
template <class F>
double first_root(F&& d) {
  constexpr int n = 800;
  constexpr double t_lo = 1e-8;
  constexpr double t_hi = 1e8;
  const double ratio = std::pow(t_hi / t_lo, 1.0 / (n - 1));
  double a = 0.0;
  double t = t_lo;
  for (int i = 0; i < n; ++i, t *= ratio) {
    if (d(t) <= 0.0) {
      double lo = a, hi = t;
      for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (d(mid) <= 0.0 ? hi : lo) = mid;
      }
      return hi;
    }
    a = t;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

double critical_time(const MocOracle& oracle,
                     const std::function<double(double)>& wave_speed_derivative) {
  oracle.validate();
  const double b = oracle.damping;
  double best = std::numeric_limits<double>::infinity();
  const double h = (oracle.sample_max - oracle.sample_min) / static_cast<double>(oracle.samples - 1);
  for (std::size_t i = 0; i < oracle.samples; ++i) {
    const double xi = oracle.sample_min + static_cast<double>(i) * h;
    const double g = oracle.data(xi);
    if (!wave_speed_derivative) {
      // Constant speed: D vanishes only where the damped amplitude blows up.
      if (b * g < 0.0) best = std::min(best, -1.0 / (b * g));
      continue;
    }
    const double gp = oracle.data_slope(xi);
    const double t = first_root([&](double s) {
      const double a = b * g * s + 1.0;
      const double u = a != 0.0 ? g / a : g;
      return a * a + gp * wave_speed_derivative(u) * s;
    });
    best = std::min(best, t);
  }
  return best;
}

namespace {

struct Alignment {
  std::size_t coarse_nodes;
  std::vector<std::size_t> stride;
};

Alignment align(std::span<const LevelSolution> levels, std::size_t min_levels) {
  if (levels.size() < min_levels)
    throw InsufficientDataError("need at least " + std::to_string(min_levels) + " mesh levels");
  const auto& coarse = levels.front();
  if (coarse.values.empty()) throw SizeError("coarsest level has no values");
  Alignment a{coarse.values.size(), {}};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& lv = levels[i];
    if (!(lv.level.dx > 0.0) || !(lv.level.dt > 0.0))
      throw AlignmentError("mesh level " + std::to_string(i) + " has non-positive spacing");
    if (i > 0 && !(lv.level.dt < levels[i - 1].level.dt))
      throw AlignmentError("mesh levels must be ordered from coarse to fine");
    const double r = coarse.level.dx / lv.level.dx;
    const double rr = std::round(r);
    if (rr < 1.0 || std::abs(r - rr) > 1e-9 * rr)
      throw AlignmentError("mesh level " + std::to_string(i) + " is not nested in the coarsest grid");
    const auto s = static_cast<std::size_t>(rr);
    if ((a.coarse_nodes - 1) * s + 1 > lv.values.size())
      throw AlignmentError("mesh level " + std::to_string(i) + " does not cover the coarse nodes");
    a.stride.push_back(s);
  }
  return a;
}

std::vector<double> orders_of(std::span<const MeshLevel> mesh, std::span<const double> errors) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i)
    orders.push_back(std::log(errors[i] / errors[i + 1]) / std::log(mesh[i].dt / mesh[i + 1].dt));
  return orders;
}

}  // namespace

OrderReport observed_order(std::span<const LevelSolution> levels,
                           const std::function<double(double)>& exact) {
  if (!exact) throw ParameterError("exact solution missing");
  const auto a = align(levels, 2);
  const double dx0 = levels.front().level.dx;
  OrderReport rep;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.coarse_nodes; ++k) {
      const double x = static_cast<double>(k) * dx0;
      e = std::max(e, std::abs(levels[i].values[k * a.stride[i]] - exact(x)));
    }
    rep.mesh_levels.push_back(levels[i].level);
    rep.errors.push_back(e);
  }
  rep.observed_orders = orders_of(rep.mesh_levels, rep.errors);
  return rep;
}

OrderReport observed_order_richardson(std::span<const LevelSolution> levels) {
  const auto a = align(levels, 3);
  OrderReport rep;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.coarse_nodes; ++k)
      e = std::max(e, std::abs(levels[i].values[k * a.stride[i]] -
                               levels[i + 1].values[k * a.stride[i + 1]]));
    rep.mesh_levels.push_back(levels[i].level);
    rep.errors.push_back(e);
  }
  rep.observed_orders = orders_of(rep.mesh_levels, rep.errors);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

double bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double w = 1.0 - s * s;
  return w * w * w;
}

}  // namespace

double TestFunction::operator()(double t, double x) const {
  return bump((t - t_center) / t_half) * bump((x - x_center) / x_half);
}

std::vector<TestFunction> standard_test_family(double t_close, double t_end, double length_half) {
  if (!(t_end > t_close)) throw ParameterError("weak-form window is empty");
  if (!(length_half > 0.0)) throw ParameterError("pipe length must be positive");
  const double span = t_end - t_close;
  const double centres[3][2] = {{0.25, 0.5}, {0.5, 0.3}, {0.75, 0.7}};
  const double scales[2][2] = {{0.15, 0.25}, {0.075, 0.125}};
  std::vector<TestFunction> family;
  for (const auto& c : centres)
    for (const auto& s : scales)
      family.push_back({t_close + c[0] * span, c[1] * length_half, s[0] * span, s[1] * length_half,
                        1.0, 1.0});
  return family;
}

WeakResidualAccumulator::WeakResidualAccumulator(FluidParams params, double dx, double dt,
                                                 std::size_t valve_index, double t_close,
                                                 double t_end, std::vector<TestFunction> tests,
                                                 WeakFormOptions options)
    : params_(params), dx_(dx), dt_(dt), nx_(valve_index), t1_(t_close), t_end_(t_end),
      tests_(std::move(tests)), options_(options), sums_(tests_.size(), 0.0) {
  params_.validate();
  if (!(dx > 0.0) || !(dt > 0.0)) throw ParameterError("weak form needs positive dx and dt");
  if (nx_ < 2) throw SizeError("weak form needs at least two cells");
  const double length = static_cast<double>(nx_) * dx_;
  for (std::size_t i = 0; i < tests_.size(); ++i) {
    const auto& f = tests_[i];
    if (!(f.t_half > 0.0) || !(f.x_half > 0.0))
      throw SupportError("test function " + std::to_string(i) + " has an empty support");
    if (f.t_center - f.t_half <= t1_ || f.t_center + f.t_half >= t_end_ ||
        f.x_center - f.x_half <= 0.0 || f.x_center + f.x_half >= length)
      throw SupportError("test function " + std::to_string(i) +
                         " touches the boundary of the post-closure domain");
    // Cell-centre values of the x factor for j = -1 .. N_x + 2.
    std::vector<double> bx(nx_ + 4);
    for (std::size_t k = 0; k < bx.size(); ++k) {
      const double xj = (static_cast<double>(k) - 1.5) * dx_;
      bx[k] = bump((xj - f.x_center) / f.x_half);
    }
    space_factors_.push_back(std::move(bx));
  }
}

double WeakResidualAccumulator::time_factor(const TestFunction& phi, std::ptrdiff_t n) const {
  const double tn = t1_ + (static_cast<double>(n) - 0.5) * dt_;
  return bump((tn - phi.t_center) / phi.t_half);
}

double WeakResidualAccumulator::cross_average(std::size_t test, std::ptrdiff_t n,
                                              std::ptrdiff_t j) const {
  const auto& phi = tests_[test];
  const auto& bx = space_factors_[test];
  const auto k = static_cast<std::size_t>(j + 1);
  return (time_factor(phi, n) * (bx[k - 1] + bx[k] + bx[k + 1]) +
          (time_factor(phi, n - 1) + time_factor(phi, n + 1)) * bx[k]) /
         5.0;
}

void WeakResidualAccumulator::add_level(const State& state) {
  if (state.phase != Phase::PostClosure) throw PhaseError("weak form uses post-closure levels only");
  if (state.size() != nx_ + 1) throw SizeError("level does not span [0, L]");
  const auto m = static_cast<std::ptrdiff_t>(levels_);
  const double expected = t1_ + static_cast<double>(m) * dt_;
  if (std::abs(state.t - expected) > 1e-6 * dt_)
    throw AlignmentError("level at t = " + std::to_string(state.t) +
                         " is off the uniform grid (expected " + std::to_string(expected) + ")");
  ++levels_;
  if (m == 0) return;

  const double q_scale = params_.c_f / (2.0 * params_.D);
  for (std::size_t i = 0; i < tests_.size(); ++i) {
    const auto& phi = tests_[i];
    bool active = false;
    for (std::ptrdiff_t n = m - 2; n <= m + 1; ++n) active = active || time_factor(phi, n) != 0.0;
    if (!active) continue;

    const double wa = phi.mass_weight, wb = phi.momentum_weight;
    double t_term = 0.0, x_term = 0.0, s_term = 0.0, line_t1 = 0.0, line_l = 0.0;
    for (std::size_t j = 1; j <= nx_; ++j) {
      const auto jj = static_cast<std::ptrdiff_t>(j);
      const double rho = state.rho[j];
      const double q = rho * state.v[j];
      const double f2 = q * q / rho + pressure_of_density(rho, params_);
      const double g2 = -q_scale * q * std::abs(q) / rho;

      const double ph = cross_average(i, m, jj);
      const double ph_prev = cross_average(i, m - 1, jj);
      const double dph_x = (cross_average(i, m, jj + 1) - cross_average(i, m, jj - 1)) / (2.0 * dx_);

      t_term += (wa * rho + wb * q) * (ph - ph_prev) * dx_;
      x_term += (wa * q + wb * f2) * dph_x * dx_ * dt_;
      s_term += wb * g2 * ph * dx_ * dt_;
      if (m == 1) line_t1 += (wa * rho + wb * q) * ph * dx_;
      if (j == nx_) line_l += (wa * q + wb * f2) * ph * dt_;
    }
    sums_[i] += t_term + x_term + options_.source_sign * s_term +
                options_.t1_line_coefficient * line_t1 - line_l;
  }
}

std::vector<double> WeakResidualAccumulator::residuals() const { return sums_; }

std::vector<double> weak_residual(const Trajectory& trajectory,
                                  std::span<const TestFunction> tests,
                                  const WeakFormOptions& options) {
  const auto& sc = trajectory.scenario;
  if (!sc.closes()) throw PhaseError("the valve never closes in this trajectory");
  double t1 = -1.0;
  for (const auto& e : trajectory.events)
    if (e.kind == EventKind::ValveClosure) t1 = e.t;
  if (t1 < 0.0) throw PhaseError("the valve never closes in this trajectory");

  WeakResidualAccumulator acc(sc.params, trajectory.dx, trajectory.dt, trajectory.valve_index, t1,
                              sc.t_end, {tests.begin(), tests.end()}, options);
  for (const auto& snap : trajectory.snapshots) {
    if (snap.phase != Phase::PostClosure) continue;
    State s{snap.t, snap.rho, snap.v, Phase::PostClosure};
    acc.add_level(s);
  }
  auto r = acc.residuals();
  for (double& x : r) x = std::abs(x);
  return r;
}

// ---------------------------------------------------------------------------

OscillationMetrics oscillation_metrics(std::span<const double> signal, double reference_amplitude) {
  if (signal.empty()) throw InsufficientDataError("empty signal");
  OscillationMetrics m;
  for (std::size_t i = 1; i < signal.size(); ++i) m.total_variation += std::abs(signal[i] - signal[i - 1]);

  const double baseline = signal.front();
  const double peak = *std::max_element(signal.begin(), signal.end());
  const double level = baseline + 0.5 * (peak - baseline);

  std::vector<double> lobe;
  if (peak > baseline) {
    auto it = std::find_if(signal.begin(), signal.end(), [&](double s) { return s >= level; });
    for (; it != signal.end() && *it >= level; ++it) lobe.push_back(*it);
  }
  if (lobe.empty()) {
    m.plateau = baseline;
  } else {
    const auto mid = lobe.begin() + static_cast<std::ptrdiff_t>(lobe.size() / 2);
    std::nth_element(lobe.begin(), mid, lobe.end());
    if (lobe.size() % 2 == 1) {
      m.plateau = *mid;
    } else {
      const double upper = *mid;
      const double lower = *std::max_element(lobe.begin(), mid);
      m.plateau = 0.5 * (lower + upper);
    }
  }
  const double amplitude = reference_amplitude > 0.0 ? reference_amplitude : std::abs(m.plateau - baseline);
  m.overshoot = amplitude > 0.0 ? (peak - m.plateau) / amplitude : 0.0;
  return m;
}

}  // namespace lwhammer
