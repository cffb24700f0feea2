#include "lwhammer/core.hpp"

#include <cmath>
#include <sstream>

namespace lwhammer {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void FluidParams::validate() const {
  if (!(K > 0.0) || !std::isfinite(K)) throw ParameterError("K must be positive, got " + num(K));
  if (!(rho_a > 0.0) || !std::isfinite(rho_a))
    throw ParameterError("rho_a must be positive, got " + num(rho_a));
  if (!(D > 0.0) || !std::isfinite(D)) throw ParameterError("D must be positive, got " + num(D));
  if (!(c_f >= 0.0) || !std::isfinite(c_f))
    throw ParameterError("c_f must be non-negative, got " + num(c_f));
  if (!(p_a >= 0.0) || !std::isfinite(p_a))
    throw ParameterError("p_a must be non-negative, got " + num(p_a));
}

double pressure_of_density(double rho, const FluidParams& params) {
  if (!(rho > 0.0)) throw DomainError("density must be positive, got " + num(rho));
  return params.p_a + params.K * (rho - params.rho_a) / params.rho_a;
}

double sound_speed(const FluidParams& params) { return std::sqrt(params.K / params.rho_a); }

Grid::Grid(double length_half, double dx) : length_half_(length_half), dx_(dx), nx_(0) {
  if (!(length_half > 0.0)) throw ParameterError("length_half must be positive");
  if (!(dx > 0.0)) throw ParameterError("dx must be positive");
  const double ratio = length_half / dx;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded)
    throw ParameterError("L/dx = " + num(ratio) + " is not an integer");
  nx_ = static_cast<std::size_t>(rounded);
}

std::size_t Grid::nearest_node(double x, std::size_t n_nodes) const {
  const double j = std::round(x / dx_);
  if (j < 0.0 || j > static_cast<double>(n_nodes - 1))
    throw ParameterError("coordinate " + num(x) + " lies outside the active grid");
  return static_cast<std::size_t>(j);
}

const char* to_string(Phase phase) noexcept {
  return phase == Phase::PreClosure ? "pre_closure" : "post_closure";
}

const char* to_string(MonitorKind kind) noexcept {
  switch (kind) {
    case MonitorKind::Ok: return "ok";
    case MonitorKind::NonPositiveDensity: return "non_positive_density";
    case MonitorKind::Supersonic: return "supersonic";
    case MonitorKind::NonFinite: return "non_finite";
  }
  return "unknown";
}

State State::make(double t, std::vector<double> rho, std::vector<double> v, Phase phase) {
  if (rho.size() != v.size()) throw SizeError("rho and v arrays differ in length");
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (!(rho[j] > 0.0))
      throw DomainError("density at node " + std::to_string(j) + " is " + num(rho[j]));
  }
  return State{t, std::move(rho), std::move(v), phase};
}

MonitorStatus monitor(const State& state, double c) {
  for (std::size_t j = 0; j < state.size(); ++j) {
    const double r = state.rho[j];
    const double u = state.v[j];
    if (!std::isfinite(r)) return {MonitorKind::NonFinite, j, r};
    if (!std::isfinite(u)) return {MonitorKind::NonFinite, j, u};
    if (!(r > 0.0)) return {MonitorKind::NonPositiveDensity, j, r};
    if (std::abs(u) >= c) return {MonitorKind::Supersonic, j, u};
  }
  return {};
}

Profile Profile::constant(double value) {
  Profile p;
  p.kind = Kind::Constant;
  p.base = value;
  return p;
}

Profile Profile::gaussian(double base, double amplitude, double center, double width) {
  if (!(width > 0.0)) throw ParameterError("gaussian width must be positive");
  Profile p;
  p.kind = Kind::Gaussian;
  p.base = base;
  p.amplitude = amplitude;
  p.center = center;
  p.width = width;
  return p;
}

double Profile::operator()(double x) const {
  if (kind == Kind::Constant) return base;
  const double s = (x - center) / width;
  return base + amplitude * std::exp(-s * s);
}

std::string Profile::to_text() const {
  if (kind == Kind::Constant) return num(base);
  return "gaussian(" + num(base) + ", " + num(amplitude) + ", " + num(center) + ", " +
         num(width) + ")";
}

void Scenario::validate() const {
  params.validate();
  (void)grid();
  if (!(courant > 0.0)) throw ParameterError("courant must be positive");
  if (enforce_cfl && courant > 1.0)
    throw ParameterError("courant " + num(courant) + " exceeds 1 with CFL enforcement on");
  if (!(t_end > 0.0)) throw ParameterError("t_end must be positive");
  if (!(t_close > 0.0)) throw ParameterError("t_close must be positive");
  if (!(rho_left > 0.0)) throw ParameterError("rho_left must be positive");
  if (!(rho_right > 0.0)) throw ParameterError("rho_right must be positive");
}

Scenario reference_scenario() { return Scenario{}; }

}  // namespace lwhammer
