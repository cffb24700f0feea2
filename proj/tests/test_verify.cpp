#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "lwhammer/verify.hpp"

using namespace lwhammer;

TEST_CASE("smoothed Heaviside") {
  const double eps = 0.1;
  CHECK(smoothed_heaviside(-0.2, eps) == 0.0);
  CHECK(smoothed_heaviside(0.2, eps) == 1.0);
  CHECK(smoothed_heaviside(0.0, eps) == doctest::Approx(0.5));
  for (double x : {0.01, 0.03, 0.07, 0.099})
    CHECK(smoothed_heaviside(x, eps) + smoothed_heaviside(-x, eps) == doctest::Approx(1.0));
  // monotone
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double h = smoothed_heaviside(-0.1 + i * 1e-3, eps);
    CHECK(h >= prev);
    prev = h;
  }
  // slope against a central difference
  for (double x : {-0.05, 0.0, 0.06})
    CHECK(smoothed_heaviside_slope(x, eps) ==
          doctest::Approx((smoothed_heaviside(x + 1e-7, eps) - smoothed_heaviside(x - 1e-7, eps)) / 2e-7)
              .epsilon(1e-6));
  CHECK_THROWS_AS(smoothed_heaviside(0.0, 0.0), ParameterError);
}

TEST_CASE("L1 distance to the sharp step halves with the smoothing width") {
  auto l1 = [](double eps) {
    const int n = 200000;
    const double h = 2.0 * eps / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = -eps + (i + 0.5) * h;
      sum += std::abs(smoothed_heaviside(x, eps) - (x > 0 ? 1.0 : 0.0)) * h;
    }
    return sum;
  };
  const double a = l1(0.2), b = l1(0.1), c = l1(0.05);
  CHECK(a / b == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b / c == doctest::Approx(2.0).epsilon(1e-6));
}

namespace {

MocOracle unit_plateau(double b) {
  MocOracle o;
  o.profile = [](double) { return 1.0; };
  o.profile_slope = [](double) { return 0.0; };
  o.epsilon = 0.1;
  o.wave_speed = 1.0;
  o.damping = b;
  return o;
}

}  // namespace

TEST_CASE("transport identity in the saturated region") {
  MocOracle o;
  o.profile = [](double x) { return std::sin(x) + 2.0; };
  o.wave_speed = 2.0;
  for (double t : {0.0, 0.5, 1.3}) {
    for (double x : {1.0 + 2.0 * t, 3.0 + 2.0 * t}) {
      // x - ct > eps and the image term vanishes (-x - ct < -eps)
      CHECK(moc_scalar_solution(o, t, x) == std::sin(x - 2.0 * t) + 2.0);
    }
  }
}

TEST_CASE("damped plateau") {
  for (double b : {0.5, 2.0}) {
    const auto o = unit_plateau(b);
    for (double t : {0.1, 1.0, 4.0}) {
      const double u = moc_scalar_solution(o, t, 5.0 + t);
      CHECK(std::abs(u - 1.0 / (b * t + 1.0)) <= 1e-12);
    }
  }
}

TEST_CASE("odd reflection vanishes at the wall") {
  MocOracle o;
  o.profile = [](double x) { return std::exp(-(x - 2.0) * (x - 2.0)); };
  o.damping = 0.3;
  for (double t : {0.0, 0.7, 2.5}) CHECK(std::abs(moc_scalar_solution(o, t, 0.0)) < 1e-15);
}

TEST_CASE("critical time") {
  MocOracle o;
  o.profile = [](double x) { return -std::tanh(x - 3.0); };  // decreasing: compressive
  o.profile_slope = [](double x) { return -1.0 / std::pow(std::cosh(x - 3.0), 2); };
  o.sample_min = 0.0;
  o.sample_max = 8.0;
  // Burgers speed c(u) = u, no damping: t* = 1 / max(-g').
  const double t_star = critical_time(o, [](double) { return 1.0; });
  CHECK(t_star == doctest::Approx(1.0).epsilon(1e-3));

  // Constant speed, no damping: characteristics never meet.
  CHECK(std::isinf(critical_time(o)));

  // Constant speed with damping and negative data: amplitude blow-up at -1/(b g).
  MocOracle neg = unit_plateau(-0.5);
  neg.sample_min = 0.5;
  neg.sample_max = 2.0;
  CHECK(critical_time(neg) == doctest::Approx(2.0));
}

TEST_CASE("observed order against an exact solution") {
  // e = K dt^2 on nested grids
  std::vector<LevelSolution> levels;
  for (double dx : {0.4, 0.2, 0.1}) {
    const double dt = dx / 1000.0;
    std::vector<double> vals;
    for (int j = 0; j * dx <= 4.0 + 1e-12; ++j) vals.push_back(std::sin(j * dx) + 3e5 * dt * dt);
    levels.push_back({{dx, dt}, vals});
  }
  const auto rep = observed_order(levels, [](double x) { return std::sin(x); });
  REQUIRE(rep.observed_orders.size() == 2);
  CHECK(rep.observed_orders[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.observed_orders[1] == doctest::Approx(2.0).epsilon(1e-9));

  const auto rich = observed_order_richardson(levels);
  REQUIRE(rich.observed_orders.size() == 1);
  CHECK(rich.observed_orders[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("order harness rejects misaligned levels") {
  std::vector<LevelSolution> levels = {{{0.4, 4e-4}, std::vector<double>(11, 0.0)},
                                       {{0.3, 3e-4}, std::vector<double>(15, 0.0)}};
  CHECK_THROWS_AS(observed_order(levels, [](double) { return 0.0; }), AlignmentError);
  levels[1] = {{0.2, 5e-4}, std::vector<double>(21, 0.0)};
  CHECK_THROWS_AS(observed_order(levels, [](double) { return 0.0; }), AlignmentError);
  levels[1] = {{0.2, 2e-4}, std::vector<double>(10, 0.0)};
  CHECK_THROWS_AS(observed_order(levels, [](double) { return 0.0; }), AlignmentError);
  CHECK_THROWS_AS(observed_order_richardson(levels), InsufficientDataError);
}

TEST_CASE("weak residual of a rest state vanishes") {
  FluidParams p;
  const double dx = 0.1, dt = 1e-4;
  const std::size_t nx = 200;
  const std::vector<TestFunction> tests = {{0.2, 10.0, 0.05, 4.0, 1.0, 1.0}, {0.3, 5.0, 0.1, 2.0, 1.0, 1.0}};
  WeakResidualAccumulator acc(p, dx, dt, nx, 0.04, 0.5, tests);
  for (int m = 0; m * dt <= 0.46 + 1e-12; ++m)
    acc.add_level({0.04 + m * dt, std::vector<double>(nx + 1, 1000.0), std::vector<double>(nx + 1, 0.0),
                   Phase::PostClosure});
  // scale: ||phi|| ~ 1 and ||F|| ~ p_a, over a support of area ~ 1
  for (double r : acc.residuals()) CHECK(std::abs(r) <= 1e-8 * 1.01e5);
}

TEST_CASE("weak residual with a zero test function is exactly zero") {
  FluidParams p;
  const std::vector<TestFunction> tests = {{0.2, 10.0, 0.05, 4.0, 0.0, 0.0}};
  WeakResidualAccumulator acc(p, 0.1, 1e-4, 200, 0.04, 0.5, tests);
  for (int m = 0; m < 2000; ++m) {
    std::vector<double> rho(201), v(201);
    for (int j = 0; j <= 200; ++j) {
      rho[j] = 1000.0 + std::sin(0.1 * j + m * 1e-3);
      v[j] = 0.3 * std::cos(0.2 * j);
    }
    acc.add_level({0.04 + m * 1e-4, rho, v, Phase::PostClosure});
  }
  CHECK(acc.residuals()[0] == 0.0);
}

TEST_CASE("weak residual input checks") {
  FluidParams p;
  CHECK_THROWS_AS(WeakResidualAccumulator(p, 0.1, 1e-4, 200, 0.04, 0.5, {{0.06, 10.0, 0.05, 4.0, 1, 1}}),
                  SupportError);
  CHECK_THROWS_AS(WeakResidualAccumulator(p, 0.1, 1e-4, 200, 0.04, 0.5, {{0.2, 18.0, 0.05, 4.0, 1, 1}}),
                  SupportError);
  WeakResidualAccumulator acc(p, 0.1, 1e-4, 200, 0.04, 0.5, {{0.2, 10.0, 0.05, 4.0, 1, 1}});
  State s{0.04, std::vector<double>(201, 1000.0), std::vector<double>(201, 0.0), Phase::PostClosure};
  acc.add_level(s);
  s.t = 0.04 + 1.5e-4;
  CHECK_THROWS_AS(acc.add_level(s), AlignmentError);
  s.phase = Phase::PreClosure;
  CHECK_THROWS_AS(acc.add_level(s), PhaseError);
}

TEST_CASE("standard test family sits inside the post-closure window") {
  const auto fam = standard_test_family(0.04, 0.8, 20.0);
  CHECK(fam.size() == 6);
  for (const auto& f : fam) {
    CHECK(f.t_center - f.t_half > 0.04);
    CHECK(f.t_center + f.t_half < 0.8);
    CHECK(f.x_center - f.x_half > 0.0);
    CHECK(f.x_center + f.x_half < 20.0);
  }
}

TEST_CASE("oscillation metrics on synthetic signals") {
  // monotone step
  std::vector<double> step(100, 0.0);
  for (std::size_t i = 30; i < step.size(); ++i) step[i] = 1.0;
  auto m = oscillation_metrics(step);
  CHECK(m.overshoot == 0.0);
  CHECK(m.total_variation == doctest::Approx(1.0));

  // square wave between 0 and A, four periods
  const double A = 2.5;
  std::vector<double> sq;
  for (int period = 0; period < 4; ++period) {
    for (int i = 0; i < 10; ++i) sq.push_back(0.0);
    for (int i = 0; i < 10; ++i) sq.push_back(A);
  }
  sq.push_back(0.0);
  m = oscillation_metrics(sq, A);
  CHECK(m.plateau == A);
  CHECK(m.overshoot == 0.0);
  CHECK(m.total_variation == doctest::Approx(4 * 2 * A));

  // ringing step: 20 % overshoot of the Joukowsky amplitude
  std::vector<double> ring = {0.0, 0.0, 1.2, 1.0, 1.0, 1.0, 1.0, 1.0};
  m = oscillation_metrics(ring, 1.0);
  CHECK(m.plateau == 1.0);
  CHECK(m.overshoot == doctest::Approx(0.2));

  CHECK_THROWS_AS(oscillation_metrics(std::vector<double>{}), InsufficientDataError);
}
