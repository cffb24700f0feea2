#include <doctest.h>

#include <vector>

#include "lwhammer/boundary.hpp"

using namespace lwhammer;

TEST_CASE("reservoir velocity from mass balance") {
  const FluidParams p;
  CHECK(reservoir_velocity(1000.0, 1000.0, 0.9, p) == doctest::Approx(0.9));
  // V0 = P0 V1 / (2 P0 - P1)
  CHECK(reservoir_velocity(1000.0, 1010.0, 1.0, p) == doctest::Approx(1000.0 / 990.0));
  CHECK_THROWS_AS(reservoir_velocity(1000.0, 2000.0, 1.0, p), BoundaryDegeneracyError);
}

TEST_CASE("pre-closure ends hold the reservoir densities") {
  const FluidParams p;
  auto s = State::make(0.0, {990.0, 1001.0, 1002.0, 1003.0, 995.0}, {0.3, 0.8, 0.9, 1.1, 0.2});
  const BoundarySpec spec{Phase::PreClosure, 1000.0, 1000.0};
  apply_pre_closure(s, spec, p);
  CHECK(s.rho.front() == 1000.0);
  CHECK(s.rho.back() == 1000.0);
  CHECK(s.v.front() == doctest::Approx(1000.0 * 0.8 / (2000.0 - 1001.0)));
  CHECK(s.v.back() == doctest::Approx(1000.0 * 1.1 / (2000.0 - 1003.0)));
  CHECK(s.rho[2] == 1002.0);
}

TEST_CASE("valve closure truncates the domain") {
  const Grid g(2.0, 0.5);  // nodes 0..8, valve at node 4
  std::vector<double> rho(9), v(9, 1.0);
  for (std::size_t j = 0; j < 9; ++j) rho[j] = 1000.0 + static_cast<double>(j);
  const auto s = State::make(0.04, rho, v);
  const auto closed = close_valve(s, g, 0.04, 1e-4);
  CHECK(closed.phase == Phase::PostClosure);
  REQUIRE(closed.size() == 5);
  CHECK(closed.v.back() == 0.0);
  CHECK(closed.rho[4] == closed.rho[3]);
  CHECK(closed.v[3] == 1.0);
  CHECK(closed.t == 0.04);

  CHECK_THROWS_AS(close_valve(s, g, 0.05, 1e-4), PhaseError);
  CHECK_THROWS_AS(close_valve(closed, g, 0.04, 1e-4), PhaseError);
}

TEST_CASE("post-closure wall and reservoir") {
  const FluidParams p;
  auto s = State::make(0.1, {1010.0, 1002.0, 1004.0, 1003.0}, {0.1, 0.2, 0.3, 0.4}, Phase::PostClosure);
  const BoundarySpec spec{Phase::PostClosure, 1000.0, 1000.0};
  apply_post_closure(s, spec, p);
  CHECK(s.rho.front() == 1000.0);
  CHECK(s.v.back() == 0.0);
  CHECK(s.rho.back() == 1004.0);

  const BoundarySpec open{Phase::PreClosure, 1000.0, 1000.0};
  CHECK_THROWS_AS(apply_post_closure(s, open, p), PhaseError);
  CHECK_THROWS_AS(apply_pre_closure(s, open, p), PhaseError);
}
