#include <doctest.h>

#include <cmath>

#include "sixbq/almost_conservation.hpp"
#include "sixbq/error.hpp"
#include "test_util.hpp"

using namespace sixbq;
using testutil::kPi;

namespace {

Trajectory two_mode_run(const Grid& g, const ModelParams& p, double T, double dt) {
  auto gi = RealField::sample(g, [](double x) { return std::cos(x) + 0.6 * std::cos(3 * x + 0.4); });
  auto hi = RealField::sample(g, [](double x) { return 0.5 * std::sin(2 * x); });
  SimulationOptions o;
  o.T = T;
  o.dt = dt;
  return simulate(gi, hi, p, o);
}

State scan_data(const Grid& g, double a) {
  const int n = static_cast<int>(g.size());
  auto gi = RealField::sample(g, [=](double x) {
    double s = 0;
    for (int j = 1; j < n / 3; ++j) s += std::pow(j, -3.0) * std::cos(j * x + 0.7 * j);
    return a * s;
  });
  auto hi = RealField::sample(g, [=](double x) {
    double s = 0;
    for (int j = 1; j < n / 3; ++j) s += std::pow(j, -5.0) * std::sin(j * x + 0.3 * j);
    return a * s;
  });
  return build_state(gi, hi);
}

}  // namespace

TEST_CASE("zero data has zero increment") {
  const Grid g(2 * kPi, 16);
  ModelParams p;
  p.s = 1.8;
  p.N = 2;
  const IMultiplier m(g, p.s, p.N);
  SimulationOptions o;
  o.T = 0.1;
  o.dt = 0.01;
  auto traj = simulate(State::zeros(g), p, o);
  CHECK(increment_direct(traj, p, m) == 0.0);
  CHECK(increment_oracle(traj, p, m) == 0.0);
}

TEST_CASE("no smoothing means no commutator") {
  const Grid g(2 * kPi, 16);
  ModelParams p;  // s = 2
  const IMultiplier m(g, p.s, 3.0);
  auto traj = two_mode_run(g, p, 0.05, 2.5e-4);  // fine enough that drift sits below 1e-9
  for (const auto& s : traj.snapshots) CHECK(increment_rate_oracle(s.state, p, m) == 0.0);
  CHECK(std::abs(increment_direct(traj, p, m)) < 1e-9);
}

TEST_CASE("oracle matches the direct increment") {
  const Grid g(2 * kPi, 16);
  ModelParams p;
  p.s = 1.8;
  p.N = 2;
  const IMultiplier m(g, p.s, p.N);
  auto traj = two_mode_run(g, p, 0.25, 1.25e-3);
  const double direct = increment_direct(traj, p, m);
  const double simpson = increment_oracle(traj, p, m, Quadrature::kSimpson);
  const double trap = increment_oracle(traj, p, m, Quadrature::kTrapezoid);
  CHECK(std::abs(direct) > 1e-3);
  CHECK(std::abs(simpson - direct) < 1e-7);
  // the trapezoid rule is second order; at this step it is close but coarser
  CHECK(std::abs(trap - direct) < 1e-4);
  CHECK(std::abs(trap - direct) > std::abs(simpson - direct));
}

TEST_CASE("oracle refuses large grids") {
  const Grid g(2 * kPi, 64);
  ModelParams p;
  p.s = 1.8;
  try {
    increment_rate_oracle(State::zeros(g), p, IMultiplier(g, 1.8, 2.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGridTooLarge);
  }
}

TEST_CASE("scan at s = 2 is identically conserved") {
  const Grid g(2 * kPi, 32);
  ModelParams p;
  ScanOptions o;
  o.delta_from_lwp = false;
  o.fixed_delta = 0.005;
  auto r = almost_conservation_scan(scan_data(g, 0.3), p, {2, 4, 8, 16}, o);
  CHECK(r.outcome == ScanOutcome::kIdenticallyConserved);
  CHECK(r.points.size() == 4);
  CHECK_THROWS_AS(almost_conservation_scan(scan_data(g, 0.3), p, {2, 4, 8}, o), Error);
  CHECK_THROWS_AS(almost_conservation_scan(scan_data(g, 0.3), p, {2, 8, 4, 16}, o), Error);
}

TEST_CASE("decay slope is insensitive to amplitude at fixed window") {
  const Grid g(2 * kPi, 128);
  ModelParams p;
  p.s = 1.8;
  ScanOptions o;
  o.delta_from_lwp = false;
  o.fixed_delta = 0.0133;
  auto a = almost_conservation_scan(scan_data(g, 0.15), p, {4, 8, 16, 32}, o);
  auto b = almost_conservation_scan(scan_data(g, 0.3), p, {4, 8, 16, 32}, o);
  REQUIRE(a.outcome == ScanOutcome::kFitted);
  REQUIRE(b.outcome == ScanOutcome::kFitted);
  CHECK(a.slope <= -3.5);
  CHECK(std::abs(a.slope - b.slope) <= 0.3);
}
