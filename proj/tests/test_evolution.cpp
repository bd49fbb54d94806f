#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "sixbq/error.hpp"
#include "sixbq/evolution.hpp"
#include "test_util.hpp"

using namespace sixbq;
using testutil::kPi;

namespace {

RealField sech(const Grid& g, double a) {
  const double c = g.length() / 2;
  return RealField::sample(g, [=](double x) { return a / std::cosh(x - c); });
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

// Galerkin truncation on modes |j| <= 3 (L = 2 pi), written out with explicit
// convolutions: u_hat'' = -omega^2 u_hat - xi^2 P(u^5)_hat.
struct Galerkin {
  static constexpr int M = 3;
  double beta = 1.0;
  using Vec = std::vector<std::complex<double>>;  // index j + offset

  static Vec conv(const Vec& a, int ma, const Vec& b, int mb) {
    Vec c(2 * (ma + mb) + 1);
    for (int i = -ma; i <= ma; ++i)
      for (int j = -mb; j <= mb; ++j) c[i + j + ma + mb] += a[i + ma] * b[j + mb];
    return c;
  }

  // y = (Re u_j, Im u_j, Re u_t_j, Im u_t_j) for j = -M..M
  void operator()(const std::vector<double>& y, std::vector<double>& dy, double) const {
    Vec u(2 * M + 1);
    for (int j = 0; j < 2 * M + 1; ++j) u[j] = {y[4 * j], y[4 * j + 1]};
    Vec u2 = conv(u, M, u, M);
    Vec u4 = conv(u2, 2 * M, u2, 2 * M);
    Vec u5 = conv(u4, 4 * M, u, M);
    dy.assign(y.size(), 0.0);
    for (int j = -M; j <= M; ++j) {
      const int r = j + M;
      const double xi = j, w2 = xi * xi - beta * xi * xi * xi * xi + std::pow(xi, 6);
      const std::complex<double> acc = -w2 * u[r] - xi * xi * u5[j + 5 * M];
      dy[4 * r] = y[4 * r + 2];
      dy[4 * r + 1] = y[4 * r + 3];
      dy[4 * r + 2] = acc.real();
      dy[4 * r + 3] = acc.imag();
    }
  }
};

}  // namespace

TEST_CASE("phi functions") {
  for (std::complex<double> z : {std::complex<double>(0.3, 0.2), {0.0, 0.99}, {0.0, 1.01}, {-2.0, 5.0}}) {
    const auto e = std::exp(z);
    CHECK(std::abs(phi1(z) - (e - 1.0) / z) < 1e-14);
    CHECK(std::abs(phi2(z) - (e - 1.0 - z) / (z * z)) < 1e-13);
  }
  CHECK(std::abs(phi1(0.0) - 1.0) < 1e-16);
  CHECK(std::abs(phi2(0.0) - 0.5) < 1e-16);
  CHECK(std::abs(phi3(0.0) - 1.0 / 6) < 1e-16);
  CHECK(std::abs(phi3(std::complex<double>(0, 1e-4)) - 1.0 / 6) < 1e-5);
}

TEST_CASE("linear step matches the exact propagator") {
  const Grid g(2 * kPi, 32);
  std::mt19937_64 rng(2);
  State s(testutil::random_field(g, rng, 10), testutil::random_field(g, rng, 10, 2.0, true));
  s.u.coeffs[g.nyquist_slot()] = 0.0;
  s.v.coeffs[g.nyquist_slot()] = 0.0;
  ModelParams p;
  const Integrator lin(g, p, 0.05, false);
  auto a = lin.step(s);
  auto b = propagate_linear(s, 0.05, lin.dispersion());
  CHECK(max_diff(a.u, b.u) < 1e-13);
  CHECK(max_diff(a.v, b.v) < 1e-13);
}

TEST_CASE("fourth-order convergence") {
  const Grid g(16 * kPi, 64);
  ModelParams p;
  auto gi = sech(g, 1.0), hi = sech(g, 0.5);
  auto run = [&](double dt) {
    SimulationOptions o;
    o.T = 0.5;
    o.dt = dt;
    o.snapshot_every = 1000000;
    return simulate(gi, hi, p, o).snapshots.back().state;
  };
  auto ref = run(0.5 / 640);
  const double e1 = max_diff(run(0.5 / 20).u, ref.u), e2 = max_diff(run(0.5 / 40).u, ref.u);
  const double order = std::log2(e1 / e2);
  CHECK(order > 3.5);
  CHECK(order < 4.6);
}

TEST_CASE("agrees with an independent Galerkin integration") {
  const Grid g(2 * kPi, 8);
  auto gi = RealField::sample(g, [](double x) { return 0.5 * std::cos(x) + 0.2 * std::sin(2 * x); });
  auto hi = RealField::sample(g, [](double x) { return 0.3 * std::sin(x); });
  ModelParams p;
  SimulationOptions o;
  o.T = 1.0;
  o.dt = 1e-3;
  o.snapshot_every = 100000;
  auto traj = simulate(gi, hi, p, o);
  REQUIRE(traj.status == Termination::kCompleted);
  const State& end = traj.snapshots.back().state;
  const State start = build_state(gi, hi);

  // u_t = |xi| v
  std::vector<double> y(4 * (2 * Galerkin::M + 1));
  for (int j = -Galerkin::M; j <= Galerkin::M; ++j) {
    const int r = j + Galerkin::M;
    const auto u = start.u.coeffs[g.slot(j)];
    const auto ut = std::abs(double(j)) * start.v.coeffs[g.slot(j)];
    y[4 * r] = u.real();
    y[4 * r + 1] = u.imag();
    y[4 * r + 2] = ut.real();
    y[4 * r + 3] = ut.imag();
  }
  namespace ode = boost::numeric::odeint;
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<std::vector<double>>>(1e-13, 1e-13),
                          Galerkin{}, y, 0.0, 1.0, 1e-4);
  double worst = 0;
  for (int j = -Galerkin::M; j <= Galerkin::M; ++j) {
    const int r = j + Galerkin::M;
    worst = std::max(worst, std::abs(end.u.coeffs[g.slot(j)] - std::complex<double>(y[4 * r], y[4 * r + 1])));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("zero data stays zero") {
  const Grid g(2 * kPi, 16);
  SimulationOptions o;
  o.T = 1.0;
  auto traj = simulate(State::zeros(g), ModelParams{}, o);
  CHECK(traj.status == Termination::kCompleted);
  for (const auto& s : traj.snapshots) {
    CHECK(s.state.u.max_abs() == 0.0);
    CHECK(s.energy.total == 0.0);
  }
  CHECK(traj.snapshots.back().t() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("energy conservation, defocusing") {
  const Grid g(64 * kPi, 256);
  SimulationOptions o;
  o.T = 10.0;
  o.snapshot_every = 100;
  auto traj = simulate(sech(g, 1.0), sech(g, 0.5), ModelParams{}, o);
  REQUIRE(traj.status == Termination::kCompleted);
  const double e0 = traj.snapshots.front().energy.total;
  for (const auto& s : traj.snapshots) CHECK(std::abs(s.energy.total - e0) / std::abs(e0) < 1e-6);
}

TEST_CASE("focusing blow-up is detected") {
  const Grid g(64 * kPi, 256);
  ModelParams p;
  p.sign = Nonlinearity::kFocusing;
  SimulationOptions o;
  o.T = 20.0;
  o.snapshot_every = 10;
  auto traj = simulate(sech(g, 4.0), sech(g, 2.0), p, o);
  CHECK(traj.status == Termination::kBlowupDetected);
  CHECK(traj.snapshots.back().t() < 20.0);
  CHECK(std::string(to_string(traj.status)) == "blowup_detected");
}

TEST_CASE("local existence time") {
  const Grid g(16 * kPi, 64);
  ModelParams p;
  p.s = 1.8;
  p.N = 4.0;
  const double d1 = local_existence_delta(sech(g, 1.0), sech(g, 0.5), p);
  const double d2 = local_existence_delta(sech(g, 2.0), sech(g, 1.0), p);
  REQUIRE(d1 < 1.0);
  CHECK(d2 / d1 == doctest::Approx(std::pow(2.0, -4.0 / 0.49)).epsilon(1e-12));
  DeltaOptions cap;
  cap.delta_max = 1e-3;
  CHECK(local_existence_delta(sech(g, 0.01), sech(g, 0.0), p, cap) == 1e-3);
}

TEST_CASE("admissible range and growth exponent") {
  auto r2 = admissible_s_range(2);
  CHECK(r2.lower == doctest::Approx(5.0 / 3).epsilon(1e-15));
  CHECK(r2.upper == 2.0);
  CHECK(admissible_s_range(3).lower == doctest::Approx(16.0 / 9).epsilon(1e-15));
  CHECK(r2.contains(1.8));
  CHECK_FALSE(r2.contains(5.0 / 3));
  CHECK_THROWS_AS(admissible_s_range(1), Error);

  CHECK(growth_exponent(2, 2.0) == 0.0);
  CHECK(growth_exponent(2, 1.8) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(growth_exponent(2, 1.7) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(growth_exponent(3, 1.9) == doctest::Approx(0.2 / (34.2 - 36 + 4)).epsilon(1e-14));
  CHECK_THROWS_AS(growth_exponent(2, 5.0 / 3), Error);
  CHECK_THROWS_AS(growth_exponent(2, 2.1), Error);
}

TEST_CASE("growth bound on the linear flow") {
  const Grid g(16 * kPi, 64);
  ModelParams p;
  p.s = 1.8;
  SimulationOptions o;
  o.T = 50.0;
  o.snapshot_every = 20;
  o.nonlinear = false;
  auto traj = simulate(sech(g, 1.0), sech(g, 0.5), p, o);
  auto c = growth_bound_check(traj);
  CHECK(c.bound_satisfied);
  CHECK(std::abs(c.fitted_exponent) < 1e-6);
  CHECK(c.bound_exponent == doctest::Approx(0.25 + 0.1));  // exponent plus slack
  CHECK(c.worst_ratio <= 1.0 + 1e-12);
}
