#include <doctest.h>

#include <cmath>
#include <random>

#include "sixbq/energy.hpp"
#include "sixbq/error.hpp"
#include "sixbq/imethod.hpp"
#include "sixbq/linear.hpp"
#include "test_util.hpp"

using namespace sixbq;
using testutil::kPi;

TEST_CASE("multiplier m") {
  CHECK(m_multiplier(0.0) == 1.0);
  CHECK(m_multiplier(0.5) == 1.0);
  CHECK(m_multiplier(1.0) == 1.0);
  CHECK(m_multiplier(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m_multiplier(4.0) == doctest::Approx(0.25).epsilon(1e-15));
  for (double x = 0.0; x < 5.0; x += 0.0371) {
    CHECK(m_multiplier(-x) == m_multiplier(x));
    CHECK(m_multiplier(x + 0.0371) <= m_multiplier(x));
  }
  // C^1 at both junctions: one-sided difference quotients agree
  const double h = 1e-6;
  CHECK((m_multiplier(1.0 + h) - 1.0) / h == doctest::Approx(0.0).epsilon(1e-5));
  CHECK((m_multiplier(2.0 + h) - m_multiplier(2.0)) / h ==
        doctest::Approx((m_multiplier(2.0) - m_multiplier(2.0 - h)) / h).epsilon(1e-4));
}

TEST_CASE("I operator") {
  const Grid g(2 * kPi, 64);
  const IMultiplier one(g, 2.0, 1.0);
  for (double v : one.values()) CHECK(v == 1.0);
  const IMultiplier m(g, 1.0, 2.0);
  CHECK(m.sigma() == 1.0);
  CHECK(m.at(8.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.at(-8.0) == m.at(8.0));
  CHECK(m.at(1.5) == 1.0);
  auto c = to_spectral(RealField::sample(g, [](double x) { return std::cos(8 * x); }));
  auto ic = i_operator(c, m);
  CHECK(std::abs(ic.coeffs[g.slot(8)] - 0.125) < 1e-15);
  CHECK_THROWS_AS(IMultiplier(g, 2.5, 1.0), Error);
  CHECK_THROWS_AS(IMultiplier(g, 1.0, 0.5), Error);
}

TEST_CASE("smoothing sandwich") {
  const Grid g(8 * kPi, 256);
  std::mt19937_64 rng(5);
  for (double s : {1.0, 1.7, 1.9}) {
    for (double N : {1.0, 3.0, 10.0}) {
      const IMultiplier m(g, s, N);
      const double sigma = m.sigma();
      for (int t = 0; t < 10; ++t) {
        auto f = testutil::random_field(g, rng, 100, 0.3);
        for (double a : {-1.0, 0.0, 2.0}) {
          auto [lo, hi] = smoothing_sandwich_check(f, a, m);
          CHECK(lo >= 1.0 - 1e-12);
          CHECK(hi <= std::pow(2.0, 1.5 * sigma) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("modified energy") {
  const Grid g(2 * kPi, 32);
  std::mt19937_64 rng(9);
  State s(testutil::random_field(g, rng, 12, 1.0), testutil::random_field(g, rng, 12, 1.0, true));
  s.u.coeffs[g.nyquist_slot()] = 0.0;
  ModelParams p;
  const auto e = energy(s, p);
  const auto same = modified_energy(s, p, IMultiplier(g, 2.0, 4.0));
  CHECK(same.total == e.total);
  const auto lower = modified_energy(s, p, IMultiplier(g, 1.8, 2.0));
  CHECK(std::abs(lower.uxx_term) <= std::abs(e.uxx_term));
  CHECK(std::abs(lower.u_term) <= std::abs(e.u_term));
  CHECK(std::abs(lower.kinetic_term) <= std::abs(e.kinetic_term));
}

TEST_CASE("commutator symbol") {
  const Grid g(2 * kPi, 64);
  const IMultiplier m(g, 1.0, 10.0);
  CHECK(commutator_symbol({0.1, 0.2, 0.3, 1.0, 2.0}, m) == 0.0);
  CHECK(commutator_symbol({40.0, 0.0, 0.0, 0.0, 0.0}, m) == doctest::Approx(0.0).epsilon(1e-15));
  // two high frequencies cancelling: 1 - M(0) / M(40)^2 = 1 - 16
  CHECK(commutator_symbol({40.0, -40.0, 0.0, 0.0, 0.0}, m) == doctest::Approx(-15.0).epsilon(1e-13));
  CHECK(commutator_symbol({1.0, 2.0, 3.0}, IMultiplier(g, 2.0, 1.0)) == 0.0);
}

TEST_CASE("monotonicity of <xi>^(7/4) M") {
  const Grid g(64 * kPi, 1024);
  const double n1 = monotonicity_threshold(g, 1.0, 1.75, 4.0);
  CHECK(n1 >= 1.0);
  CHECK(n1 <= 4.0);
  CHECK(monotonicity_threshold(g, 1.8, 1.75, 4.0) >= 1.0);
  // below s = 11/16 the steepest slope of log m times sigma exceeds 7/4
  CHECK(monotonicity_threshold(g, 0.5, 1.75, 4.0) == 0.0);
}
