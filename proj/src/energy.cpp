#include "sixbq/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sixbq/error.hpp"

namespace sixbq {

void ModelParams::validate() const {
  require(k >= 2, ErrorCode::kInvalidArgument,
          "model: power index k must be an integer >= 2, got " + std::to_string(k));
  require(std::isfinite(beta) && std::abs(beta) < 2.0, ErrorCode::kInvalidBeta,
          "model: beta must lie in (-2, 2), got " + std::to_string(beta));
  require(std::isfinite(N) && N >= 1.0, ErrorCode::kInvalidArgument,
          "model: cutoff N must be >= 1, got " + std::to_string(N));
  require(std::isfinite(s) && s <= 2.0, ErrorCode::kInvalidArgument,
          "model: regularity s must be <= 2, got " + std::to_string(s));
}

double sobolev_norm(const SpectralField& f, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const double xi = f.grid.xi(i);
    acc += std::pow(1.0 + xi * xi, s) * std::norm(f.coeffs[i]);
  }
  return std::sqrt(acc * f.grid.length());
}

double lp_power(const SpectralField& f, int p) {
  require(p >= 2 && p % 2 == 0, ErrorCode::kInvalidArgument, "lp_power: p must be even");
  const std::size_t np = dealias_size(f.grid.size(), p);
  const std::vector<double> u = padded_samples(f, np);
  double acc = 0.0;
  for (double x : u) {
    const double x2 = x * x;
    double v = 1.0;
    for (int m = 0; m < p / 2; ++m) v *= x2;
    acc += v;
  }
  if (!std::isfinite(acc)) fail(ErrorCode::kDivergence, "lp_power: samples overflowed");
  return acc * f.grid.length() / static_cast<double>(np);
}

double linf_norm(const SpectralField& f, int k) {
  const std::vector<double> u = padded_samples(f, dealias_size(f.grid.size(), 2 * k + 2));
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

EnergyBreakdown energy(const State& state, const ModelParams& params) {
  require(params.k >= 2, ErrorCode::kInvalidArgument, "energy: k must be >= 2");
  const Grid& g = state.grid();
  double s4 = 0.0, s2 = 0.0, s0 = 0.0, kin = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x2 = g.xi(i) * g.xi(i);
    const double a = std::norm(state.u.coeffs[i]);
    s4 += x2 * x2 * a;
    s2 += x2 * a;
    s0 += a;
    kin += std::norm(state.v.coeffs[i]);
  }
  const double L = g.length();
  EnergyBreakdown e;
  e.uxx_term = 0.5 * L * s4;
  e.ux_term = -0.5 * params.beta * L * s2;
  e.u_term = 0.5 * L * s0;
  e.kinetic_term = 0.5 * L * kin;
  const int p = 2 * params.k + 2;
  e.potential_term = params.sign_value() * lp_power(state.u, p) / static_cast<double>(p);
  e.total = e.uxx_term + e.ux_term + e.u_term + e.kinetic_term + e.potential_term;
  if (!std::isfinite(e.total)) fail(ErrorCode::kDivergence, "energy: not finite");
  return e;
}

double energy_equivalence_ratio(const State& state, const ModelParams& params) {
  require(params.sign == Nonlinearity::kDefocusing, ErrorCode::kInvalidArgument,
          "energy_equivalence_ratio: defined for the defocusing sign only");
  require(std::abs(params.beta) < 2.0, ErrorCode::kInvalidBeta,
          "energy_equivalence_ratio: beta must lie in (-2, 2)");
  const double h2 = sobolev_norm(state.u, 2.0);
  const double rhs = h2 * h2 + state.v.l2_norm_sq() + lp_power(state.u, 2 * params.k + 2);
  const double e = energy(state, params).total;
  if (rhs == 0.0) return 1.0;
  return e / rhs;
}

double theorem_quantity(const State& state, double s) {
  const double a = sobolev_norm(state.u, s);
  const double b = sobolev_norm(state.v, s - 2.0);
  return a * a + b * b;
}

}  // namespace sixbq
