#include "sixbq/imethod.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sixbq/error.hpp"

namespace sixbq {

double m_multiplier(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 1.0 / a;
  const double ln2 = std::log(2.0);
  const double t = std::log(a) / ln2;
  return std::exp(-ln2 * t * t * (2.0 - t));
}

IMultiplier::IMultiplier(const Grid& grid, double s, double N)
    : grid_(grid), s_(s), N_(N), values_(grid.size()) {
  require(std::isfinite(N) && N >= 1.0, ErrorCode::kInvalidArgument,
          "I-multiplier: cutoff N must be >= 1, got " + std::to_string(N));
  require(std::isfinite(s) && s <= 2.0, ErrorCode::kInvalidArgument,
          "I-multiplier: regularity s must be <= 2, got " + std::to_string(s));
  for (std::size_t i = 0; i < grid.size(); ++i) values_[i] = at(grid.xi(i));
}

double IMultiplier::at(double xi) const {
  const double sigma = 2.0 - s_;
  if (sigma == 0.0) return 1.0;
  return std::pow(m_multiplier(xi / N_), sigma);
}

SpectralField i_operator(const SpectralField& f, const IMultiplier& mult) {
  require(f.grid == mult.grid(), ErrorCode::kGridMismatch,
          "i_operator: multiplier built for another grid");
  std::vector<Complex> c(f.coeffs.size());
  const auto& m = mult.values();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = m[i] * f.coeffs[i];
  return SpectralField(f.grid, std::move(c));
}

std::pair<double, double> smoothing_sandwich_check(const SpectralField& f, double sigma_tilde,
                                                   const IMultiplier& mult) {
  const double base = sobolev_norm(f, sigma_tilde);
  require(base > 0.0, ErrorCode::kInvalidArgument, "sandwich check: zero field");
  const double smoothed = sobolev_norm(i_operator(f, mult), sigma_tilde + mult.sigma());
  return {smoothed / base, smoothed / (std::pow(mult.N(), mult.sigma()) * base)};
}

EnergyBreakdown modified_energy(const State& state, const ModelParams& params,
                                const IMultiplier& mult) {
  State smoothed(i_operator(state.u, mult), i_operator(state.v, mult), state.t);
  return energy(smoothed, params);
}

double commutator_symbol(const std::vector<double>& xis, const IMultiplier& mult) {
  const double sum = std::accumulate(xis.begin(), xis.end(), 0.0);
  double prod = 1.0;
  for (double xi : xis) prod *= mult.at(xi);
  return 1.0 - mult.at(sum) / prod;
}

double monotonicity_threshold(const Grid& grid, double s, double alpha, double n_max) {
  std::vector<double> pos;
  for (double xi : grid.freqs())
    if (xi > 0.0) pos.push_back(xi);
  std::sort(pos.begin(), pos.end());
  double threshold = 0.0;
  for (double N = n_max; N >= 1.0; N /= 2.0) {
    const IMultiplier mult(grid, s, N);
    bool ok = true;
    double prev = 0.0;
    for (double xi : pos) {
      const double val = std::pow(1.0 + xi * xi, 0.5 * alpha) * mult.at(xi);
      if (val < prev * (1.0 - 1e-14)) {
        ok = false;
        break;
      }
      prev = val;
    }
    if (!ok) break;
    threshold = N;
  }
  return threshold;
}

}  // namespace sixbq
