#include "sixbq/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sixbq/error.hpp"

namespace sixbq {
namespace {

double rho_sq(double xi, double beta) {
  const double x2 = xi * xi;
  return 1.0 - beta * x2 + x2 * x2;
}

}  // namespace

double omega(double xi, double beta) {
  const double r = rho_sq(xi, beta);
  if (r < 0.0 && xi != 0.0)
    fail(ErrorCode::kInvalidBeta, "omega: negative radicand at xi = " +
                                      std::to_string(xi) + " for beta = " +
                                      std::to_string(beta));
  if (xi == 0.0) return 0.0;
  return std::abs(xi) * std::sqrt(r);
}

Dispersion::Dispersion(const Grid& grid, double beta)
    : grid_(grid), beta_(beta), omega_(grid.size()), rho_(grid.size()) {
  require(std::isfinite(beta), ErrorCode::kInvalidBeta, "dispersion: beta not finite");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = grid.xi(i);
    const double r = rho_sq(xi, beta);
    if (xi != 0.0 && !(r > 0.0))
      fail(ErrorCode::kInvalidBeta,
           "dispersion: omega^2 = " + std::to_string(xi * xi * r) + " <= 0 at xi = " +
               std::to_string(xi) + " for beta = " + std::to_string(beta));
    rho_[i] = xi == 0.0 ? 1.0 : std::sqrt(r);
    omega_[i] = std::abs(xi) * rho_[i];
  }
}

double Dispersion::max_omega() const noexcept {
  return *std::max_element(omega_.begin(), omega_.end());
}

State::State(SpectralField u_in, SpectralField v_in, double time)
    : u(std::move(u_in)), v(std::move(v_in)), t(time) {
  require(u.grid == v.grid, ErrorCode::kGridMismatch, "state: u and v on different grids");
}

State State::zeros(const Grid& g) {
  return State(SpectralField::zeros(g), SpectralField::zeros(g), 0.0);
}

std::pair<double, double> symbol_equivalence_ratio(const Grid& grid, double beta) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double xi : grid.freqs()) {
    if (xi == 0.0) continue;
    const double r = omega(xi, beta) / (std::abs(xi) * (1.0 + xi * xi));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

SpectralField inv_sqrt_laplacian(const SpectralField& f) {
  const double scale = f.max_abs();
  require(std::abs(f.coeffs[0]) <= 1e-10 * scale, ErrorCode::kZeroModeViolation,
          "inv_sqrt_laplacian: field has a nonzero mean");
  std::vector<Complex> c(f.coeffs.size());
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = f.coeffs[i] / std::abs(f.grid.xi(i));
  return SpectralField(f.grid, std::move(c));
}

State propagate_linear(const State& state, double dt, const Dispersion& disp) {
  require(state.grid() == disp.grid(), ErrorCode::kGridMismatch,
          "propagate_linear: dispersion built for another grid");
  require(std::isfinite(dt), ErrorCode::kInvalidArgument, "propagate_linear: dt not finite");
  const std::size_t n = state.grid().size();
  std::vector<Complex> u(n), v(n);
  const auto& om = disp.omegas();
  const auto& rho = disp.rhos();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(om[i] * dt);
    const double s = std::sin(om[i] * dt);
    u[i] = c * state.u.coeffs[i] + (s / rho[i]) * state.v.coeffs[i];
    v[i] = c * state.v.coeffs[i] - (s * rho[i]) * state.u.coeffs[i];
  }
  return State(SpectralField(state.grid(), std::move(u)),
               SpectralField(state.grid(), std::move(v)), state.t + dt);
}

State build_state(const RealField& g, const RealField& h) {
  require(g.grid == h.grid, ErrorCode::kGridMismatch, "build_state: g and h on different grids");
  SpectralField u = without_nyquist(to_spectral(g));
  SpectralField hh = to_spectral(h);
  std::vector<Complex> v(hh.coeffs.size());
  const Complex i1(0.0, 1.0);
  for (std::size_t j = 1; j < v.size(); ++j) {
    if (j == g.grid.nyquist_slot()) continue;
    v[j] = (g.grid.xi(j) > 0.0 ? i1 : -i1) * hh.coeffs[j];
  }
  return State(std::move(u), SpectralField(g.grid, std::move(v)), 0.0);
}

}  // namespace sixbq
