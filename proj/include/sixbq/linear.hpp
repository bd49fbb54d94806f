#pragma once

// Linear sixth-order Boussinesq flow  w_tt - w_xx - beta w_xxxx - w_xxxxxx = 0.
//
// The phase-space state is (u, v) with v = (-Delta)^{-1/2} u_t. Mode by mode
//
//     u_hat' = |xi| v_hat,     v_hat' = -(omega^2 / |xi|) u_hat,
//
// with omega(xi)^2 = xi^2 - beta xi^4 + xi^6 = xi^2 rho(xi)^2. Writing the
// exact solution in terms of rho = omega/|xi| = (1 - beta xi^2 + xi^4)^{1/2}
// keeps every mode, including xi = 0, free of 0/0 limits.

#include <utility>
#include <vector>

#include "sixbq/spectral.hpp"

namespace sixbq {

/// omega(xi) for a given beta. Throws kInvalidBeta on a negative radicand.
double omega(double xi, double beta);

/// Dispersion table for one grid. Construction fails with kInvalidBeta when
/// omega vanishes or is imaginary at any nonzero grid frequency.
class Dispersion {
 public:
  Dispersion(const Grid& grid, double beta);

  const Grid& grid() const noexcept { return grid_; }
  double beta() const noexcept { return beta_; }
  /// omega(xi_j) in FFT slot order.
  const std::vector<double>& omegas() const noexcept { return omega_; }
  /// rho(xi_j) = omega / |xi| (equal to 1 at xi = 0).
  const std::vector<double>& rhos() const noexcept { return rho_; }
  double max_omega() const noexcept;

 private:
  Grid grid_;
  double beta_;
  std::vector<double> omega_;
  std::vector<double> rho_;
};

struct State {
  SpectralField u;
  SpectralField v;
  double t = 0.0;

  State(SpectralField u_in, SpectralField v_in, double time = 0.0);
  const Grid& grid() const noexcept { return u.grid; }
  static State zeros(const Grid& g);
};

/// min and max of omega(xi) / (|xi| <xi>^2) over the nonzero grid frequencies.
std::pair<double, double> symbol_equivalence_ratio(const Grid& grid, double beta);

/// |xi|^{-1} multiplier; the zero mode must vanish (kZeroModeViolation).
SpectralField inv_sqrt_laplacian(const SpectralField& f);

/// Exact linear flow over dt (either sign).
State propagate_linear(const State& state, double dt, const Dispersion& disp);

/// Initial state for u(0) = g, u_t(0) = h_x: u_hat = g_hat and
/// v_hat = i sign(xi) h_hat. Zero and Nyquist modes of v are zero, and the
/// Nyquist mode of u is dropped so the state lies in the span the dealiased
/// flow preserves.
State build_state(const RealField& g, const RealField& h);

}  // namespace sixbq
