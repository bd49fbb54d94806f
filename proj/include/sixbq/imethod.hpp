#pragma once

// Smoothing multipliers of the I-method.
//
// m(x) = 1 on |x| <= 1 and |x|^{-1} on |x| >= 2. On the transition band the
// logarithm of m is the cubic Hermite interpolant in log|x| with end values
// (0, -log 2) and end slopes (0, -1):
//
//     log m = -log(2) * t^2 (2 - t),   t = log|x| / log 2,
//
// which is monotone and C^1 at both junctions. M(xi) = m(xi / N)^sigma with
// sigma = 2 - s.

#include <utility>
#include <vector>

#include "sixbq/energy.hpp"
#include "sixbq/linear.hpp"
#include "sixbq/params.hpp"
#include "sixbq/spectral.hpp"

namespace sixbq {

double m_multiplier(double x);

class IMultiplier {
 public:
  /// Throws kInvalidArgument for N < 1 or s > 2.
  IMultiplier(const Grid& grid, double s, double N);

  const Grid& grid() const noexcept { return grid_; }
  double s() const noexcept { return s_; }
  double N() const noexcept { return N_; }
  double sigma() const noexcept { return 2.0 - s_; }
  /// M(xi_j) in FFT slot order.
  const std::vector<double>& values() const noexcept { return values_; }
  /// M at an arbitrary frequency.
  double at(double xi) const;

 private:
  Grid grid_;
  double s_;
  double N_;
  std::vector<double> values_;
};

SpectralField i_operator(const SpectralField& f, const IMultiplier& mult);

/// (||Iv||_{H^{a+sigma}} / ||v||_{H^a},  ||Iv||_{H^{a+sigma}} / (N^sigma ||v||_{H^a}))
std::pair<double, double> smoothing_sandwich_check(const SpectralField& f, double sigma_tilde,
                                                   const IMultiplier& mult);

/// The energy of (Iu, Iv).
EnergyBreakdown modified_energy(const State& state, const ModelParams& params,
                                const IMultiplier& mult);

/// 1 - M(xi_2 + ... + xi_{2k+2}) / (M(xi_2) ... M(xi_{2k+2})) for the 2k+1
/// frequencies passed in.
double commutator_symbol(const std::vector<double>& xis, const IMultiplier& mult);

/// Smallest cutoff N0 (searched over powers of two up to `n_max`) such that
/// <xi>^alpha M(xi) is nondecreasing on the grid's positive frequencies for
/// every N >= N0 tried. Returns 0 when none qualifies.
double monotonicity_threshold(const Grid& grid, double s, double alpha, double n_max);

}  // namespace sixbq
