#pragma once

// Increment of the modified energy E(Iu) over a trajectory, measured two ways:
// directly as a difference of energies, and as the time integral of the
// frequency-space commutator form
//
//     d/dt E(Iu) = sign * L * sum_{xi_1 + ... + xi_{2k+2} = 0}
//                  (1 - M(xi_1) / (M(xi_2) ... M(xi_{2k+2})))
//                  (Iu_t)^(xi_1) (Iu)^(xi_2) ... (Iu)^(xi_{2k+2})
//
// which holds exactly for the dealiased semi-discrete flow.

#include <string>
#include <vector>

#include "sixbq/evolution.hpp"
#include "sixbq/imethod.hpp"
#include "sixbq/params.hpp"

namespace sixbq {

/// E(Iu)(last) - E(Iu)(first).
double increment_direct(const Trajectory& traj, const ModelParams& params,
                        const IMultiplier& mult);

/// d/dt E(Iu) at one state by brute-force enumeration of frequency tuples.
/// Cost n^(2k+1); grids above 32 points are rejected (kGridTooLarge).
double increment_rate_oracle(const State& state, const ModelParams& params,
                             const IMultiplier& mult);

enum class Quadrature { kTrapezoid, kSimpson };

/// Time integral of increment_rate_oracle over the snapshots. Simpson needs
/// uniform spacing and falls back to the trapezoid rule otherwise; an odd
/// interval count gets one trapezoid panel at the end.
double increment_oracle(const Trajectory& traj, const ModelParams& params,
                        const IMultiplier& mult, Quadrature rule = Quadrature::kTrapezoid);

struct ScanOptions {
  bool delta_from_lwp = true;  // otherwise use fixed_delta
  double fixed_delta = 0.1;
  DeltaOptions lwp;
  double dt = 2.5e-5;           // upper bound on the step; drift must sit below the increments
  std::size_t min_steps = 64;   // steps per window at least
  double noise_floor = 1e-14;
};

struct ScanPoint {
  double N = 0.0;
  double delta = 0.0;
  double raw_increment = 0.0;
  double norm_product = 0.0;  // sup_t ||Iv||_{L^2} ||Iu||_{H^2}^{2k+1}
  double normalized = 0.0;    // |raw| / norm_product
  bool usable = false;
  std::string status;         // termination status of the window run
};

enum class ScanOutcome { kFitted, kIdenticallyConserved, kInsufficientPoints };
const char* to_string(ScanOutcome o);

struct ScanResult {
  std::vector<ScanPoint> points;
  ScanOutcome outcome = ScanOutcome::kInsufficientPoints;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double raw_slope = 0.0;  // fit of |raw| alone, when available
  std::vector<std::string> warnings;
};

/// Runs one window of length delta per cutoff and fits the decay of the
/// normalized increment in N. Requires at least 4 cutoffs.
ScanResult almost_conservation_scan(const State& data, const ModelParams& params,
                                    const std::vector<double>& cutoffs,
                                    const ScanOptions& opts = {});

}  // namespace sixbq
