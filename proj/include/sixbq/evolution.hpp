#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sixbq/energy.hpp"
#include "sixbq/imethod.hpp"
#include "sixbq/linear.hpp"
#include "sixbq/params.hpp"
#include "sixbq/spectral.hpp"

namespace sixbq {

/// Fourth-order exponential time differencing (Cox-Matthews ETDRK4) for the
/// full equation. Each mode is split into the two characteristic variables
///
///     z = rho u_hat + i v_hat,   z' = -i omega z - i |xi| f_hat(u)
///     w = rho u_hat - i v_hat,   w' = +i omega w + i |xi| f_hat(u)
///
/// so the linear part is diagonal and integrated exactly.
class Integrator {
 public:
  Integrator(const Grid& grid, const ModelParams& params, double dt, bool nonlinear = true);

  State step(const State& state) const;
  double dt() const noexcept { return dt_; }
  const Dispersion& dispersion() const noexcept { return disp_; }

 private:
  void forcing(const std::vector<Complex>& z, const std::vector<Complex>& w,
               std::vector<Complex>& nz, std::vector<Complex>& nw) const;

  Grid grid_;
  ModelParams params_;
  double dt_;
  bool nonlinear_;
  Dispersion disp_;
  std::vector<double> absxi_;
  // Coefficients for the z branch; the w branch uses their conjugates.
  std::vector<Complex> e_, e2_, q_, f1_, f2_, f3_;
};

/// phi_1..phi_3 of a complex argument (Taylor series for |z| < 1).
Complex phi1(Complex z);
Complex phi2(Complex z);
Complex phi3(Complex z);

/// One step from `state`; builds a throwaway Integrator.
State step(const State& state, double dt, const ModelParams& params);

/// min(0.1, 1 / max omega).
double default_time_step(const Dispersion& disp);

enum class Termination { kCompleted, kBlowupDetected, kStepFailure };
const char* to_string(Termination t);

struct Snapshot {
  State state;
  EnergyBreakdown energy;
  EnergyBreakdown modified;
  double hs_norm_sq = 0.0;
  double theorem_quantity = 0.0;
  double linf = 0.0;

  double t() const noexcept { return state.t; }
};

struct Trajectory {
  ModelParams params;
  Grid grid;
  double dt = 0.0;
  std::vector<Snapshot> snapshots;
  Termination status = Termination::kCompleted;
  std::string message;
};

struct SimulationOptions {
  double T = 10.0;
  double dt = 0.0;  // <= 0 selects default_time_step
  std::size_t snapshot_every = 1;
  bool nonlinear = true;
  double linf_limit = 1e6;
  double quantity_limit = 1e12;
};

Snapshot make_snapshot(const State& state, const ModelParams& params, const IMultiplier& mult);

/// Integrates to T (the step is shrunk so that T is hit exactly). Blow-up,
/// overflow and non-finite states end the run early with the matching status.
Trajectory simulate(const State& initial, const ModelParams& params,
                    const SimulationOptions& opts);
Trajectory simulate(const RealField& g, const RealField& h, const ModelParams& params,
                    const SimulationOptions& opts);

struct DeltaOptions {
  double constant = 1.0;
  double epsilon = 0.01;
  double delta_max = 1.0;
};

/// delta = [C (||Ig||_{H^2} + ||Ih||_{L^2})^{-2k}]^{1/(1/2 - eps)}, capped.
double local_existence_delta(const RealField& g, const RealField& h, const ModelParams& params,
                             const DeltaOptions& opts = {});
double local_existence_delta(const State& state, const ModelParams& params,
                             const DeltaOptions& opts = {});

struct SRange {
  double lower = 0.0;  // exclusive
  double upper = 2.0;  // exclusive in the theorem
  double multilinear_threshold = 0.0;

  bool contains(double s) const noexcept { return s > lower && s < upper; }
};

SRange admissible_s_range(int k);

/// (4 - 2s) / (6ks - 12k + 4) for s in (2 - 2/(3k), 2].
double growth_exponent(int k, double s);

struct GrowthCheck {
  double fitted_exponent = 0.0;
  double bound_exponent = 0.0;
  double calibration_constant = 0.0;
  double worst_ratio = 0.0;  // max over t of sup-so-far / (C (1+t)^bound_exponent)
  bool bound_satisfied = false;
};

/// One-sided check of the polynomial growth bound on sup-so-far of the
/// theorem quantity. C is the smallest constant that works on the first
/// `calibration_fraction` of the run.
GrowthCheck growth_bound_check(const Trajectory& traj, double slack = 0.1,
                               double calibration_fraction = 0.1);

}  // namespace sixbq
