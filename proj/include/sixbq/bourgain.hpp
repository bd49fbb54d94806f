#pragma once

// Discrete space-time analysis on [-2 delta, 2 delta] x torus: the time
// cutoff, X^{s,theta} norms, random test ensembles near the characteristic
// surface |tau| = omega(xi), and empirical checks of the linear and
// multilinear estimates.
//
// A field is stored as spatial Fourier coefficients per time sample. Time
// samples are uniform, t_i = t0 + i * dt, and the values vanish once
// |t| >= 2 delta. The temporal transform runs on a zero-padded copy, so the
// tau grid is finer than 2 pi / (nt dt) and
//
//     ||w||_{X^{0,0}}^2 = L * (nt dt) * sum_i sum_xi |w_hat(t_i, xi)|^2 / nt
//
// is exactly the discrete L^2_{t,x} norm.

#include <cstdint>
#include <string>
#include <vector>

#include "sixbq/evolution.hpp"
#include "sixbq/spectral.hpp"

namespace sixbq {

/// eta(t / delta): 1 on |t| <= delta, 0 on |t| >= 2 delta, C-infinity and even.
double eta_cutoff(double t, double delta);

struct SpaceTimeField {
  Grid grid;
  double delta = 0.0;
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t nt = 0;
  std::vector<Complex> coeffs;  // nt rows of grid.size() coefficients, row-major

  SpaceTimeField(Grid g, double delta, double t0, double dt, std::size_t nt);
  double time(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
  Complex* row(std::size_t i) noexcept { return coeffs.data() + i * grid.size(); }
  const Complex* row(std::size_t i) const noexcept { return coeffs.data() + i * grid.size(); }
  /// Physical samples at time index i (real part; ensemble fields are real).
  std::vector<double> physical_row(std::size_t i) const;
  /// Indices of the samples inside the physical window [0, delta].
  std::pair<std::size_t, std::size_t> window() const noexcept;
};

/// u(t) of a trajectory on [-2 delta, 2 delta], continued outside [0, delta]
/// by the exact linear flow and multiplied by eta_delta. Snapshots must be
/// uniformly spaced, start at t = 0, reach delta, and satisfy
/// pi / spacing >= 2 max omega (kUndersampled otherwise, with the cadence
/// needed in the message).
SpaceTimeField spacetime_transform(const Trajectory& traj, double delta);

enum class ModulationWeight { kOmega, kCubic };

struct XstOptions {
  ModulationWeight weight = ModulationWeight::kOmega;
  double derivative = 0.0;  // extra |xi|^a factor, e.g. 1/4 for D^{1/4}
  std::size_t pad = 4;      // temporal zero-padding factor
};

/// || <xi>^s <|tau| - omega(xi)>^theta w~ ||_{L^2}, or with the cubic weight
/// <|tau| - |xi|^3 + beta |xi| / 2>.
double xst_norm(const SpaceTimeField& w, double s, double theta, double beta,
                const XstOptions& opts = {});

struct EnsembleConfig {
  double length = 8.0 * Grid::kPi;
  std::size_t n = 128;
  std::size_t nt = 64;        // samples over [-2 delta, 2 delta)
  double delta = 0.25;
  double beta = 1.0;
  double xi_cap = 2.0;        // active modes 0 < |xi| <= xi_cap, fixed in physical units
  double modulation_sd = 0.0; // standard deviation of |tau| - omega; <= 0 means 1 / delta
  double s = 0.0;
  double theta = 0.51;
  std::size_t count = 200;
  std::uint64_t seed = 1;

  /// Same ensemble law at twice the spatial and temporal resolution.
  EnsembleConfig doubled() const;
};

struct Ensemble {
  std::vector<SpaceTimeField> fields;
  std::vector<double> offsets;  // every drawn |tau| - omega(xi)
  double modulation_sd = 0.0;
};

/// Seeded real wave packets sum_xi a_xi eta_delta(t) cos(xi x - tau_xi t + phi),
/// |tau_xi| = omega(xi) + mu with mu ~ Normal(0, sd), each scaled to unit
/// X^{s,theta} norm (omega weight). The random draws depend only on the seed
/// and the physical parameters, so doubled() reproduces the same functions.
Ensemble random_bourgain_ensemble(const EnsembleConfig& cfg);

/// Kolmogorov-Smirnov statistic of samples against Normal(0, sd).
double ks_statistic_normal(std::vector<double> samples, double sd);

enum class EstimateId { kSobX, kStrichartz, kKato, kMaximal, kLinfty, kProduct };
const char* to_string(EstimateId id);
/// Accepts the catalogue names Sob-X, w-Str, w-K, w-mf, w-infty, prod-xst.
EstimateId parse_estimate_id(const std::string& name);

struct EstimateConfig {
  EnsembleConfig ensemble;
  double p = 1e300;  // Strichartz time exponent; >= 1e300 means infinity
  double q = 2.0;    // Strichartz space exponent
  int k = 2;         // product of 2k+1 factors
  double growth_tolerance = 0.2;
};

struct EstimateReport {
  std::string id;
  std::size_t ensemble_size = 0;
  double max_ratio = 0.0;
  double max_ratio_doubled = 0.0;
  double growth = 0.0;  // max_ratio_doubled / max_ratio - 1
  bool pass = false;
};

/// Largest LHS / RHS over the ensemble at the configured resolution.
double max_estimate_ratio(EstimateId id, const EstimateConfig& cfg);

/// Runs the ensemble at the configured and the doubled resolution; passes when
/// the max ratio grows by less than growth_tolerance. For w-Str, pairs with
/// 3/p + 1/q < 1/2 or q outside [2, inf] are rejected.
EstimateReport verify_estimate(EstimateId id, const EstimateConfig& cfg);

}  // namespace sixbq
