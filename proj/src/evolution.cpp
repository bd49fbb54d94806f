#include "sixbq/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sixbq/error.hpp"
#include "sixbq/fit.hpp"

namespace sixbq {
namespace {

constexpr int kSeriesTerms = 30;

// phi_k(z) = sum_j z^j / (j + k)!
Complex phi_series(Complex z, int k) {
  Complex term = 1.0;
  for (int j = 1; j <= k; ++j) term /= static_cast<double>(j);
  Complex sum = term;
  for (int j = 1; j < kSeriesTerms; ++j) {
    term *= z / static_cast<double>(j + k);
    sum += term;
  }
  return sum;
}

bool all_finite(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

}  // namespace

Complex phi1(Complex z) {
  if (std::abs(z) < 1.0) return phi_series(z, 1);
  return (std::exp(z) - 1.0) / z;
}

Complex phi2(Complex z) {
  if (std::abs(z) < 1.0) return phi_series(z, 2);
  return (std::exp(z) - 1.0 - z) / (z * z);
}

Complex phi3(Complex z) {
  if (std::abs(z) < 1.0) return phi_series(z, 3);
  return (std::exp(z) - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

Integrator::Integrator(const Grid& grid, const ModelParams& params, double dt, bool nonlinear)
    : grid_(grid), params_(params), dt_(dt), nonlinear_(nonlinear), disp_(grid, params.beta) {
  params_.validate();
  require(std::isfinite(dt) && dt > 0.0, ErrorCode::kInvalidArgument,
          "integrator: dt must be positive");
  const std::size_t n = grid.size();
  absxi_.resize(n);
  e_.resize(n), e2_.resize(n), q_.resize(n), f1_.resize(n), f2_.resize(n), f3_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    absxi_[i] = std::abs(grid.xi(i));
    const Complex z(0.0, -disp_.omegas()[i] * dt);
    const Complex p1 = phi1(z), p2 = phi2(z), p3 = phi3(z);
    e_[i] = std::exp(z);
    e2_[i] = std::exp(0.5 * z);
    q_[i] = 0.5 * dt * phi1(0.5 * z);
    f1_[i] = dt * (p1 - 3.0 * p2 + 4.0 * p3);
    f2_[i] = dt * (p2 - 2.0 * p3);
    f3_[i] = dt * (4.0 * p3 - p2);
  }
}

void Integrator::forcing(const std::vector<Complex>& z, const std::vector<Complex>& w,
                         std::vector<Complex>& nz, std::vector<Complex>& nw) const {
  const std::size_t n = z.size();
  const auto& rho = disp_.rhos();
  std::vector<Complex> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 0.5 * (z[i] + w[i]) / rho[i];
  const SpectralField f =
      nonlinearity(SpectralField(grid_, std::move(u)), params_.k, params_.sign_value());
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    nz[i] = -I * absxi_[i] * f.coeffs[i];
    nw[i] = I * absxi_[i] * f.coeffs[i];
  }
}

State Integrator::step(const State& state) const {
  require(state.grid() == grid_, ErrorCode::kGridMismatch, "step: state on another grid");
  const std::size_t n = grid_.size();
  const auto& rho = disp_.rhos();
  const Complex I(0.0, 1.0);
  std::vector<Complex> z(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = rho[i] * state.u.coeffs[i] + I * state.v.coeffs[i];
    w[i] = rho[i] * state.u.coeffs[i] - I * state.v.coeffs[i];
  }

  std::vector<Complex> z1(n), w1(n);
  if (!nonlinear_) {
    for (std::size_t i = 0; i < n; ++i) {
      z1[i] = e_[i] * z[i];
      w1[i] = std::conj(e_[i]) * w[i];
    }
  } else {
    std::vector<Complex> nzu(n), nwu(n), nza(n), nwa(n), nzb(n), nwb(n), nzc(n), nwc(n);
    std::vector<Complex> za(n), wa(n), zb(n), wb(n), zc(n), wc(n);
    forcing(z, w, nzu, nwu);
    for (std::size_t i = 0; i < n; ++i) {
      za[i] = e2_[i] * z[i] + q_[i] * nzu[i];
      wa[i] = std::conj(e2_[i]) * w[i] + std::conj(q_[i]) * nwu[i];
    }
    forcing(za, wa, nza, nwa);
    for (std::size_t i = 0; i < n; ++i) {
      zb[i] = e2_[i] * z[i] + q_[i] * nza[i];
      wb[i] = std::conj(e2_[i]) * w[i] + std::conj(q_[i]) * nwa[i];
    }
    forcing(zb, wb, nzb, nwb);
    for (std::size_t i = 0; i < n; ++i) {
      zc[i] = e2_[i] * za[i] + q_[i] * (2.0 * nzb[i] - nzu[i]);
      wc[i] = std::conj(e2_[i]) * wa[i] + std::conj(q_[i]) * (2.0 * nwb[i] - nwu[i]);
    }
    forcing(zc, wc, nzc, nwc);
    for (std::size_t i = 0; i < n; ++i) {
      z1[i] = e_[i] * z[i] + f1_[i] * nzu[i] + 2.0 * f2_[i] * (nza[i] + nzb[i]) +
              f3_[i] * nzc[i];
      w1[i] = std::conj(e_[i]) * w[i] + std::conj(f1_[i]) * nwu[i] +
              2.0 * std::conj(f2_[i]) * (nwa[i] + nwb[i]) + std::conj(f3_[i]) * nwc[i];
    }
  }

  std::vector<Complex> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = 0.5 * (z1[i] + w1[i]) / rho[i];
    v[i] = -0.5 * I * (z1[i] - w1[i]);
  }
  if (!all_finite(u) || !all_finite(v))
    fail(ErrorCode::kNonFinite, "step: non-finite state");
  return State(SpectralField(grid_, std::move(u)), SpectralField(grid_, std::move(v)),
               state.t + dt_);
}

State step(const State& state, double dt, const ModelParams& params) {
  return Integrator(state.grid(), params, dt).step(state);
}

double default_time_step(const Dispersion& disp) {
  return std::min(0.1, 1.0 / disp.max_omega());
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kCompleted: return "completed";
    case Termination::kBlowupDetected: return "blowup_detected";
    case Termination::kStepFailure: return "step_failure";
  }
  return "unknown";
}

Snapshot make_snapshot(const State& state, const ModelParams& params, const IMultiplier& mult) {
  Snapshot s{state, energy(state, params), modified_energy(state, params, mult)};
  const double hs = sobolev_norm(state.u, params.s);
  s.hs_norm_sq = hs * hs;
  s.theorem_quantity = theorem_quantity(state, params.s);
  s.linf = linf_norm(state.u, params.k);
  return s;
}

Trajectory simulate(const State& initial, const ModelParams& params,
                    const SimulationOptions& opts) {
  params.validate();
  require(std::isfinite(opts.T) && opts.T > 0.0, ErrorCode::kInvalidArgument,
          "simulate: horizon T must be positive");
  require(opts.snapshot_every >= 1, ErrorCode::kInvalidArgument,
          "simulate: snapshot cadence must be >= 1");
  const Grid& grid = initial.grid();
  const Dispersion disp(grid, params.beta);
  const double dt_req = opts.dt > 0.0 ? opts.dt : default_time_step(disp);
  const auto steps = static_cast<std::size_t>(std::ceil(opts.T / dt_req - 1e-9));
  const double dt = opts.T / static_cast<double>(steps);
  const Integrator integ(grid, params, dt, opts.nonlinear);
  const IMultiplier mult(grid, params.s, params.N);

  Trajectory traj{params, grid, dt, {}, Termination::kCompleted, {}};
  traj.snapshots.push_back(make_snapshot(initial, params, mult));
  State state = initial;
  const double t0 = initial.t;
  for (std::size_t i = 1; i <= steps; ++i) {
    try {
      state = integ.step(state);
      state.t = t0 + static_cast<double>(i) * dt;
      const double linf = linf_norm(state.u, params.k);
      const double q = theorem_quantity(state, params.s);
      if (!(linf <= opts.linf_limit) || !(q <= opts.quantity_limit)) {
        traj.status = Termination::kBlowupDetected;
        traj.message = "blow-up detected at t = " + std::to_string(state.t) +
                       " (Linf = " + std::to_string(linf) + ", quantity = " +
                       std::to_string(q) + ")";
        traj.snapshots.push_back(make_snapshot(state, params, mult));
        return traj;
      }
      if (i % opts.snapshot_every == 0 || i == steps)
        traj.snapshots.push_back(make_snapshot(state, params, mult));
    } catch (const Error& e) {
      traj.status = e.code() == ErrorCode::kDivergence ? Termination::kBlowupDetected
                                                       : Termination::kStepFailure;
      traj.message = std::string(e.what()) + " at t = " + std::to_string(state.t);
      return traj;
    }
  }
  return traj;
}

Trajectory simulate(const RealField& g, const RealField& h, const ModelParams& params,
                    const SimulationOptions& opts) {
  return simulate(build_state(g, h), params, opts);
}

double local_existence_delta(const State& state, const ModelParams& params,
                             const DeltaOptions& opts) {
  params.validate();
  require(opts.epsilon > 0.0 && opts.epsilon < 0.5, ErrorCode::kInvalidArgument,
          "local_existence_delta: epsilon must lie in (0, 1/2)");
  require(opts.constant > 0.0 && opts.delta_max > 0.0, ErrorCode::kInvalidArgument,
          "local_existence_delta: constant and cap must be positive");
  const IMultiplier mult(state.grid(), params.s, params.N);
  const double r = sobolev_norm(i_operator(state.u, mult), 2.0) +
                   sobolev_norm(i_operator(state.v, mult), 0.0);
  if (r == 0.0) return opts.delta_max;
  const double d =
      std::pow(opts.constant * std::pow(r, -2.0 * params.k), 1.0 / (0.5 - opts.epsilon));
  return std::min(d, opts.delta_max);
}

double local_existence_delta(const RealField& g, const RealField& h, const ModelParams& params,
                             const DeltaOptions& opts) {
  require(g.grid == h.grid, ErrorCode::kGridMismatch, "local_existence_delta: grid mismatch");
  // ||Ih||_{L^2}: h enters through its own coefficients, not through v.
  const State data(to_spectral(g), to_spectral(h));
  return local_existence_delta(data, params, opts);
}

SRange admissible_s_range(int k) {
  require(k >= 2, ErrorCode::kInvalidArgument,
          "admissible_s_range: k must be an integer >= 2, got " + std::to_string(k));
  return SRange{2.0 - 2.0 / (3.0 * k), 2.0, k == 2 ? 0.25 : 0.5};
}

double growth_exponent(int k, double s) {
  const SRange r = admissible_s_range(k);
  require(s > r.lower && s <= r.upper, ErrorCode::kInvalidArgument,
          "growth_exponent: s = " + std::to_string(s) + " outside (" + std::to_string(r.lower) +
              ", 2]");
  return (4.0 - 2.0 * s) / (6.0 * k * s - 12.0 * k + 4.0);
}

GrowthCheck growth_bound_check(const Trajectory& traj, double slack,
                               double calibration_fraction) {
  require(traj.status == Termination::kCompleted, ErrorCode::kInvalidArgument,
          "growth_bound_check: trajectory did not complete");
  require(traj.params.sign == Nonlinearity::kDefocusing, ErrorCode::kInvalidArgument,
          "growth_bound_check: defocusing trajectories only");
  require(traj.snapshots.size() >= 3, ErrorCode::kEmptyTrajectory,
          "growth_bound_check: need at least 3 snapshots");
  GrowthCheck out;
  out.bound_exponent = growth_exponent(traj.params.k, traj.params.s) + slack;

  const double t0 = traj.snapshots.front().t();
  const double t_end = traj.snapshots.back().t();
  const double t_cal = t0 + calibration_fraction * (t_end - t0);
  std::vector<std::pair<double, double>> sup_so_far;
  double running = 0.0;
  for (const auto& s : traj.snapshots) {
    running = std::max(running, s.theorem_quantity);
    sup_so_far.emplace_back(1.0 + s.t(), running);
  }
  for (std::size_t i = 0; i < sup_so_far.size(); ++i) {
    if (traj.snapshots[i].t() > t_cal) break;
    const auto& [x, y] = sup_so_far[i];
    out.calibration_constant = std::max(out.calibration_constant, y / std::pow(x, out.bound_exponent));
  }
  out.bound_satisfied = true;
  for (const auto& [x, y] : sup_so_far) {
    const double bound = out.calibration_constant * std::pow(x, out.bound_exponent);
    const double ratio = bound > 0.0 ? y / bound : (y > 0.0 ? INFINITY : 0.0);
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (y > bound * (1.0 + 1e-12)) out.bound_satisfied = false;
  }
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 1; i < sup_so_far.size(); ++i)
    if (sup_so_far[i].second > 0.0) pts.push_back(sup_so_far[i]);
  if (pts.size() >= 3) out.fitted_exponent = fit_power_law(pts).exponent;
  return out;
}

}  // namespace sixbq
