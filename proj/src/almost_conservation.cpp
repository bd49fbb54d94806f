#include "sixbq/almost_conservation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sixbq/error.hpp"
#include "sixbq/fit.hpp"

namespace sixbq {

double increment_direct(const Trajectory& traj, const ModelParams& params,
                        const IMultiplier& mult) {
  require(traj.snapshots.size() >= 2, ErrorCode::kEmptyTrajectory,
          "increment_direct: need at least two snapshots");
  return modified_energy(traj.snapshots.back().state, params, mult).total -
         modified_energy(traj.snapshots.front().state, params, mult).total;
}

double increment_rate_oracle(const State& state, const ModelParams& params,
                             const IMultiplier& mult) {
  const Grid& grid = state.grid();
  const std::size_t n = grid.size();
  require(n <= 32, ErrorCode::kGridTooLarge,
          "increment oracle: brute force limited to n <= 32, got " + std::to_string(n));
  require(mult.grid() == grid, ErrorCode::kGridMismatch, "increment oracle: grid mismatch");

  const auto& M = mult.values();
  std::vector<Complex> iu(n), iut(n);
  std::vector<double> inv_m(n);
  std::vector<std::ptrdiff_t> wave(n);
  for (std::size_t i = 0; i < n; ++i) {
    iu[i] = M[i] * state.u.coeffs[i];
    iut[i] = M[i] * std::abs(grid.xi(i)) * state.v.coeffs[i];
    inv_m[i] = 1.0 / M[i];
    wave[i] = grid.wavenumber(i);
  }
  const int factors = 2 * params.k + 1;
  const auto half = static_cast<std::ptrdiff_t>(n / 2);

  Complex acc = 0.0;
  std::function<void(int, Complex, double, std::ptrdiff_t)> rec =
      [&](int depth, Complex prod, double inv_prod, std::ptrdiff_t wsum) {
        if (depth == factors) {
          const std::ptrdiff_t j1 = -wsum;
          if (j1 <= -half || j1 >= half) return;
          const auto s1 = static_cast<std::size_t>(j1 >= 0 ? j1 : j1 + 2 * half);
          acc += iut[s1] * prod * (1.0 - M[s1] * inv_prod);
          return;
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (iu[i] == 0.0) continue;
          rec(depth + 1, prod * iu[i], inv_prod * inv_m[i], wsum + wave[i]);
        }
      };
  rec(0, Complex(1.0), 1.0, 0);
  return params.sign_value() * grid.length() * acc.real();
}

double increment_oracle(const Trajectory& traj, const ModelParams& params,
                        const IMultiplier& mult, Quadrature rule) {
  require(traj.snapshots.size() >= 2, ErrorCode::kEmptyTrajectory,
          "increment_oracle: need at least two snapshots");
  require(traj.grid.size() <= 32, ErrorCode::kGridTooLarge,
          "increment_oracle: brute force limited to n <= 32");
  std::vector<double> rates;
  rates.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) rates.push_back(increment_rate_oracle(s.state, params, mult));
  const auto& snaps = traj.snapshots;
  const std::size_t m = rates.size();
  const double h0 = snaps[1].t() - snaps[0].t();
  bool uniform = true;
  for (std::size_t i = 1; i < m; ++i)
    uniform = uniform && std::abs(snaps[i].t() - snaps[i - 1].t() - h0) <= 1e-9 * std::abs(h0);
  double total = 0.0;
  std::size_t start = 0;
  if (rule == Quadrature::kSimpson && uniform && m >= 3) {
    const std::size_t even = (m - 1) / 2 * 2;
    for (std::size_t i = 0; i + 2 <= even; i += 2)
      total += h0 / 3.0 * (rates[i] + 4.0 * rates[i + 1] + rates[i + 2]);
    start = even;
  }
  for (std::size_t i = start + 1; i < m; ++i) {
    const double h = snaps[i].t() - snaps[i - 1].t();
    total += 0.5 * h * (rates[i] + rates[i - 1]);
  }
  return total;
}

const char* to_string(ScanOutcome o) {
  switch (o) {
    case ScanOutcome::kFitted: return "fitted";
    case ScanOutcome::kIdenticallyConserved: return "identically_conserved";
    case ScanOutcome::kInsufficientPoints: return "insufficient_points";
  }
  return "unknown";
}

namespace {

double norm_product(const State& state, const ModelParams& params, const IMultiplier& mult) {
  const double a = sobolev_norm(i_operator(state.v, mult), 0.0);
  const double b = sobolev_norm(i_operator(state.u, mult), 2.0);
  return a * std::pow(b, 2 * params.k + 1);
}

}  // namespace

ScanResult almost_conservation_scan(const State& data, const ModelParams& params,
                                    const std::vector<double>& cutoffs,
                                    const ScanOptions& opts) {
  params.validate();
  require(cutoffs.size() >= 4, ErrorCode::kInvalidArgument,
          "almost_conservation_scan: need at least 4 cutoffs");
  require(std::is_sorted(cutoffs.begin(), cutoffs.end()) &&
              std::adjacent_find(cutoffs.begin(), cutoffs.end()) == cutoffs.end(),
          ErrorCode::kInvalidArgument, "almost_conservation_scan: cutoffs must increase");

  ScanResult out;
  for (double N : cutoffs) {
    ModelParams p = params;
    p.N = N;
    const IMultiplier mult(data.grid(), p.s, N);
    ScanPoint pt;
    pt.N = N;
    pt.delta = opts.delta_from_lwp ? local_existence_delta(data, p, opts.lwp) : opts.fixed_delta;
    SimulationOptions so;
    so.T = pt.delta;
    so.dt = std::min(opts.dt, pt.delta / static_cast<double>(opts.min_steps));
    so.snapshot_every = 1u << 30;
    const Trajectory traj = simulate(data, p, so);
    pt.status = to_string(traj.status);
    if (traj.status != Termination::kCompleted) {
      out.warnings.push_back("N = " + std::to_string(N) + ": window run " + pt.status);
      out.points.push_back(pt);
      continue;
    }
    pt.raw_increment = increment_direct(traj, p, mult);
    for (const auto& s : traj.snapshots)
      pt.norm_product = std::max(pt.norm_product, norm_product(s.state, p, mult));
    pt.normalized = pt.norm_product > 0.0 ? std::abs(pt.raw_increment) / pt.norm_product : 0.0;
    pt.usable = std::abs(pt.raw_increment) >= opts.noise_floor && pt.norm_product > 0.0;
    if (!pt.usable && params.s < 2.0)
      out.warnings.push_back("N = " + std::to_string(N) + ": increment " +
                             std::to_string(pt.raw_increment) + " below noise floor, excluded");
    out.points.push_back(pt);
  }

  if (params.s == 2.0) {
    // The commutator symbol vanishes identically; what remains is integrator drift.
    out.outcome = ScanOutcome::kIdenticallyConserved;
    return out;
  }
  std::vector<std::pair<double, double>> norm_pts, raw_pts;
  for (const auto& pt : out.points) {
    if (!pt.usable) continue;
    norm_pts.emplace_back(pt.N, pt.normalized);
    raw_pts.emplace_back(pt.N, std::abs(pt.raw_increment));
  }
  if (norm_pts.size() < 3) {
    out.outcome = ScanOutcome::kInsufficientPoints;
    out.warnings.push_back("fewer than 3 usable cutoffs; fit aborted");
    return out;
  }
  const PowerLawFit fit = fit_power_law(norm_pts);
  out.slope = fit.exponent;
  out.intercept = fit.intercept;
  out.r_squared = fit.r_squared;
  out.raw_slope = fit_power_law(raw_pts).exponent;
  out.outcome = ScanOutcome::kFitted;
  return out;
}

}  // namespace sixbq
