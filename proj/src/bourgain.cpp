#include "sixbq/bourgain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fft.hpp"
#include "sixbq/energy.hpp"
#include "sixbq/error.hpp"
#include "sixbq/linear.hpp"

namespace sixbq {

namespace {

constexpr double kInf = 1e300;

double bracket(double a) { return std::sqrt(1.0 + a * a); }

// exp(-1/y) smooth step, 0 at y <= 0 and 1 at y >= 1.
double smooth_step(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / y);
  const double b = std::exp(-1.0 / (1.0 - y));
  return a / (a + b);
}

double trapezoid_weight(std::size_t i, std::size_t a, std::size_t b, double dt) {
  if (a == b) return dt;
  return (i == a || i == b) ? 0.5 * dt : dt;
}

}  // namespace

double eta_cutoff(double t, double delta) {
  require(delta > 0.0, ErrorCode::kInvalidArgument, "eta_cutoff: delta must be positive");
  return smooth_step(2.0 - std::abs(t) / delta);
}

SpaceTimeField::SpaceTimeField(Grid g, double delta_, double t0_, double dt_, std::size_t nt_)
    : grid(std::move(g)), delta(delta_), t0(t0_), dt(dt_), nt(nt_),
      coeffs(nt_ * grid.size()) {
  require(delta > 0.0 && dt > 0.0 && nt >= 2, ErrorCode::kInvalidArgument,
          "space-time field: need delta > 0, dt > 0 and at least 2 samples");
}

std::vector<double> SpaceTimeField::physical_row(std::size_t i) const {
  const std::size_t n = grid.size();
  SpectralField f(grid, std::vector<Complex>(row(i), row(i) + n));
  return from_spectral(f).samples;
}

std::pair<std::size_t, std::size_t> SpaceTimeField::window() const noexcept {
  const double eps = 1e-9;
  const double lo = std::ceil(-t0 / dt - eps);
  const double hi = std::floor((delta - t0) / dt + eps);
  const auto a = static_cast<std::size_t>(std::max(0.0, lo));
  const auto b = static_cast<std::size_t>(std::clamp(hi, lo, static_cast<double>(nt - 1)));
  return {a, b};
}

SpaceTimeField spacetime_transform(const Trajectory& traj, double delta) {
  require(delta > 0.0, ErrorCode::kInvalidArgument, "spacetime_transform: delta must be positive");
  const auto& snaps = traj.snapshots;
  require(snaps.size() >= 2, ErrorCode::kEmptyTrajectory,
          "spacetime_transform: need at least two snapshots");
  const double h = snaps[1].t() - snaps[0].t();
  require(h > 0.0 && std::abs(snaps[0].t()) <= 1e-12 * std::max(1.0, delta),
          ErrorCode::kInvalidArgument, "spacetime_transform: snapshots must start at t = 0");
  for (std::size_t i = 1; i < snaps.size(); ++i)
    if (std::abs(snaps[i].t() - snaps[i - 1].t() - h) > 1e-9 * h)
      fail(ErrorCode::kInvalidArgument, "spacetime_transform: snapshot spacing not uniform");
  require(snaps.back().t() >= delta - 1e-9 * h, ErrorCode::kInvalidArgument,
          "spacetime_transform: trajectory ends before the window");

  const Dispersion disp(traj.grid, traj.params.beta);
  const double need = Grid::kPi / (2.0 * disp.max_omega());
  if (h > need * (1.0 + 1e-12))
    fail(ErrorCode::kUndersampled, "spacetime_transform: snapshot spacing " + std::to_string(h) +
                                       " too coarse; need <= " + std::to_string(need));

  const auto m = static_cast<std::ptrdiff_t>(std::ceil(2.0 * delta / h - 1e-9));
  std::size_t last = 0;
  while (last + 1 < snaps.size() && snaps[last + 1].t() <= delta + 1e-9 * h) ++last;

  SpaceTimeField out(traj.grid, delta, -static_cast<double>(m) * h, h,
                     static_cast<std::size_t>(2 * m + 1));
  const std::size_t n = traj.grid.size();
  for (std::size_t i = 0; i < out.nt; ++i) {
    const double t = out.time(i);
    const double e = eta_cutoff(t, delta);
    if (e == 0.0) continue;
    const auto idx = static_cast<std::ptrdiff_t>(i) - m;
    State s = idx < 0 ? propagate_linear(snaps[0].state, t, disp)
              : static_cast<std::size_t>(idx) <= last
                  ? snaps[static_cast<std::size_t>(idx)].state
                  : propagate_linear(snaps[last].state, t - snaps[last].t(), disp);
    Complex* r = out.row(i);
    for (std::size_t j = 0; j < n; ++j) r[j] = e * s.u.coeffs[j];
  }
  return out;
}

double xst_norm(const SpaceTimeField& w, double s, double theta, double beta,
                const XstOptions& opts) {
  require(std::isfinite(s) && std::isfinite(theta), ErrorCode::kInvalidArgument,
          "xst_norm: s and theta must be finite");
  require(opts.pad >= 1, ErrorCode::kInvalidArgument, "xst_norm: pad must be >= 1");
  const std::size_t n = w.grid.size();
  const std::size_t P = w.nt * opts.pad;
  std::vector<Complex> buf(P), spec(P);
  std::vector<double> tau(P);
  for (std::size_t m = 0; m < P; ++m) {
    const auto wm = m < P / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(P);
    tau[m] = 2.0 * Grid::kPi * wm / (static_cast<double>(P) * w.dt);
  }
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = w.grid.xi(j);
    std::fill(buf.begin(), buf.end(), Complex{});
    bool any = false;
    for (std::size_t i = 0; i < w.nt; ++i) {
      buf[i] = w.row(i)[j];
      any = any || buf[i] != Complex{};
    }
    if (!any) continue;
    detail::fft_forward(buf, spec);
    const double a = std::abs(xi);
    const double centre = opts.weight == ModulationWeight::kOmega
                              ? omega(xi, beta)
                              : a * a * a - 0.5 * beta * a;
    double sx = std::pow(bracket(xi), 2.0 * s);
    if (opts.derivative != 0.0) sx *= std::pow(a, 2.0 * opts.derivative);
    double col = 0.0;
    for (std::size_t m = 0; m < P; ++m) {
      const double wt = theta == 0.0 ? 1.0 : std::pow(bracket(std::abs(tau[m]) - centre), 2.0 * theta);
      col += wt * std::norm(spec[m]);
    }
    total += sx * col;
  }
  return std::sqrt(w.grid.length() * w.dt / static_cast<double>(P) * total);
}

EnsembleConfig EnsembleConfig::doubled() const {
  EnsembleConfig c = *this;
  c.n *= 2;
  c.nt *= 2;
  return c;
}

Ensemble random_bourgain_ensemble(const EnsembleConfig& cfg) {
  require(cfg.count >= 1, ErrorCode::kInvalidArgument, "ensemble: count must be >= 1");
  require(cfg.delta > 0.0, ErrorCode::kInvalidArgument, "ensemble: delta must be positive");
  require(cfg.nt >= 8 && cfg.nt % 4 == 0, ErrorCode::kInvalidArgument,
          "ensemble: nt must be a multiple of 4 and at least 8");
  const Grid grid(cfg.length, cfg.n);
  const double dk = grid.spacing();
  const auto modes = static_cast<std::size_t>(std::floor(cfg.xi_cap / dk + 1e-9));
  require(modes >= 1, ErrorCode::kInvalidArgument, "ensemble: xi_cap below the first mode");
  require(static_cast<double>(modes) * dk < grid.max_abs_freq(), ErrorCode::kUndersampled,
          "ensemble: xi_cap not resolved by the grid");
  const double sd = cfg.modulation_sd > 0.0 ? cfg.modulation_sd : 1.0 / cfg.delta;
  const double dt = 4.0 * cfg.delta / static_cast<double>(cfg.nt);
  const double t0 = -2.0 * cfg.delta;

  std::vector<double> eta(cfg.nt);
  for (std::size_t i = 0; i < cfg.nt; ++i) eta[i] = eta_cutoff(t0 + static_cast<double>(i) * dt, cfg.delta);

  Ensemble out;
  out.modulation_sd = sd;
  out.fields.reserve(cfg.count);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> order(modes);
  for (std::size_t c = 0; c < cfg.count; ++c) {
    SpaceTimeField f(grid, cfg.delta, t0, dt, cfg.nt);
    const std::size_t active = std::uniform_int_distribution<std::size_t>(1, modes)(rng);
    std::iota(order.begin(), order.end(), std::size_t{1});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t a = 0; a < active; ++a) {
      const auto j = static_cast<std::ptrdiff_t>(order[a]);
      const double xi = dk * static_cast<double>(j);
      const Complex amp(normal(rng), normal(rng));
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      const double mu = sd * normal(rng);
      out.offsets.push_back(mu);
      const double tau = sign * (omega(xi, cfg.beta) + mu);
      const std::size_t sp = grid.slot(j), sm = grid.slot(-j);
      for (std::size_t i = 0; i < cfg.nt; ++i) {
        if (eta[i] == 0.0) continue;
        const double t = f.time(i);
        const Complex c = 0.5 * eta[i] * amp * std::polar(1.0, -tau * t);
        f.row(i)[sp] += c;
        f.row(i)[sm] += std::conj(c);
      }
    }
    const double norm = xst_norm(f, cfg.s, cfg.theta, cfg.beta);
    require(norm > 0.0 && std::isfinite(norm), ErrorCode::kInternal, "ensemble: degenerate member");
    for (auto& v : f.coeffs) v /= norm;
    out.fields.push_back(std::move(f));
  }
  return out;
}

double ks_statistic_normal(std::vector<double> samples, double sd) {
  require(!samples.empty() && sd > 0.0, ErrorCode::kInvalidArgument,
          "ks_statistic_normal: need samples and sd > 0");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = 0.5 * std::erfc(-samples[i] / (sd * std::sqrt(2.0)));
    d = std::max({d, static_cast<double>(i + 1) / n - F, F - static_cast<double>(i) / n});
  }
  return d;
}

const char* to_string(EstimateId id) {
  switch (id) {
    case EstimateId::kSobX: return "Sob-X";
    case EstimateId::kStrichartz: return "w-Str";
    case EstimateId::kKato: return "w-K";
    case EstimateId::kMaximal: return "w-mf";
    case EstimateId::kLinfty: return "w-infty";
    case EstimateId::kProduct: return "prod-xst";
  }
  return "unknown";
}

EstimateId parse_estimate_id(const std::string& name) {
  for (auto id : {EstimateId::kSobX, EstimateId::kStrichartz, EstimateId::kKato,
                  EstimateId::kMaximal, EstimateId::kLinfty, EstimateId::kProduct})
    if (name == to_string(id)) return id;
  fail(ErrorCode::kInvalidArgument, "unknown estimate id '" + name + "'");
}

namespace {

double lq_norm(const std::vector<double>& xs, double q, double dx) {
  if (q >= kInf) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  for (double x : xs) acc += std::pow(std::abs(x), q);
  return std::pow(dx * acc, 1.0 / q);
}

double linear_lhs(EstimateId id, const SpaceTimeField& w, const EstimateConfig& cfg) {
  const auto [a, b] = w.window();
  const std::size_t n = w.grid.size();
  const double dx = w.grid.length() / static_cast<double>(n);
  switch (id) {
    case EstimateId::kSobX: {
      double m = 0.0;
      for (std::size_t i = a; i <= b; ++i)
        m = std::max(m, sobolev_norm(SpectralField(w.grid, {w.row(i), w.row(i) + n}), cfg.ensemble.s));
      return m;
    }
    case EstimateId::kStrichartz: {
      double acc = 0.0;
      for (std::size_t i = a; i <= b; ++i) {
        const double v = lq_norm(w.physical_row(i), cfg.q, dx);
        acc = cfg.p >= kInf ? std::max(acc, v) : acc + trapezoid_weight(i, a, b, w.dt) * std::pow(v, cfg.p);
      }
      return cfg.p >= kInf ? acc : std::pow(acc, 1.0 / cfg.p);
    }
    case EstimateId::kKato: {
      std::vector<double> acc(n, 0.0);
      for (std::size_t i = a; i <= b; ++i) {
        std::vector<Complex> c(w.row(i), w.row(i) + n);
        for (std::size_t j = 0; j < n; ++j) c[j] *= Complex(0.0, w.grid.xi(j));
        const auto x = from_spectral(SpectralField(w.grid, std::move(c))).samples;
        const double wt = trapezoid_weight(i, a, b, w.dt);
        for (std::size_t j = 0; j < n; ++j) acc[j] += wt * x[j] * x[j];
      }
      return std::sqrt(*std::max_element(acc.begin(), acc.end()));
    }
    case EstimateId::kMaximal: {
      std::vector<double> sup(n, 0.0);
      for (std::size_t i = a; i <= b; ++i) {
        const auto x = w.physical_row(i);
        for (std::size_t j = 0; j < n; ++j) sup[j] = std::max(sup[j], std::abs(x[j]));
      }
      return lq_norm(sup, 4.0, dx);
    }
    case EstimateId::kLinfty: {
      double m = 0.0;
      for (std::size_t i = a; i <= b; ++i) m = std::max(m, lq_norm(w.physical_row(i), kInf, dx));
      return m;
    }
    case EstimateId::kProduct: break;
  }
  fail(ErrorCode::kInternal, "linear_lhs: product estimate handled elsewhere");
}

double linear_rhs(EstimateId id, const SpaceTimeField& w, const EstimateConfig& cfg) {
  const double beta = cfg.ensemble.beta, theta = cfg.ensemble.theta;
  switch (id) {
    case EstimateId::kSobX: return xst_norm(w, cfg.ensemble.s, theta, beta);
    case EstimateId::kStrichartz:
    case EstimateId::kKato: return xst_norm(w, 0.0, theta, beta);
    case EstimateId::kMaximal: {
      XstOptions o;
      o.derivative = 0.25;
      return xst_norm(w, 0.0, theta, beta, o);
    }
    case EstimateId::kLinfty: return xst_norm(w, theta, theta, beta);  // X^{1/2+, 1/2+}
    case EstimateId::kProduct: break;
  }
  fail(ErrorCode::kInternal, "linear_rhs: product estimate handled elsewhere");
}

double product_ratio(const std::vector<SpaceTimeField>& ws, std::size_t first, int factors,
                     const EstimateConfig& cfg) {
  const SpaceTimeField& w0 = ws[first];
  const std::size_t n = w0.grid.size();
  SpaceTimeField prod(w0.grid, w0.delta, w0.t0, w0.dt, w0.nt);
  double rhs = 1.0;
  for (int f = 0; f < factors; ++f)
    rhs *= xst_norm(ws[first + static_cast<std::size_t>(f)], cfg.ensemble.s, cfg.ensemble.theta,
                    cfg.ensemble.beta);
  for (std::size_t i = 0; i < w0.nt; ++i) {
    std::vector<double> x(n, 1.0);
    for (int f = 0; f < factors; ++f) {
      const auto y = ws[first + static_cast<std::size_t>(f)].physical_row(i);
      for (std::size_t j = 0; j < n; ++j) x[j] *= y[j];
    }
    const auto c = to_spectral(RealField(w0.grid, std::move(x)));
    std::copy(c.coeffs.begin(), c.coeffs.end(), prod.row(i));
  }
  return xst_norm(prod, cfg.ensemble.s - 1.0, 0.0, cfg.ensemble.beta) / rhs;
}

void validate(EstimateId id, const EstimateConfig& cfg) {
  if (id == EstimateId::kStrichartz) {
    require(cfg.q >= 2.0 && cfg.p >= 1.0, ErrorCode::kInvalidArgument,
            "w-Str: need q in [2, inf] and p >= 1");
    const double lhs = (cfg.p >= kInf ? 0.0 : 3.0 / cfg.p) + (cfg.q >= kInf ? 0.0 : 1.0 / cfg.q);
    // Pairs above the scaling line follow from the admissible one by Hoelder on [0, delta].
    require(lhs >= 0.5 - 1e-12, ErrorCode::kInvalidArgument,
            "w-Str: pair (" + std::to_string(cfg.p) + ", " + std::to_string(cfg.q) +
                ") violates 3/p + 1/q >= 1/2");
  }
  if (id == EstimateId::kProduct) {
    require(cfg.k >= 2, ErrorCode::kInvalidArgument, "prod-xst: k must be >= 2");
    const double dk = 2.0 * Grid::kPi / cfg.ensemble.length;
    const double modes = std::floor(cfg.ensemble.xi_cap / dk + 1e-9);
    require((2.0 * cfg.k + 1.0) * modes < static_cast<double>(cfg.ensemble.n) / 2.0,
            ErrorCode::kUndersampled, "prod-xst: grid too coarse for an alias-free product");
  }
}

}  // namespace

double max_estimate_ratio(EstimateId id, const EstimateConfig& cfg) {
  validate(id, cfg);
  double worst = 0.0;
  if (id == EstimateId::kProduct) {
    const int factors = 2 * cfg.k + 1;
    EnsembleConfig ec = cfg.ensemble;
    ec.count = cfg.ensemble.count * static_cast<std::size_t>(factors);
    const Ensemble ens = random_bourgain_ensemble(ec);
    for (std::size_t c = 0; c < cfg.ensemble.count; ++c)
      worst = std::max(worst, product_ratio(ens.fields, c * static_cast<std::size_t>(factors), factors, cfg));
  } else {
    const Ensemble ens = random_bourgain_ensemble(cfg.ensemble);
    for (const auto& w : ens.fields) worst = std::max(worst, linear_lhs(id, w, cfg) / linear_rhs(id, w, cfg));
  }
  require(worst > 0.0 && std::isfinite(worst), ErrorCode::kInternal,
          "max_estimate_ratio: ratio not positive and finite");
  return worst;
}

EstimateReport verify_estimate(EstimateId id, const EstimateConfig& cfg) {
  EstimateReport r;
  r.id = to_string(id);
  r.ensemble_size = cfg.ensemble.count;
  r.max_ratio = max_estimate_ratio(id, cfg);
  EstimateConfig fine = cfg;
  fine.ensemble = cfg.ensemble.doubled();
  r.max_ratio_doubled = max_estimate_ratio(id, fine);
  r.growth = r.max_ratio_doubled / r.max_ratio - 1.0;
  r.pass = r.growth < cfg.growth_tolerance;
  return r;
}

}  // namespace sixbq
