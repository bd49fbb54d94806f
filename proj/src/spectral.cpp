#include "sixbq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "sixbq/error.hpp"

namespace sixbq {

Grid::Grid(double length, std::size_t n) {
  require(std::isfinite(length) && length > 0.0, ErrorCode::kInvalidArgument,
          "grid: length must be positive, got " + std::to_string(length));
  require(n >= 8, ErrorCode::kInvalidArgument,
          "grid: need at least 8 points, got " + std::to_string(n));
  require(n % 2 == 0, ErrorCode::kInvalidArgument,
          "grid: point count must be even, got " + std::to_string(n));
  Impl impl{length, n, std::vector<double>(n), std::vector<double>(n)};
  const double dk = 2.0 * kPi / length;
  for (std::size_t i = 0; i < n; ++i) {
    impl.xs[i] = static_cast<double>(i) * length / static_cast<double>(n);
    const auto j = i < n / 2 ? static_cast<std::ptrdiff_t>(i)
                             : static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(n);
    impl.freqs[i] = dk * static_cast<double>(j);
  }
  impl_ = std::make_shared<const Impl>(std::move(impl));
}

std::ptrdiff_t Grid::wavenumber(std::size_t slot) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(impl_->n);
  const auto i = static_cast<std::ptrdiff_t>(slot);
  return i < n / 2 ? i : i - n;
}

std::size_t Grid::slot(std::ptrdiff_t wavenumber) const {
  const auto n = static_cast<std::ptrdiff_t>(impl_->n);
  if (wavenumber < -n / 2 || wavenumber >= n / 2)
    fail(ErrorCode::kInvalidArgument,
         "grid: wavenumber " + std::to_string(wavenumber) + " outside grid");
  return static_cast<std::size_t>(wavenumber >= 0 ? wavenumber : wavenumber + n);
}

double Grid::max_abs_freq() const noexcept {
  return kPi * static_cast<double>(impl_->n) / impl_->length;
}

Grid make_grid(double length, std::size_t n) { return Grid(length, n); }

RealField::RealField(Grid g, std::vector<double> s)
    : grid(std::move(g)), samples(std::move(s)) {
  require(samples.size() == grid.size(), ErrorCode::kGridMismatch,
          "real field: sample count does not match grid");
}

RealField RealField::zeros(const Grid& g) {
  return RealField(g, std::vector<double>(g.size(), 0.0));
}

RealField RealField::sample(const Grid& g, const std::function<double(double)>& f) {
  std::vector<double> s(g.size());
  auto xs = g.points();
  std::transform(xs.begin(), xs.end(), s.begin(), f);
  return RealField(g, std::move(s));
}

SpectralField::SpectralField(Grid g, std::vector<Complex> c)
    : grid(std::move(g)), coeffs(std::move(c)) {
  require(coeffs.size() == grid.size(), ErrorCode::kGridMismatch,
          "spectral field: coefficient count does not match grid");
}

SpectralField SpectralField::zeros(const Grid& g) {
  return SpectralField(g, std::vector<Complex>(g.size()));
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::l2_norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return grid.length() * s;
}

SpectralField to_spectral(const RealField& f) {
  const std::size_t n = f.grid.size();
  std::vector<Complex> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(f.samples[i]))
      fail(ErrorCode::kNonFinite, "to_spectral: non-finite sample at index " + std::to_string(i));
    in[i] = f.samples[i];
  }
  detail::fft_forward(in, out);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& c : out) c *= scale;
  return SpectralField(f.grid, std::move(out));
}

RealField from_spectral(const SpectralField& f) {
  const std::size_t n = f.grid.size();
  std::vector<Complex> out(n);
  detail::fft_backward(f.coeffs, out);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(out[i].real()), ErrorCode::kNonFinite,
            "from_spectral: non-finite sample");
    s[i] = out[i].real();
  }
  return RealField(f.grid, std::move(s));
}

SpectralField apply_symbol(const SpectralField& f,
                           const std::function<Complex(double)>& symbol) {
  std::vector<Complex> c(f.coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Complex s = symbol(f.grid.xi(i));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      fail(ErrorCode::kNonFinite,
           "apply_symbol: symbol not finite at xi = " + std::to_string(f.grid.xi(i)));
    c[i] = s * f.coeffs[i];
  }
  return SpectralField(f.grid, std::move(c));
}

std::size_t dealias_size(std::size_t n, int degree) {
  require(degree >= 1, ErrorCode::kInvalidArgument, "dealias_size: degree < 1");
  std::size_t p = (static_cast<std::size_t>(degree) + 1) * n / 2;
  if (p % 2 != 0) ++p;
  return std::max(p, n);
}

std::vector<double> padded_samples(const SpectralField& f, std::size_t padded_n) {
  const std::size_t n = f.grid.size();
  require(padded_n >= n, ErrorCode::kInvalidArgument,
          "padded_samples: padded size below grid size");
  std::vector<Complex> pad(padded_n);
  const auto p = static_cast<std::ptrdiff_t>(padded_n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t j = f.grid.wavenumber(i);
    if (i == f.grid.nyquist_slot() && padded_n > n) {
      pad[static_cast<std::size_t>(-j)] += 0.5 * f.coeffs[i];
      pad[static_cast<std::size_t>(j + p)] += 0.5 * f.coeffs[i];
      continue;
    }
    pad[static_cast<std::size_t>(j >= 0 ? j : j + p)] = f.coeffs[i];
  }
  std::vector<Complex> phys(padded_n);
  detail::fft_backward(pad, phys);
  std::vector<double> out(padded_n);
  for (std::size_t i = 0; i < padded_n; ++i) out[i] = phys[i].real();
  return out;
}

SpectralField nonlinearity(const SpectralField& f, int k, int sign) {
  require(k >= 2, ErrorCode::kInvalidArgument,
          "nonlinearity: power index k must be >= 2, got " + std::to_string(k));
  require(sign == 1 || sign == -1, ErrorCode::kInvalidArgument,
          "nonlinearity: sign must be +1 or -1");
  const std::size_t n = f.grid.size();
  const std::size_t p = dealias_size(n, 2 * k + 1);
  std::vector<double> u = padded_samples(f, p);
  std::vector<Complex> phys(p), spec(p);
  for (std::size_t i = 0; i < p; ++i) {
    const double u2 = u[i] * u[i];
    double v = u[i];
    for (int m = 0; m < k; ++m) v *= u2;
    if (!std::isfinite(v))
      fail(ErrorCode::kDivergence, "nonlinearity: sample overflow (solution diverged)");
    phys[i] = static_cast<double>(sign) * v;
  }
  detail::fft_forward(phys, spec);
  const double scale = 1.0 / static_cast<double>(p);
  std::vector<Complex> c(n);
  const auto pp = static_cast<std::ptrdiff_t>(p);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == f.grid.nyquist_slot()) continue;
    const std::ptrdiff_t j = f.grid.wavenumber(i);
    c[i] = scale * spec[static_cast<std::size_t>(j >= 0 ? j : j + pp)];
  }
  return SpectralField(f.grid, std::move(c));
}

double hermitian_defect(const SpectralField& f) noexcept {
  const double scale = f.max_abs();
  if (scale == 0.0) return 0.0;
  const std::size_t n = f.grid.size();
  double worst = std::abs(f.coeffs[0].imag());
  worst = std::max(worst, std::abs(f.coeffs[n / 2].imag()));
  for (std::size_t i = 1; i < n / 2; ++i)
    worst = std::max(worst, std::abs(f.coeffs[n - i] - std::conj(f.coeffs[i])));
  return worst / scale;
}

SpectralField without_nyquist(SpectralField f) {
  f.coeffs[f.grid.nyquist_slot()] = 0.0;
  return f;
}

}  // namespace sixbq
