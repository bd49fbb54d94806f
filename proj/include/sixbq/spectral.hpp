#pragma once

// Periodic grid, Fourier-series fields and the dealiased power nonlinearity.
//
// Coefficient convention, used everywhere in the library:
//
//     v_hat_j = (1/L) * integral_0^L v(x) exp(-i xi_j x) dx,   xi_j = 2 pi j / L
//
// so that  ||v||_{L^2}^2 = L * sum_j |v_hat_j|^2  and discrete Sobolev norms
// converge to their whole-line counterparts as L grows. Coefficient arrays are
// stored in FFT order: slot i holds wavenumber i for i < n/2 and i - n
// otherwise, so slot n/2 is the single Nyquist mode -n/2.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace sixbq {

using Complex = std::complex<double>;

class Grid {
 public:
  /// Throws kInvalidArgument unless n is even, n >= 8 and L > 0.
  Grid(double length, std::size_t n);

  double length() const noexcept { return impl_->length; }
  std::size_t size() const noexcept { return impl_->n; }

  /// Collocation points x_j = j L / n.
  std::span<const double> points() const noexcept { return impl_->xs; }
  /// Angular frequencies in FFT order.
  std::span<const double> freqs() const noexcept { return impl_->freqs; }

  double xi(std::size_t slot) const noexcept { return impl_->freqs[slot]; }
  /// Integer wavenumber held by a slot, in [-n/2, n/2).
  std::ptrdiff_t wavenumber(std::size_t slot) const noexcept;
  /// Slot of an integer wavenumber in [-n/2, n/2).
  std::size_t slot(std::ptrdiff_t wavenumber) const;
  std::size_t nyquist_slot() const noexcept { return impl_->n / 2; }
  /// 2 pi / L.
  double spacing() const noexcept { return 2.0 * kPi / impl_->length; }
  /// Largest |xi| on the grid (the Nyquist magnitude n pi / L).
  double max_abs_freq() const noexcept;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.impl_ == b.impl_ ||
           (a.impl_->n == b.impl_->n && a.impl_->length == b.impl_->length);
  }

  static constexpr double kPi = 3.14159265358979323846;

 private:
  struct Impl {
    double length;
    std::size_t n;
    std::vector<double> xs;
    std::vector<double> freqs;
  };
  std::shared_ptr<const Impl> impl_;
};

Grid make_grid(double length, std::size_t n);

struct RealField {
  Grid grid;
  std::vector<double> samples;

  RealField(Grid g, std::vector<double> s);
  static RealField zeros(const Grid& g);
  /// Samples a callable at the collocation points.
  static RealField sample(const Grid& g, const std::function<double(double)>& f);
};

struct SpectralField {
  Grid grid;
  std::vector<Complex> coeffs;

  SpectralField(Grid g, std::vector<Complex> c);
  static SpectralField zeros(const Grid& g);

  double max_abs() const noexcept;
  /// L * sum |c_j|^2, the squared L^2 norm by Parseval.
  double l2_norm_sq() const noexcept;
};

SpectralField to_spectral(const RealField& f);
RealField from_spectral(const SpectralField& f);

/// Multiplies every coefficient by symbol(xi_j). Throws kNonFinite if the symbol
/// is not finite on some grid frequency.
SpectralField apply_symbol(const SpectralField& f,
                           const std::function<Complex(double)>& symbol);

/// Pointwise sign * u^(2k+1), alias-free: the input is zero-padded to
/// (k+1)*n modes before exponentiation and truncated back afterwards. The
/// Nyquist slot of the result is zero.
SpectralField nonlinearity(const SpectralField& f, int k, int sign);

/// Physical samples of the field on a zero-padded grid of `padded_n` points.
/// A nonzero Nyquist coefficient is split evenly between +-n/2 so the padded
/// field stays real.
std::vector<double> padded_samples(const SpectralField& f, std::size_t padded_n);

/// Smallest padded size that makes a degree-`degree` product alias-free on the
/// kept modes (for degree 2k+1 or 2k+2 this is (k+1)*n).
std::size_t dealias_size(std::size_t n, int degree);

/// max |c_{-j} - conj(c_j)| relative to max|c|, over paired slots.
double hermitian_defect(const SpectralField& f) noexcept;

/// Sets the Nyquist coefficient to zero.
SpectralField without_nyquist(SpectralField f);

}  // namespace sixbq
