#pragma once

// Thin wrapper over FFTW complex transforms. Plans are created once per size
// under a mutex; execution goes through the new-array interface, which FFTW
// documents as thread-safe.

#include <complex>
#include <span>

namespace sixbq::detail {

/// out_m = sum_j in_j exp(-2 pi i j m / n)   (unnormalized)
void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

/// out_j = sum_m in_m exp(+2 pi i j m / n)   (unnormalized)
void fft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out);

}  // namespace sixbq::detail
