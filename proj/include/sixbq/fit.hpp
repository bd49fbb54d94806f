#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace sixbq {

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  // log of the prefactor
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Least squares of log y on log x. Needs >= 3 points with x, y > 0 and at
/// least two distinct x values.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

}  // namespace sixbq
