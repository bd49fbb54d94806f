#include "sixbq/fit.hpp"

#include <cmath>
#include <string>

#include "sixbq/error.hpp"

namespace sixbq {

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  require(points.size() >= 3, ErrorCode::kFitFailure,
          "fit_power_law: need at least 3 points, got " + std::to_string(points.size()));
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    require(x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y),
            ErrorCode::kFitFailure, "fit_power_law: coordinates must be positive and finite");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  require(sxx > 1e-300, ErrorCode::kFitFailure, "fit_power_law: degenerate x range");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.points = points.size();
  double ss_res = 0.0;
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - (fit.intercept + fit.exponent * std::log(x));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace sixbq
