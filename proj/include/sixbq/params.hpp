#pragma once

namespace sixbq {

enum class Nonlinearity : int { kFocusing = -1, kDefocusing = 1 };

/// Equation and I-method parameters. f(u) = sign * u^(2k+1).
struct ModelParams {
  double beta = 1.0;
  int k = 2;
  Nonlinearity sign = Nonlinearity::kDefocusing;
  double s = 2.0;
  double N = 1.0;

  int sign_value() const noexcept { return static_cast<int>(sign); }
  /// Throws kInvalidArgument / kInvalidBeta on k < 2, |beta| >= 2, N < 1, s > 2.
  void validate() const;
};

}  // namespace sixbq
