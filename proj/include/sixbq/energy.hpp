#pragma once

#include "sixbq/linear.hpp"
#include "sixbq/params.hpp"
#include "sixbq/spectral.hpp"

namespace sixbq {

/// The five summands of the conserved energy, signs included.
struct EnergyBreakdown {
  double uxx_term = 0.0;        //  1/2 ||u_xx||^2
  double ux_term = 0.0;         // -beta/2 ||u_x||^2
  double u_term = 0.0;          //  1/2 ||u||^2
  double kinetic_term = 0.0;    //  1/2 ||v||^2,  v = (-Delta)^{-1/2} u_t
  double potential_term = 0.0;  //  sign/(2k+2) ||u||_{L^{2k+2}}^{2k+2}
  double total = 0.0;

  double quadratic() const noexcept { return uxx_term + ux_term + u_term + kinetic_term; }
};

/// (sum <xi>^{2s} |c|^2 L)^{1/2}
double sobolev_norm(const SpectralField& f, double s);

/// ||u||_{L^p}^p for even integer p, evaluated on an alias-free padded grid.
double lp_power(const SpectralField& f, int p);

/// Largest |u| over the padded physical samples used by the potential term.
double linf_norm(const SpectralField& f, int k);

EnergyBreakdown energy(const State& state, const ModelParams& params);

/// E / (||u||_{H^2}^2 + ||v||^2 + ||u||_{L^{2k+2}}^{2k+2}); 1 for the zero state.
/// Defined for the defocusing sign only.
double energy_equivalence_ratio(const State& state, const ModelParams& params);

/// ||u||_{H^s}^2 + ||v||_{H^{s-2}}^2
double theorem_quantity(const State& state, double s);

}  // namespace sixbq
