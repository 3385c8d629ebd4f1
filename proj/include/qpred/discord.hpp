#pragma once

#include <functional>

#include "qpred/states.hpp"

namespace qpred {

struct OptimizerConfig {
  double grid_theta_step_deg = 2.0;  // coarse scan over theta in [0, pi]
  double grid_phi_step_deg = 4.0;    // and phi in [0, 2*pi)
  double simplex_spread = 1e-11;     // bits; value convergence
  double simplex_diameter = 1e-9;    // radians; position convergence
  int max_iterations = 500;
};

struct OptimizerTrace {
  int grid_evaluations = 0;
  int simplex_iterations = 0;
  double final_spread = 0.0;
};

struct MinimizeResult {
  double value = 0.0;
  MeasurementBasis basis;
  OptimizerTrace trace;
};

// Deterministic minimizer over rank-one projective bases: coarse grid scan
// (first-seen wins on exact ties), Nelder-Mead refinement from the best grid
// point, then reduction to a canonical measurement representative with
// near-ties (within the tie window) resolved toward the smallest (theta, phi).
MinimizeResult minimize_over_bases(const std::function<double(double, double)>& objective,
                                   const OptimizerConfig& cfg = {});

// Canonical representative of the measurement {P, I-P}: axis sign fixed by
// the dominant component (z, then y, then x at the equator), theta <= pi/2
// up to axis noise, phi in [0, 2*pi) with phi = 0 at the poles.
MeasurementBasis canonical_basis(double theta, double phi);

struct SemiclassicalResult {
  double value = 0.0;  // bits
  MeasurementBasis basis;
  OptimizerTrace trace;
};

// H(S|X^C) = min over bases of sum_k p_k H(conditional S marginal), the
// measurement on X (roles swap for measured = S). Zero-probability branches
// contribute nothing.
SemiclassicalResult semiclassical_conditional_entropy(const DensityMatrix& rho,
                                                      Subsystem measured,
                                                      const OptimizerConfig& cfg = {});

struct DiscordResult {
  double semiclassical_cond_entropy = 0.0;  // bits
  double discord = 0.0;                     // bits
  double classical_correlations = 0.0;      // bits
  MeasurementBasis argmin_basis;
  OptimizerTrace trace;
};

// measured = X gives delta(S|X) and I^C(S|X); measured = S the reverse pair.
DiscordResult discord(const DensityMatrix& rho, Subsystem measured,
                      const OptimizerConfig& cfg = {});

}  // namespace qpred
