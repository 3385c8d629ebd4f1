#pragma once

namespace qpred {

// Every numeric tolerance used by the library, in one place.
struct Tolerances {
  double hermiticity = 1e-10;       // max-entry asymmetry accepted for states
  double unit_trace = 1e-10;
  double psd_floor = -1e-9;         // eigenvalues below this reject the state
  double entropy_eig_clamp = 1e-12; // eigenvalue floor before log2
  double jacobi_offdiag = 1e-13;    // off-diagonal Frobenius norm at convergence
  double expm_tail = 1e-20;         // Taylor tail cutoff (relative)
  double kraus_completeness = 1e-10;
  double branch_probability = 1e-12; // measurement branches below this are null
  double pole_sin_theta = 1e-9;      // phi is meaningless below this
  double simplex_spread = 1e-11;     // bits; optimizer value convergence
  double simplex_diameter = 1e-9;    // radians; optimizer position convergence
  double optimizer_tie = 1e-11;      // bits; equal-minimum tie window
  double lost_work_crosscheck = 1e-8;
  double steady_state_residual = 1e-9;
  double liouvillian_zero = 1e-9;    // |eigenvalue| below this counts as a zero mode
};

inline constexpr Tolerances tol{};

}  // namespace qpred
