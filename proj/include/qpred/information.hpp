#pragma once

#include "qpred/states.hpp"

namespace qpred {

// Entropic functionals in bits (log base 2).

struct InfoReport {
  double h_joint = 0.0;
  double h_marginal_s = 0.0;
  double h_marginal_x = 0.0;
  double h_cond_s_given_x = 0.0;
  double mutual_info = 0.0;
};

// H(rho) = -tr[rho log2 rho]; eigenvalues clamped per the positivity policy.
double von_neumann_entropy(const DensityMatrix& rho);

// H(S|X) = H(rho_SX) - H(rho_X); can be negative for entangled states.
double conditional_entropy(const DensityMatrix& rho);

// I(S:X) = H(rho_S) - H(S|X).
double mutual_information(const DensityMatrix& rho);

InfoReport info_report(const DensityMatrix& rho);

}  // namespace qpred
