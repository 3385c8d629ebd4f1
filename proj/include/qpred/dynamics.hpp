#pragma once

#include "qpred/matrix.hpp"
#include "qpred/states.hpp"

namespace qpred {

// Generator of the cascaded two-qubit master equation, acting on
// column-stacked density matrices (16x16 superoperator).
class Liouvillian {
 public:
  const ComplexMatrix& matrix() const { return mat_; }
  double kappa() const { return kappa_; }

 private:
  friend Liouvillian build_liouvillian(double kappa);
  Liouvillian(ComplexMatrix mat, double kappa) : mat_(std::move(mat)), kappa_(kappa) {}
  ComplexMatrix mat_;
  double kappa_;
};

// rho' = -i[H, rho] + D[C] rho with H = i kappa sigma_x^X (sigma_-^S - sigma_+^S)
// and C = sqrt(2 kappa) (sigma_x^X + sigma_-^S), in canonical S (x) X ordering.
// Construction verifies trace preservation and the spectrum (no positive real
// parts, at least one zero mode).
Liouvillian build_liouvillian(double kappa);

// rho(t + d) = unvec(exp(L d) vec(rho)); the output is validated.
DensityMatrix propagate(const DensityMatrix& rho, const Liouvillian& liouvillian,
                        double duration);

// Unique steady state within the X-state sector (the generator's full null
// space is two-dimensional: I (x) sigma_x^X is a conserved charge, so the
// physical steady state is selected by the parity-even sector, which the
// generator preserves). Throws AmbiguityError if that sector's zero mode is
// degenerate.
DensityMatrix steady_state(const Liouvillian& liouvillian);

}  // namespace qpred
