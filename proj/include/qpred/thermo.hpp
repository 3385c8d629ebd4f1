#pragma once

#include "qpred/discord.hpp"
#include "qpred/states.hpp"

namespace qpred {

// Work bookkeeping. Energies are in units of 1/beta; all states are
// energetically equivalent (fully degenerate Hamiltonians).

struct WorkLedger {
  double beta = 1.0;
  double w_ext_before = 0.0;
  double w_ext_after = 0.0;
  double w_lost = 0.0;
  double w_lost_classical = 0.0;
  double w_lost_quantum = 0.0;
  Subsystem side = Subsystem::X;  // which subsystem was measured
};

// W_ext[S|X] = beta^-1 [N - H(S|X)] ln 2 for an N-qubit S.
double extractable_work(const DensityMatrix& rho, double beta, int n_qubits);

// beta W_lost = [H(S|X') - H(S|X)] ln 2; cross-checked against the
// mutual-information form [I(S:X) - I(S:X')] ln 2, which must agree.
double lost_work(const DensityMatrix& before, const DensityMatrix& after, double beta);

// Classical/quantum split: beta W^C = [I^C - I^C'] ln 2 and
// beta W^Q = [delta - delta'] ln 2, measured on `side`.
WorkLedger lost_work_decomposition(const DensityMatrix& before, const DensityMatrix& after,
                                   double beta, Subsystem side, const OptimizerConfig& cfg = {});

struct MinDecoherenceResult {
  double lost_work = 0.0;  // energy
  MeasurementBasis basis;
};

// min over decoherence bases on X of lost_work(rho, decohere(rho, b));
// equals beta^-1 delta(S|X) ln 2 through an independent code path.
MinDecoherenceResult min_decoherence_lost_work(const DensityMatrix& rho, double beta,
                                               const OptimizerConfig& cfg = {});

}  // namespace qpred
