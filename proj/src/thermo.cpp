#include "qpred/thermo.hpp"

#include <cmath>
#include <sstream>

#include "qpred/channels.hpp"
#include "qpred/errors.hpp"
#include "qpred/information.hpp"
#include "qpred/tolerances.hpp"

namespace qpred {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void require_beta(double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
}

}  // namespace

double extractable_work(const DensityMatrix& rho, double beta, int n_qubits) {
  require_beta(beta);
  const double min_n = std::log2(static_cast<double>(rho.dim_of(Subsystem::S)));
  if (n_qubits + 1e-12 < min_n) throw DomainError("n_qubits smaller than log2 dim(S)");
  return (n_qubits - conditional_entropy(rho)) * kLn2 / beta;
}

double lost_work(const DensityMatrix& before, const DensityMatrix& after, double beta) {
  require_beta(beta);
  if (before.dims() != after.dims()) throw DimensionError("lost_work: dims mismatch");
  const double cond_form = conditional_entropy(after) - conditional_entropy(before);
  const double mi_form = mutual_information(before) - mutual_information(after);
  if (std::abs(cond_form - mi_form) > tol.lost_work_crosscheck) {
    // the two forms only coincide for a local map on X (H(rho_S) intact)
    std::ostringstream msg;
    msg << "lost_work cross-check failed: conditional form " << cond_form
        << " bits vs mutual-information form " << mi_form
        << " bits; after-state does not arise from a local map on X";
    throw ConsistencyError(msg.str());
  }
  return cond_form * kLn2 / beta;
}

WorkLedger lost_work_decomposition(const DensityMatrix& before, const DensityMatrix& after,
                                   double beta, Subsystem side, const OptimizerConfig& cfg) {
  WorkLedger ledger;
  ledger.beta = beta;
  ledger.side = side;
  ledger.w_lost = lost_work(before, after, beta);
  const int n_qubits =
      static_cast<int>(std::lround(std::log2(static_cast<double>(before.dim_of(Subsystem::S)))));
  ledger.w_ext_before = extractable_work(before, beta, n_qubits);
  ledger.w_ext_after = extractable_work(after, beta, n_qubits);
  const DiscordResult db = discord(before, side, cfg);
  const DiscordResult da = discord(after, side, cfg);
  ledger.w_lost_classical =
      (db.classical_correlations - da.classical_correlations) * kLn2 / beta;
  ledger.w_lost_quantum = (db.discord - da.discord) * kLn2 / beta;
  return ledger;
}

MinDecoherenceResult min_decoherence_lost_work(const DensityMatrix& rho, double beta,
                                               const OptimizerConfig& cfg) {
  require_beta(beta);
  if (rho.dim_of(Subsystem::X) != 2) throw DimensionError("X factor must be a qubit");
  // joint-entropy route: independent of the branch-entropy route in discord
  const double h_cond = conditional_entropy(rho);
  const auto res = minimize_over_bases(
      [&](double th, double ph) {
        const DensityMatrix decohered = decohere(rho, {th, ph}, Subsystem::X);
        return conditional_entropy(decohered) - h_cond;
      },
      cfg);
  return {res.value * kLn2 / beta, res.basis};
}

}  // namespace qpred
