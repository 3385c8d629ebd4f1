#pragma once

#include <string>
#include <vector>

#include "qpred/discord.hpp"
#include "qpred/states.hpp"

namespace qpred {

// Discrete-time predictive-process experiment: alternate the instantaneous
// update channel on X with relaxation under the cascaded master equation,
// recording information and work quantities at every step.
struct ProtocolConfig {
  double p = 0.7;                  // update-channel damping probability
  std::vector<double> p_schedule;  // optional per-step override of p
  double kappa = 1.0;
  double step_duration = 1.0;      // kappa * dt = 1 by default
  int n_steps = 10;
  double beta = 1.0;
  OptimizerConfig optimizer{};
  Ordering ordering = Ordering::SX;
};

struct ProtocolRecord {
  int step = 0;
  double kt = 0.0;        // kappa * t_i
  double i_sx = 0.0;      // memory I(S:X; t_i)
  double i_sxp = 0.0;     // predictive power I(S:X'; t_i)
  double ic_sx = 0.0;     // I^C(S|X), pre-update
  double ic_sxp = 0.0;    // post-update
  double delta_sx = 0.0;  // delta(S|X), pre-update
  double delta_sxp = 0.0;
  double delta_xs = 0.0;  // delta(X|S), pre-update
  double delta_xsp = 0.0;
  double w_lost = 0.0;    // beta W / ln 2, dimensionless
  double w_c = 0.0;
  double w_q = 0.0;
  MeasurementBasis basis_pre;   // argmin of the X-side discord, pre-update
  MeasurementBasis basis_post;  // and post-update
};

std::vector<ProtocolRecord> run_protocol(const ProtocolConfig& cfg);

// CSV with the fixed header
//   step,kt,I_SX,I_SXp,IC_SX,IC_SXp,delta_SX,delta_SXp,delta_XS,delta_XSp,
//   W_lost,W_C,W_Q,theta_min_pre,phi_min_pre,theta_min_post,phi_min_post
// and 12-significant-digit values; deterministic for a fixed config.
std::string emit_csv(const std::vector<ProtocolRecord>& records);

extern const char* const kProtocolCsvHeader;

}  // namespace qpred
